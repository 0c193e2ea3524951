"""Sweep the catalog: pool size, 2-number, tier, class count, Weyl order per space.

    python3 scripts/catalog_sweep.py --out sweep.json [--family AI] [--skip-classes]
"""

import argparse
import json
import sys
import time

from antipodal.catalog import catalog_list, expected_two_number
from antipodal.config import load_config
from antipodal.errors import AntipodalError
from antipodal.report import build_pool, status
from antipodal.search import enumerate_maximal_classes, two_number, weyl_pool
from antipodal.space import FULL


def sweep(entries, cfg, classes=True):
    rows = []
    for e in entries:
        t0 = time.perf_counter()
        sp = e.space
        row = {"id": e.id, "cartan": e.cartan}
        try:
            pool = build_pool(e, cfg)
            full = sp.mode == FULL and not sp.group_form
            r = two_number(sp, pool, cfg.restarts, cfg.seed, certify=full)
            exp = expected_two_number(e)
            row.update(pool=len(pool), found=r.value, expected=exp,
                       tier=r.certificate.verdict if r.certificate else "PoolMaximal",
                       status=status(exp, r.value))
            if classes:
                row["classes"] = len(enumerate_maximal_classes(sp, pool))
                row["weyl_order"] = weyl_pool(sp, r.best, pool).order
        except AntipodalError as ex:
            row["error"] = f"{type(ex).__name__}: {ex}"
        row["seconds"] = round(time.perf_counter() - t0, 2)
        print(json.dumps(row), file=sys.stderr, flush=True)
        rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--family")
    ap.add_argument("--out")
    ap.add_argument("--config")
    ap.add_argument("--skip-classes", action="store_true")
    args = ap.parse_args()
    cfg = load_config(args.config)
    entries, note = catalog_list(args.family)
    rows = sweep(entries, cfg, not args.skip_classes)
    out = {"config": cfg.to_json(), "note": note, "rows": rows}
    text = json.dumps(out, indent=2)
    if args.out:
        open(args.out, "w").write(text + "\n")
    else:
        print(text)
    return 1 if any(r.get("status") == "FAIL" for r in rows) else 0


if __name__ == "__main__":
    sys.exit(main())
