"""antipodal command line.  Exit codes: 0 success/PASS, 1 verification FAIL, 2 usage error."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .catalog import FAMILY_FILTERS, catalog_list, expected_two_number, get_entry
from .config import load_config
from .errors import AntipodalError, NotMaximal, UnknownSpace
from .report import build_pool, render_json, render_md, run_report, status
from .scalars import set_conductor_limit
from .search import enumerate_maximal_classes, two_number, weyl_pool
from .serialize import (MalformedInput, decode_set, dumps, encode_set, encode_verdict, load_file,
                        set_space_id)
from .space import FULL

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--seed", type=int, help="seed for restart permutations")
    common.add_argument("--pool-cap", type=int)
    common.add_argument("--unit-order", type=int)
    common.add_argument("--rank-limit", type=int)

    p = _Parser(prog="antipodal", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("list-spaces", parents=[common])
    s.add_argument("--family", help="one of " + ", ".join(FAMILY_FILTERS))

    s = sub.add_parser("verify-set", parents=[common])
    s.add_argument("--space", required=True)
    s.add_argument("--points", required=True)
    s.add_argument("--method", choices=["pairwise", "phi"], default="pairwise")

    s = sub.add_parser("find-maximal", parents=[common])
    s.add_argument("--space", required=True)
    s.add_argument("--restarts", type=int)

    s = sub.add_parser("two-number", parents=[common])
    s.add_argument("--space", required=True)
    s.add_argument("--restarts", type=int)

    s = sub.add_parser("enumerate-classes", parents=[common])
    s.add_argument("--space", required=True)

    s = sub.add_parser("weyl", parents=[common])
    s.add_argument("--space", required=True)
    s.add_argument("--set", required=True, dest="set_file")

    s = sub.add_parser("report", parents=[common])
    s.add_argument("--space", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=["json", "md"], default="json")
    s.add_argument("--restarts", type=int)
    s.add_argument("--timings", action="store_true",
                   help="add wall-clock timings (output is then not reproducible)")
    return p


def _config(args):
    flags = {"seed": args.seed, "pool_cap": args.pool_cap, "unit_order": args.unit_order,
             "rank_limit": args.rank_limit, "restarts": getattr(args, "restarts", None)}
    cfg = load_config(args.config, {k: v for k, v in flags.items() if v is not None})
    set_conductor_limit(cfg.conductor_limit)
    return cfg


def _emit(obj):
    sys.stdout.write(dumps(obj))


def _load_set(path, entry):
    obj = load_file(path)
    sid = set_space_id(obj)
    if sid is not None and sid != entry.id:
        raise MalformedInput(f"set file is for space {sid!r}, not {entry.id!r}")
    return decode_set(obj, entry.space)


def cmd_list_spaces(args, cfg):
    entries, note = catalog_list(args.family)
    _emit({"family": args.family, "spaces": [e.to_json() for e in entries], "note": note})
    return EXIT_OK


def cmd_verify_set(args, cfg):
    e = get_entry(args.space)
    X = _load_set(args.points, e)
    v = e.space.antipodal_verdict(X, args.method)
    _emit({**encode_verdict(v), "space": e.id, "size": len(X)})
    return EXIT_OK if v["antipodal"] else EXIT_FAIL


def cmd_find_maximal(args, cfg):
    e = get_entry(args.space)
    pool = build_pool(e, cfg)
    full = e.space.mode == FULL and not e.space.group_form
    r = two_number(e.space, pool, cfg.restarts, cfg.seed, certify=full)
    out = encode_set(r.best)
    out["size"] = len(r.best)
    out["tier"] = r.certificate.verdict if r.certificate else "PoolMaximal"
    _emit(out)
    return EXIT_OK


def cmd_two_number(args, cfg):
    e = get_entry(args.space)
    pool = build_pool(e, cfg)
    full = e.space.mode == FULL and not e.space.group_form
    r = two_number(e.space, pool, cfg.restarts, cfg.seed, certify=full)
    exp = expected_two_number(e)
    st = status(exp, r.value)
    _emit({"space": e.id, "two_number": r.value, "expected": exp,
           "tier": r.certificate.verdict if r.certificate else "PoolMaximal", "status": st})
    return EXIT_FAIL if st == "FAIL" else EXIT_OK


def cmd_enumerate_classes(args, cfg):
    e = get_entry(args.space)
    pool = build_pool(e, cfg)
    cls = enumerate_maximal_classes(e.space, pool)
    _emit({"space": e.id, "count": len(cls), "tier": "pool-level",
           "classes": [dict(encode_set(c), size=len(c)) for c in cls]})
    return EXIT_OK


def cmd_weyl(args, cfg):
    e = get_entry(args.space)
    X = _load_set(args.set_file, e)
    pool = build_pool(e, cfg)
    w = weyl_pool(e.space, X, pool)
    _emit({"space": e.id, "order": w.order, "origin_isotropy_order": w.origin_isotropy_order,
           "generators": [list(g) for g in w.generators], "tier": "pool-level"})
    return EXIT_OK


def cmd_report(args, cfg):
    e = get_entry(args.space)
    r = run_report(e, cfg, timings=args.timings)
    text = render_json(r) if args.format == "json" else render_md(r)
    Path(args.out).write_text(text, encoding="utf-8")
    print(f"{e.id}: {r.verdict} -> {args.out}")
    return EXIT_FAIL if r.verdict == "FAIL" else EXIT_OK


COMMANDS = {
    "list-spaces": cmd_list_spaces, "verify-set": cmd_verify_set,
    "find-maximal": cmd_find_maximal, "two-number": cmd_two_number,
    "enumerate-classes": cmd_enumerate_classes, "weyl": cmd_weyl, "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except MalformedInput as ex:
        where = f" at line {ex.line}, column {ex.column}" if ex.line is not None else ""
        print(f"error: {ex}{where}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownSpace as ex:
        print(f"error: {ex.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except NotMaximal as ex:
        print(f"FAIL: {ex}", file=sys.stderr)
        return EXIT_FAIL
    except (AntipodalError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
