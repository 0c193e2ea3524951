"""Run reports for one catalog space: pool, 2-number, certificate tier, classes, Weyl order.

The output is a pure function of (space, config), so repeated runs are byte-identical.
Wall-clock timings are only added on request and then break that contract knowingly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .catalog import CatalogEntry, canonical_maximal_set, expected_two_number
from .config import Config
from .errors import AntipodalError, NoRecipe
from .search import (enumerate_maximal_classes, make_pool, maximality_certificate, two_number,
                     weyl_pool)
from .serialize import dumps, space_spec
from .space import FULL


def build_pool(entry: CatalogEntry, cfg: Config):
    return make_pool(entry.space, cfg.unit_order, entry.monomial_only, cap=cfg.pool_cap,
                     bridge_depth=entry.bridge_depth)


def status(expected: Optional[int], found: int) -> str:
    if expected is None:
        return "UNKNOWN"
    return "PASS" if expected == found else "FAIL"


@dataclass
class RunReport:
    space: dict
    config: dict
    pool: dict
    two_number: dict
    canonical: dict
    classes: dict
    weyl: dict
    verdict: str
    timings: Optional[dict] = field(default=None)

    def to_json(self) -> dict:
        d = {"artifact_version": __version__, "space": self.space, "config": self.config,
             "pool": self.pool, "two_number": self.two_number, "canonical_set": self.canonical,
             "classes": self.classes, "weyl": self.weyl, "verdict": self.verdict}
        if self.timings is not None:
            d["timings_seconds"] = self.timings
        return d


def run_report(entry: CatalogEntry, cfg: Config, timings: bool = False) -> RunReport:
    sp = entry.space
    clock = {}
    t0 = time.perf_counter()
    pool = build_pool(entry, cfg)
    clock["pool"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    full = sp.mode == FULL and not sp.group_form
    tn = two_number(sp, pool, cfg.restarts, cfg.seed, certify=full)
    expected = expected_two_number(entry)
    tier = tn.certificate.verdict if tn.certificate else "PoolMaximal"
    two = {"found": tn.value, "expected": expected, "expected_source": entry.expected_source,
           "tier": tier, "restart_sizes": tn.sizes, "status": status(expected, tn.value)}
    clock["two_number"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    canon = {"recipe": entry.recipe}
    try:
        X = canonical_maximal_set(entry)
        canon["size"] = len(X)
        canon["antipodal_pairwise"] = sp.is_antipodal_set(X)
        if full:
            canon["antipodal_phi"] = sp.is_antipodal_set(X, "phi")
            c = maximality_certificate(sp, X, pool)
            canon["certificate"] = c.to_json()
        else:
            canon["certificate"] = None
    except NoRecipe as e:
        canon["note"] = str(e)
    clock["canonical"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    try:
        cls = enumerate_maximal_classes(sp, pool)
        classes = {"count": len(cls), "sizes": sorted(len(c) for c in cls), "tier": "pool-level"}
    except AntipodalError as e:
        classes = {"count": None, "note": str(e)}
    clock["classes"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    try:
        w = weyl_pool(sp, tn.best, pool)
        weyl = {"order": w.order, "origin_isotropy_order": w.origin_isotropy_order,
                "set_size": len(w.points), "tier": "pool-level"}
    except AntipodalError as e:
        weyl = {"order": None, "note": str(e)}
    clock["weyl"] = time.perf_counter() - t0

    verdict = "FAIL" if two["status"] == "FAIL" else "PASS"
    if canon.get("antipodal_pairwise") is False or canon.get("antipodal_phi") is False:
        verdict = "FAIL"
    return RunReport(space={**space_spec(sp), "cartan": entry.cartan, "mode": sp.mode},
                     config=cfg.to_json(), pool=pool.stats(), two_number=two, canonical=canon,
                     classes=classes, weyl=weyl, verdict=verdict,
                     timings={k: round(v, 3) for k, v in clock.items()} if timings else None)


def render_json(r: RunReport) -> str:
    return dumps(r.to_json())


def render_md(r: RunReport) -> str:
    d = r.to_json()
    s, t = d["space"], d["two_number"]
    lines = [f"# Antipodal report: {s['id']}", "",
             f"- group: `{s['group']}`", f"- involution: `{s['involution']}`",
             f"- Cartan type: {s['cartan']}, mode: {s['mode']}", "",
             "## 2-number", "",
             "| found | expected | source | tier | status |", "|---|---|---|---|---|",
             f"| {t['found']} | {_na(t['expected'])} | {_na(t['expected_source'])} | "
             f"{t['tier']} | {t['status']} |", "",
             f"restart sizes: {t['restart_sizes']}", "",
             "## Canonical set", ""]
    c = d["canonical_set"]
    for k in sorted(c):
        lines.append(f"- {k}: {c[k]}")
    lines += ["", "## Pool", ""] + [f"- {k}: {v}" for k, v in sorted(d["pool"].items())]
    lines += ["", "## Classes up to pool translation", ""]
    lines += [f"- {k}: {v}" for k, v in sorted(d["classes"].items())]
    lines += ["", "## Weyl group (pool-level)", ""]
    lines += [f"- {k}: {v}" for k, v in sorted(d["weyl"].items())]
    lines += ["", "## Effective config", ""] + [f"- {k}: {v}" for k, v in sorted(d["config"].items())]
    if "timings_seconds" in d:
        lines += ["", "## Timings (display only)", ""]
        lines += [f"- {k}: {v}" for k, v in sorted(d["timings_seconds"].items())]
    lines += ["", f"**Verdict: {d['verdict']}**", ""]
    return "\n".join(lines)


def _na(x):
    return "unknown" if x is None else x
