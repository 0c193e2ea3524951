"""Catalog of classical compact symmetric spaces with canonical maximal antipodal sets
and the closed-form 2-numbers.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Optional

from .errors import NoRecipe, SpecMismatch, UnknownSpace
from .exact import CYC, QUAT, Matrix, diag, identity
from .groups import GroupSpec, InvolutionSpec, contains
from .scalars import Quat, zeta
from .space import FULL, ORACLE, AntipodalSet, CosetPoint, SpaceModel

MANIFEST_VERSION = 1
MANIFEST_PATH = Path(__file__).with_name("catalog_manifest.json")

OUT_OF_SCOPE = {
    "spin": "open case, out of scope: Spin(n) and Spin(4m)/<c> have no classification of "
            "maximal elementary abelian 2-subgroups",
    "exceptional": "out of scope: exceptional groups have no desk-scale exact matrix model",
}

# cardinalities quoted for exceptional spaces; never checked here
LITERATURE_EXCEPTIONAL = [
    {"space": "E6sc / outer involution sigma_4, (r,s)=(4,0)", "count": 28},
    {"space": "E6sc / outer involution sigma_4, (r,s)=(1,2)", "count": 64},
    {"space": "E6sc / outer involution sigma_3", "count": 4},
    {"space": "E7sc / sigma_2", "count": 56},
    {"space": "E7sc / sigma_3, (r,s)=(8,0)", "count": 72},
    {"space": "E7sc / sigma_3, (r,s)=(4,1)", "count": 56},
    {"space": "E7sc / sigma_3, (r,s)=(1,3)", "count": 128},
]


@dataclass
class CatalogEntry:
    id: str
    cartan: str
    group: GroupSpec
    involution: InvolutionSpec
    recipe: Optional[str]
    expected: Optional[int]
    expected_source: Optional[str] = None   # "closed_form" or "derived"
    constraint: str = ""
    mode: str = FULL
    unit_order: int = 4
    monomial_only: bool = True
    bridge_depth: int = 1
    note: str = ""
    _space: Optional[SpaceModel] = field(default=None, repr=False, compare=False)

    @property
    def space(self) -> SpaceModel:
        if self._space is None:
            self._space = _build_space(self)
        return self._space

    @property
    def inner(self) -> bool:
        return not self.involution.antilinear and self.involution.kind != "GroupForm"

    def to_json(self) -> dict:
        return {
            "id": self.id, "cartan": self.cartan, "group": self.group.to_json(),
            "involution": self.involution.to_json(), "recipe": self.recipe,
            "expected_two_number": self.expected, "expected_source": self.expected_source,
            "constraint": self.constraint, "mode": self.mode,
            "pool": {"unit_order": self.unit_order, "monomial_only": self.monomial_only,
                     "bridge_depth": self.bridge_depth},
            "note": self.note,
        }


def _so_n_minus_1_oracle(u: Matrix) -> bool:
    # H = SO(n-1) embedded as diag(1, A): stabilizer of e_1
    return u.rows[0][0] == 1


def _first_column_key(g: Matrix):
    return tuple(r[0] for r in g.rows)


def _build_space(e: CatalogEntry) -> SpaceModel:
    if e.mode == ORACLE:
        n = e.group.n
        flip = diag([-1, -1] + [1] * (n - 2), CYC, e.group.conductor)
        return SpaceModel(e.group, e.involution, ORACLE, oracle=_so_n_minus_1_oracle,
                          fiber_reps=[e.group.identity(), flip], key_fn=_first_column_key,
                          name=e.id)
    return SpaceModel(e.group, e.involution, name=e.id)


# -- constructors with parameter constraints ---------------------------------------------------

def grassmannian(field_: str, p: int, q: int, adjoint: bool = False) -> CatalogEntry:
    if not (1 <= p <= q):
        raise SpecMismatch("Grassmannians need 1 <= p <= q")
    n = p + q
    inv = InvolutionSpec("AdIpq", p, q)
    if field_ == "C":
        m = n if adjoint else 1
        g = GroupSpec("SU", n, m)
        ident = f"{'P' if adjoint else ''}SU{n}_mod_U{p}U{q}"
        cartan = "AIII"
    elif field_ == "H":
        g = GroupSpec("Sp", n, 2 if adjoint else 1)
        ident = f"{'P' if adjoint else ''}Sp{n}_mod_Sp{p}Sp{q}"
        cartan = "CII"
    elif field_ == "R":
        if p == q and p < 3 and not adjoint:
            raise SpecMismatch("SO(2p)/S(O(p)xO(p)) is listed for p >= 3")
        g = GroupSpec("SO", n, 2 if adjoint else 1)
        ident = f"{'P' if adjoint else ''}SO{n}_mod_O{p}O{q}"
        cartan = "BDI"
    else:
        raise SpecMismatch(field_)
    expected = comb(2 * p, p) if (p == q and not adjoint) else None
    return CatalogEntry(ident, cartan, g, inv, "grassmannian", expected,
                        "closed_form" if expected is not None else None,
                        constraint="p = q" + (" >= 3" if field_ == "R" else " >= 1"))


def type_AI(n: int, m: int = 1) -> CatalogEntry:
    if n < 2 or n % m:
        raise SpecMismatch("AI needs n >= 2 and m | n")
    g = GroupSpec("SU", n, m)
    ident = f"SU{n}_mod_SO{n}" if m == 1 else f"G{n}_{m}_tau"
    expected = 2 ** (n - 1) if m % 2 == 1 else None
    return CatalogEntry(ident, "AI", g, InvolutionSpec("Tau"), "diag_tau", expected,
                        "closed_form" if expected else None, constraint="m | n")


def type_AII(n: int, m: int = 1) -> CatalogEntry:
    if n < 4 or n % 2 or n % m:
        raise SpecMismatch("AII needs even n >= 4 and m | n")
    g = GroupSpec("SU", n, m)
    ident = f"SU{n}_mod_Sp{n // 2}" if m == 1 else f"G{n}_{m}_taup"
    expected = 2 ** (n // 2) if m % 2 == 1 else None
    return CatalogEntry(ident, "AII", g, InvolutionSpec("TauPrime"), "diag_taup", expected,
                        "closed_form" if expected else None, constraint="n even, m | n",
                        note="the Pfaffian constraint allows only 2^(n/2-1) diagonal points")


def type_CI(n: int, adjoint: bool = False) -> CatalogEntry:
    if n < 1:
        raise SpecMismatch("CI needs n >= 1")
    g = GroupSpec("Sp", n, 2 if adjoint else 1)
    ident = f"{'P' if adjoint else ''}Sp{n}_mod_U{n}"
    expected = None if adjoint else 2 ** n
    return CatalogEntry(ident, "CI", g, InvolutionSpec("AdiI"), "diag_CI", expected,
                        "closed_form" if expected else None, constraint="n >= 1")


def type_DIII(n: int, adjoint: bool = False) -> CatalogEntry:
    if n < 3:
        raise SpecMismatch("DIII is listed for n >= 3")
    g = GroupSpec("SO", 2 * n, 2 if adjoint else 1)
    ident = f"{'P' if adjoint else ''}SO{2 * n}_mod_U{n}"
    expected = None if adjoint else 2 ** (n - 1)
    return CatalogEntry(ident, "DIII", g, InvolutionSpec("AdJn"), "diag_DIII", expected,
                        "closed_form" if expected else None, constraint="n >= 3")


def group_form(family: str, n: int) -> CatalogEntry:
    g = GroupSpec(family, n)
    expected, src = None, None
    if family == "SU":
        expected, src = 2 ** (n - 1), "closed_form"
    elif family == "Sp" and n >= 2:
        expected, src = 2 ** n, "closed_form"
    elif family == "SO" and (n >= 8 and n % 2 == 0):
        expected, src = 2 ** (n - 1), "closed_form"
    elif family == "SO" and n == 3:
        expected, src = 4, "derived"
    return CatalogEntry(f"{family}{n}_group", "group", g, InvolutionSpec("GroupForm"),
                        "diag_group", expected, src, constraint="group form")


def sphere_oracle(n: int) -> CatalogEntry:
    g = GroupSpec("SO", n)
    return CatalogEntry(f"SO{n}_mod_SO{n - 1}", "BDI", g, InvolutionSpec("AdIpq", 1, n - 1),
                        "sphere_pair", None, None, constraint="H = (G^theta)^0",
                        mode=ORACLE, note="identity component of S(O(1)xO(n-1)), by oracle")


def _standard_entries():
    out = []
    for p in (1, 2, 3):
        out.append(grassmannian("C", p, p))
    out += [grassmannian("C", 1, 2), grassmannian("C", 1, 3)]
    for p in (1, 2):
        out.append(grassmannian("H", p, p))
    out.append(grassmannian("H", 1, 2))
    out += [grassmannian("R", 3, 3), grassmannian("R", 4, 4),
            grassmannian("R", 1, 2), grassmannian("R", 1, 3), grassmannian("R", 2, 3)]
    psu2 = grassmannian("C", 1, 1, adjoint=True)
    psu2.monomial_only, psu2.bridge_depth = False, 2
    psu2.note = "PSU(2) = SO(3); Hurwitz bridge moves reach the three coordinate axes"
    out.append(psu2)
    for n in (2, 3, 4, 5):
        out.append(type_AI(n))
    out += [type_AI(3, 3), type_AI(2, 2), type_AI(4, 2)]
    out += [type_AII(4), type_AII(6)]
    for n in (1, 2, 3, 4):
        out.append(type_CI(n))
    out.append(type_CI(2, adjoint=True))
    out += [type_DIII(3), type_DIII(4), type_DIII(4, adjoint=True)]
    out += [group_form("SU", 2), group_form("SU", 3), group_form("SO", 3), group_form("SO", 4),
            group_form("Sp", 1), group_form("Sp", 2)]
    out.append(sphere_oracle(4))
    return out


_CATALOG: Optional[dict] = None


def catalog() -> dict:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = {e.id: e for e in _standard_entries()}
    return _CATALOG


FAMILY_FILTERS = ("AI", "AII", "AIII", "BDI", "CI", "CII", "DIII", "group", "spin", "exceptional")


def catalog_list(family: Optional[str] = None):
    """Entries for a Cartan family (or all); spin/exceptional give [] and a note."""
    if family is None:
        return list(catalog().values()), ""
    key = family.lower()
    if key in OUT_OF_SCOPE:
        return [], OUT_OF_SCOPE[key]
    fam = {f.lower(): f for f in FAMILY_FILTERS}.get(key)
    if fam is None:
        raise UnknownSpace(f"unknown family {family!r}; known: {', '.join(FAMILY_FILTERS)}")
    return [e for e in catalog().values() if e.cartan == fam], ""


def get_entry(space_id: str) -> CatalogEntry:
    cat = catalog()
    if space_id not in cat:
        raise UnknownSpace(f"unknown space {space_id!r}; valid ids: {', '.join(sorted(cat))}")
    return cat[space_id]


def expected_two_number(entry: CatalogEntry) -> Optional[int]:
    return entry.expected


# -- canonical maximal sets -------------------------------------------------------------------------

def _signed_perm(n, perm, kind, N, fix_det=True):
    """Permutation matrix e_j -> e_perm[j], one column negated if needed for det 1."""
    one = Quat(1) if kind == QUAT else 1
    zero = Quat(0) if kind == QUAT else 0
    rows = [[zero] * n for _ in range(n)]
    for j, i in enumerate(perm):
        rows[i][j] = one
    sign = _perm_sign(perm)
    if fix_det and sign < 0:
        i = perm[0]
        rows[i][0] = -rows[i][0]
    return Matrix(rows, kind, N if kind == CYC else None)


def _perm_sign(perm):
    s = 1
    seen = set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, L = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            L += 1
        if L % 2 == 0:
            s = -s
    return s


def _grassmannian_set(e: CatalogEntry, sp: SpaceModel):
    p, q = e.involution.p, e.involution.q
    n = p + q
    G = e.group
    pts = []
    for S in itertools.combinations(range(n), p):
        rest = [i for i in range(n) if i not in S]
        perm = list(S) + rest
        g = _signed_perm(n, perm, G.kind, G.conductor, fix_det=G.family != "Sp")
        pts.append(sp.point(g))
    return pts


def _diag_tau_set(e, sp):
    n = e.group.n
    N = e.group.conductor
    i = zeta(4).lift(N)
    pts = []
    for eps in itertools.product((1, -1), repeat=n):
        if eps.count(-1) % 2:
            continue
        d = [i if s == -1 else zeta(4, 0).lift(N) for s in eps]
        if eps.count(-1) % 4 == 2:
            d[0] = -d[0]
        pts.append(sp.point(diag(d, CYC, N)))
    return pts


def _diag_taup_set(e, sp):
    n = e.group.n
    h = n // 2
    N = e.group.conductor
    pts = []
    for eps in itertools.product((1, -1), repeat=h):
        if eps.count(-1) % 2:
            continue
        pts.append(sp.point(diag([1] * h + list(eps), CYC, N)))
    return pts


def _diag_CI_set(e, sp):
    n = e.group.n
    return [sp.point(diag([Quat(0, 0, 1) if s else Quat(1) for s in bits], QUAT))
            for bits in itertools.product((0, 1), repeat=n)]


def _diag_DIII_set(e, sp):
    n2 = e.group.n
    n = n2 // 2
    pts = []
    for eps in itertools.product((1, -1), repeat=n):
        if eps.count(-1) % 2:
            continue
        pts.append(sp.point(diag([1] * n + list(eps), CYC, 4)))
    return pts


def _diag_group_set(e, sp):
    G = e.group
    n = G.n
    pts = []
    for eps in itertools.product((1, -1), repeat=n):
        if G.family != "Sp" and eps.count(-1) % 2:
            continue
        pts.append(sp.point(diag(list(eps), G.kind, G.conductor if G.kind == CYC else None)))
    return pts


def _sphere_pair(e, sp):
    n = e.group.n
    return [sp.origin, sp.point(diag([-1, -1] + [1] * (n - 2), CYC, 4))]


RECIPES = {
    "grassmannian": _grassmannian_set,
    "diag_tau": _diag_tau_set,
    "diag_taup": _diag_taup_set,
    "diag_CI": _diag_CI_set,
    "diag_DIII": _diag_DIII_set,
    "diag_group": _diag_group_set,
    "sphere_pair": _sphere_pair,
}


def canonical_maximal_set(entry: CatalogEntry) -> AntipodalSet:
    if entry.recipe not in RECIPES:
        raise NoRecipe(f"no canonical set recipe for {entry.id}")
    if entry.group.m % 2 == 0:
        raise NoRecipe(f"{entry.id}: even central quotients have several classes and no recipe")
    sp = entry.space
    return sp.make_set(RECIPES[entry.recipe](entry, sp))


# -- manifest ---------------------------------------------------------------------------------------------

def manifest() -> dict:
    return {
        "version": MANIFEST_VERSION,
        "entries": [e.to_json() for e in catalog().values()],
        "out_of_scope": OUT_OF_SCOPE,
        "exceptional_literature_values": {
            "status": "unverified literature values; not reproduced or asserted",
            "values": LITERATURE_EXCEPTIONAL,
        },
    }


def manifest_text() -> str:
    return json.dumps(manifest(), indent=2, sort_keys=True) + "\n"


def load_manifest() -> dict:
    return json.loads(MANIFEST_PATH.read_text())
