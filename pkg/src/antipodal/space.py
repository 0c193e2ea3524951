"""Coset spaces M = G/H, the Cartan quadratic morphism phi, psi, geodesic symmetries,
antipodality tests, and the elementary abelian 2-subgroups F_2(X) and F(X).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import (FiberDataRequired, MissingOrigin, MissingThetaBar, NotAntipodal, NotFixed,
                     NotInGroup, ProjectionMismatch, RankLimit, SpecMismatch)
from .exact import Matrix
from .groups import (ExtendedElement, ExtendedGroup, GroupSpec, InvolutionSpec, Theta,
                     canonical_rep, contains, same_element)

FULL = "full"
ORACLE = "oracle"


@dataclass(frozen=True)
class CosetPoint:
    rep: Matrix

    def __repr__(self):
        return f"CosetPoint({self.rep!r})"


_MEMO_LIMIT = 200000


def _remember(cache: dict, k, v):
    if len(cache) >= _MEMO_LIMIT:
        cache.clear()
    cache[k] = v


class SpaceModel:
    """M = G/H for a classical symmetric pair, or the group form M = G.

    In full mode H = G^theta and points are keyed by the canonical phi value, which is
    injective on G/G^theta.  In oracle mode H is a subgroup between (G^theta)^0 and
    G^theta given by a membership test; key_fn, when supplied, must be a complete
    coset invariant, and fiber_reps lists representatives of G^theta/H.
    """

    def __init__(self, group: GroupSpec, involution: InvolutionSpec, mode: str = FULL,
                 oracle: Optional[Callable[[Matrix], bool]] = None,
                 fiber_reps: Optional[list] = None,
                 key_fn: Optional[Callable[[Matrix], object]] = None,
                 name: str = ""):
        self.group = group
        self.involution = involution
        self.name = name or f"{group}/{involution.kind}"
        self.group_form = involution.kind == "GroupForm"
        if mode not in (FULL, ORACLE):
            raise SpecMismatch(f"unknown subgroup mode {mode!r}")
        if mode == ORACLE and oracle is None:
            raise SpecMismatch("oracle mode needs a membership oracle")
        self.mode = mode
        self.oracle = oracle
        self.fiber_reps = fiber_reps
        self.key_fn = key_fn
        if self.group_form:
            self.theta = None
            self.ext = None
        else:
            self.theta = Theta(group, involution)
            self.ext = ExtendedGroup(self.theta)
        # pure-function memos; matrices are immutable and hashable
        self._phi_cache: dict = {}
        self._inH_cache: dict = {}
        self._pair_cache: dict = {}

    # -- basics -----------------------------------------------------------------
    @property
    def origin(self) -> CosetPoint:
        return CosetPoint(self.group.identity())

    def point(self, g: Matrix, check: bool = True) -> CosetPoint:
        if check and not contains(self.group, g):
            raise NotInGroup(f"matrix is not in {self.group}")
        return CosetPoint(canonical_rep(self.group, g))

    def _require(self, x: CosetPoint):
        if not contains(self.group, x.rep):
            raise NotInGroup(f"point representative is not in {self.group}")

    def in_H(self, u: Matrix) -> bool:
        v = self._inH_cache.get(u)
        if v is None:
            if self.group_form:
                v = same_element(self.group, u, self.group.identity())
            elif self.mode == ORACLE:
                v = bool(self.oracle(u))
            else:
                v = same_element(self.group, self.theta(u), u)
            _remember(self._inH_cache, u, v)
        return v

    def phi_matrix(self, g: Matrix) -> Matrix:
        """g theta(g)^-1, canonical in the quotient."""
        th = self.theta
        if th is None:
            raise SpecMismatch("group form has no Cartan morphism")
        v = self._phi_cache.get(g)
        if v is None:
            v = canonical_rep(self.group, g @ th(g).adjoint())
            _remember(self._phi_cache, g, v)
        return v

    def key(self, x: CosetPoint):
        """Hashable complete invariant of the coset gH."""
        if self.group_form:
            return canonical_rep(self.group, x.rep)
        if self.mode == ORACLE:
            if self.key_fn is None:
                raise SpecMismatch("oracle mode without a key function")
            return self.key_fn(x.rep)
        return self.phi_matrix(x.rep)

    def coset_eq(self, x: CosetPoint, y: CosetPoint) -> bool:
        if self.group_form:
            return same_element(self.group, x.rep, y.rep)
        return self.in_H(x.rep.adjoint() @ y.rep)

    def translate(self, g: Matrix, x: CosetPoint) -> CosetPoint:
        return CosetPoint(canonical_rep(self.group, g @ x.rep))

    # -- phi, psi, s_x ---------------------------------------------------------------
    def cartan_phi(self, x: CosetPoint, check: bool = False) -> Matrix:
        if check:
            self._require(x)
        return self.phi_matrix(x.rep)

    def psi(self, x: CosetPoint, check: bool = False) -> ExtendedElement:
        return self.ext.make(self.cartan_phi(x, check), 1)

    def geodesic_symmetry(self, x: CosetPoint, y: CosetPoint, check: bool = False) -> CosetPoint:
        if check:
            self._require(x)
            self._require(y)
        g1, g2 = x.rep, y.rep
        if self.group_form:
            return CosetPoint(canonical_rep(self.group, g1 @ g2.adjoint() @ g1))
        u = self.theta(g1.adjoint() @ g2)
        return CosetPoint(canonical_rep(self.group, g1 @ u))

    def s_o(self, x: CosetPoint) -> CosetPoint:
        return self.geodesic_symmetry(self.origin, x)

    # -- antipodality ------------------------------------------------------------------
    def is_antipodal_pair(self, x: CosetPoint, y: CosetPoint, check: bool = False) -> bool:
        if check:
            self._require(x)
            self._require(y)
        ck = (x.rep, y.rep)
        v = self._pair_cache.get(ck)
        if v is None:
            if self.group_form:
                v = self.coset_eq(self.geodesic_symmetry(x, y), y)
            else:
                v = self.in_H(self.phi_matrix(y.rep.adjoint() @ x.rep))
            _remember(self._pair_cache, ck, v)
        return v

    def pairwise_witness(self, points):
        pts = list(points)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if not self.is_antipodal_pair(pts[i], pts[j]):
                    return (i, j)
        return None

    def is_antipodal_set(self, X, method: str = "pairwise") -> bool:
        return self.antipodal_verdict(X, method)["antipodal"]

    def antipodal_verdict(self, X, method: str = "pairwise") -> dict:
        pts = X.points if isinstance(X, AntipodalSet) else list(X)
        if method == "pairwise":
            w = self.pairwise_witness(pts)
            return {"antipodal": w is None, "method": "pairwise", "witness": w}
        if method in ("phi", "phi_criterion"):
            return self._phi_verdict(pts)
        raise SpecMismatch(f"unknown method {method!r}")

    def _phi_verdict(self, pts) -> dict:
        if self.mode != FULL or self.group_form:
            raise SpecMismatch("phi criterion needs the full fixed group")
        o = self.key(self.origin)
        if not any(self.key(p) == o for p in pts):
            raise MissingOrigin("phi criterion needs the origin in X")
        phis = [self.cartan_phi(p) for p in pts]
        G = self.group
        for i, f in enumerate(phis):
            if not self.in_H(f):
                return {"antipodal": False, "method": "phi", "witness": (i,)}
            if not same_element(G, f @ f, G.identity()):
                return {"antipodal": False, "method": "phi", "witness": (i,)}
        for i in range(len(phis)):
            for j in range(i + 1, len(phis)):
                if not same_element(G, phis[i] @ phis[j], phis[j] @ phis[i]):
                    return {"antipodal": False, "method": "phi", "witness": (i, j)}
        return {"antipodal": True, "method": "phi", "witness": None}

    def fixed_point_test(self, x: CosetPoint) -> bool:
        """x in the fixed point set of s_o."""
        if self.mode != FULL or self.group_form:
            raise SpecMismatch("fixed point test needs the full fixed group")
        f = self.cartan_phi(x)
        G = self.group
        return self.in_H(f) and same_element(G, f @ f, G.identity())

    def involution_pair(self, x: CosetPoint):
        if not self.fixed_point_test(x):
            raise NotFixed("x is not fixed by s_o")
        return self.psi(x), self.ext.thetabar

    # -- sets ------------------------------------------------------------------------------
    def make_set(self, points, check: bool = True) -> "AntipodalSet":
        """Deduplicate under coset equality and put the origin first if present."""
        seen = {}
        for p in points:
            if check:
                self._require(p)
            k = self.key(p)
            if k not in seen:
                seen[k] = p
        o = self.key(self.origin)
        pts = list(seen.values())
        has_o = o in seen
        if has_o:
            pts = [seen[o]] + [p for k, p in seen.items() if k != o]
        return AntipodalSet(self, pts, has_o)


class AntipodalSet:
    """Finite point set in a space, deduplicated by coset, origin first when present.

    Antipodality is a property checked by SpaceModel, not an invariant of this class.
    """

    def __init__(self, space: SpaceModel, points, contains_origin: bool):
        self.space = space
        self.points = list(points)
        self.contains_origin = contains_origin

    def __len__(self):
        return len(self.points)

    def keys(self):
        return frozenset(self.space.key(p) for p in self.points)

    def __eq__(self, other):
        return isinstance(other, AntipodalSet) and self.keys() == other.keys()

    def __hash__(self):
        return hash(self.keys())

    def __repr__(self):
        return f"AntipodalSet({self.space.name}, {len(self)} points)"


# -- elementary abelian 2-subgroups -------------------------------------------------------

class Elem2Subgroup:
    """Elementary abelian 2-subgroup of the extended group, materialized."""

    def __init__(self, ext: ExtendedGroup, basis, elements):
        self.ext = ext
        self.basis = list(basis)
        self.elements = list(elements)
        self._keys = {e.key() for e in self.elements}

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, t: ExtendedElement):
        return t.key() in self._keys

    @property
    def F1(self):
        return [e for e in self.elements if e.outer == 0]

    def key(self):
        return frozenset(self._keys)


def span_elements(ext: ExtendedGroup, gens, rank_limit: int = 20):
    """GF(2) elimination by membership: returns (basis, elements)."""
    elements = [ext.identity]
    keys = {elements[0].key()}
    basis = []
    for t in gens:
        if t.key() in keys:
            continue
        if len(basis) + 1 > rank_limit:
            raise RankLimit(f"rank exceeds {rank_limit}")
        new = [ext.mul(e, t) for e in elements]
        for e in new:
            keys.add(e.key())
        elements.extend(new)
        basis.append(t)
    return basis, elements


def check_elementary_abelian(ext: ExtendedGroup, gens) -> bool:
    gens = list(gens)
    if not all(ext.is_involution(t) for t in gens):
        return False
    return all(ext.commute(gens[i], gens[j])
               for i in range(len(gens)) for j in range(i + 1, len(gens)))


def build_F2(space: SpaceModel, X: AntipodalSet, rank_limit: int = 20) -> Elem2Subgroup:
    if space.mode != FULL or space.group_form:
        raise SpecMismatch("F_2 needs the full fixed group")
    if not X.contains_origin:
        raise MissingOrigin("F_2(X) is built for sets through the origin")
    if not space.is_antipodal_set(X):
        raise NotAntipodal("X is not antipodal")
    ext = space.ext
    gens = [ext.thetabar] + [space.psi(x) for x in X.points]
    assert check_elementary_abelian(ext, gens)
    basis, elements = span_elements(ext, gens, rank_limit)
    return Elem2Subgroup(ext, basis, elements)


def generated_subgroup(space: SpaceModel, gens, rank_limit: int = 20) -> Elem2Subgroup:
    ext = space.ext
    gens = list(gens)
    if not check_elementary_abelian(ext, gens):
        raise NotAntipodal("generators do not span an elementary abelian 2-subgroup")
    basis, elements = span_elements(ext, gens, rank_limit)
    return Elem2Subgroup(ext, basis, elements)


def saturate(space: SpaceModel, F: Elem2Subgroup, pool) -> AntipodalSet:
    """All pool points x with psi(x) in F."""
    if space.ext.thetabar not in F:
        raise MissingThetaBar("thetabar is not in F")
    pts = [x for x in pool.points if space.psi(x) in F]
    return space.make_set(pts, check=False)


def projection_antipodal_check(space: SpaceModel, X) -> bool:
    """Antipodality of pi^-1(pi(X)), asserted equal to that of X."""
    if space.mode != ORACLE:
        raise SpecMismatch("projection check is for a space with H strictly inside G^theta")
    if not space.fiber_reps:
        raise FiberDataRequired("G^theta/H representatives are required")
    pts = X.points if isinstance(X, AntipodalSet) else list(X)
    pre = [CosetPoint(canonical_rep(space.group, p.rep @ h)) for p in pts for h in space.fiber_reps]
    pre_set = space.make_set(pre, check=False)
    direct = space.is_antipodal_set(pts)
    lifted = space.is_antipodal_set(pre_set)
    if direct != lifted:
        raise ProjectionMismatch("X and its saturated preimage disagree")
    return lifted


# -- adjoint-type reduction ----------------------------------------------------------------------

def _projective_key(A: Matrix):
    """Normalize A up to central scalars: first nonzero entry scaled to 1 (or made positive)."""
    for r in A.rows:
        for x in r:
            if not x.is_zero():
                if A.kind == "quat":
                    s = next(c for c in x.parts if c)
                    return A if s > 0 else -A
                return A.scale(x.inv())
    raise SpecMismatch("zero matrix")


@dataclass(frozen=True)
class AutElement:
    """Automorphism A |-> M theta^outer(A) M^-1 of G, M up to scalars."""

    mat: Matrix
    outer: int

    def key(self):
        return (self.mat, self.outer)


class AutSubgroup:
    def __init__(self, space: SpaceModel, elements):
        self.space = space
        self.elements = list(elements)
        self._keys = {e.key() for e in self.elements}

    def __contains__(self, a: AutElement):
        return a.key() in self._keys

    def __len__(self):
        return len(self.elements)

    def key(self):
        return frozenset(self._keys)


def _is_adjoint(space: SpaceModel) -> bool:
    g = space.group
    if g.family == "SU":
        return g.m == g.n
    return g.m == 2


def aut_of(space: SpaceModel, t: ExtendedElement) -> AutElement:
    """Image of g thetabar^eps in Aut(G): inner theta folds into the matrix."""
    th = space.theta
    if th.antilinear:
        return AutElement(_projective_key(t.rep @ th.C) if t.outer else _projective_key(t.rep), t.outer)
    M = t.rep @ th.C if t.outer else t.rep
    return AutElement(_projective_key(M), 0)


def adjoint_project(space: SpaceModel, F2: Elem2Subgroup) -> AutSubgroup:
    if not _is_adjoint(space):
        raise SpecMismatch("adjoint_project needs a group of adjoint type")
    seen = {}
    for t in F2.elements:
        a = aut_of(space, t)
        seen.setdefault(a.key(), a)
    return AutSubgroup(space, seen.values())


def reconstruct_F2(space: SpaceModel, F: AutSubgroup, pool, rank_limit: int = 20) -> Elem2Subgroup:
    """<g thetabar g^-1 : g theta g^-1 in F>, with g ranging over the pool."""
    if not _is_adjoint(space):
        raise SpecMismatch("reconstruct_F2 needs a group of adjoint type")
    gens = [space.psi(x) for x in pool.points if aut_of(space, space.psi(x)) in F]
    return generated_subgroup(space, gens, rank_limit)


def theta_aut(space: SpaceModel) -> AutElement:
    return aut_of(space, space.ext.thetabar)


def group_form_antipodal_check(group: GroupSpec, X) -> bool:
    """X containing e is antipodal in the group form iff it is an elementary abelian 2-group."""
    mats = [canonical_rep(group, A) for A in X]
    for A in mats:
        if not contains(group, A):
            raise NotInGroup("element not in the group")
    I = group.identity()
    keys = set(mats)
    if canonical_rep(group, I) not in keys:
        return False
    for A in mats:
        if not same_element(group, A @ A, I):
            return False
    for A in mats:
        for B in mats:
            if not same_element(group, A @ B, B @ A):
                return False
            if canonical_rep(group, A @ B) not in keys:
                return False
    return True
