"""Finite search pools, greedy and exhaustive maximal antipodal sets, exact maximality
certificates, 2-numbers, translation classes and pool-level Weyl groups.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt, lcm
from typing import Optional

from .errors import NotAntipodal, NotMaximal, PoolLimit, SpecMismatch
from .exact import (CYC, QUAT, Matrix, block_diag, det, diag, identity, nullspace,
                    commutant_basis, rank)
from .groups import canonical_rep, contains, same_element
from .scalars import Cyc, Quat, zeta
from .space import FULL, AntipodalSet, CosetPoint, SpaceModel

POOL_MAXIMAL = "PoolMaximal"
CERTIFIED = "CertifiedMaximal"
NOT_MAXIMAL = "NotMaximal"


# -- generators ---------------------------------------------------------------------------

def _embed(n, idx, block: Matrix, kind, N):
    """Identity of size n with block placed on the coordinates idx."""
    I = identity(n, kind, N)
    rows = [list(r) for r in I.rows]
    b = block.lift(N) if kind == CYC else block
    for a, i in enumerate(idx):
        for c, j in enumerate(idx):
            rows[i][j] = b.rows[a][c]
    return Matrix(rows, kind, N if kind == CYC else None)


def _fix_det(A: Matrix) -> Matrix:
    """Scale the first row so the determinant becomes 1 (det must be a unit scalar)."""
    d = det(A)
    if d == 1:
        return A
    rows = [list(r) for r in A.rows]
    inv = d.inv()
    rows[0] = [inv * x for x in rows[0]]
    return Matrix(rows, CYC, A.N)


def quat_to_su2(q: Quat, N: int = 4) -> Matrix:
    a, b, c, d = q.parts
    i = zeta(4)
    return Matrix([[a + b * i, c + d * i], [-c + d * i, a - b * i]], CYC, lcm(4, N))


def monomial_generators(space: SpaceModel, unit_order: int):
    g = space.group
    n = g.n
    gens = []
    if g.family == "Sp":
        for k in range(n - 1):
            perm = list(range(n))
            perm[k], perm[k + 1] = perm[k + 1], perm[k]
            rows = [[Quat(1) if perm[j] == i else Quat(0) for j in range(n)] for i in range(n)]
            gens.append(Matrix(rows, QUAT))
        for u in (Quat(0, 1), Quat(0, 0, 1)):
            gens.append(diag([u] + [Quat(1)] * (n - 1), QUAT))
        return gens
    N = lcm(g.conductor, unit_order) if g.family == "SU" else g.conductor
    for k in range(n - 1):
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            if i not in (k, k + 1):
                rows[i][i] = 1
        rows[k][k + 1] = 1
        rows[k + 1][k] = -1
        gens.append(Matrix(rows, CYC, N))
    if n == 1:
        return [identity(1, CYC, N)]
    for k in range(n - 1):
        if g.family == "SU":
            z = zeta(unit_order).lift(N)
            ent = [1] * n
            ent[k], ent[k + 1] = z, z.inv()
        else:
            ent = [1] * n
            ent[k], ent[k + 1] = -1, -1
        gens.append(diag(ent, CYC, N))
    return gens


def bridge_generators(space: SpaceModel, unit_order: int):
    """Exact non-monomial elements: Hurwitz units, rational Hadamard blocks."""
    g = space.group
    n = g.n
    half = Fraction(1, 2)
    out = []
    if g.family == "Sp":
        out.append(diag([Quat(half, half, half, half)] + [Quat(1)] * (n - 1), QUAT))
        return out
    if g.family == "SU":
        N = lcm(g.conductor, unit_order)
        if n >= 2:
            out.append(_embed(n, (0, 1), quat_to_su2(Quat(half, half, half, half), N), CYC, N))
        return out
    N = g.conductor
    if n == 2:
        out.append(Matrix([[Fraction(3, 5), Fraction(-4, 5)], [Fraction(4, 5), Fraction(3, 5)]], CYC, N))
    elif n == 3:
        t = Fraction(1, 3)
        R = Matrix([[t, 2 * t, 2 * t], [2 * t, t, -2 * t], [2 * t, -2 * t, t]], CYC, N)
        out.append(_fix_sign(R))
    else:
        H4 = Matrix([[half, half, half, half], [half, -half, half, -half],
                     [half, half, -half, -half], [half, -half, -half, half]], CYC, N)
        H4 = _fix_sign(H4)
        out.append(_embed(n, (0, 1, 2, 3), H4, CYC, N))
        inv = space.involution
        if inv.kind == "AdJn" and n // 2 >= 4:
            m = n // 2
            out.append(_embed(n, (0, 1, 2, 3, m, m + 1, m + 2, m + 3), block_diag(H4, H4), CYC, N))
    return out


def _fix_sign(R: Matrix) -> Matrix:
    if det(R) == 1:
        return R
    rows = [list(r) for r in R.rows]
    rows[0] = [-x for x in rows[0]]
    return Matrix(rows, CYC, R.N)


def monomial_group_order(space: SpaceModel, unit_order: int) -> int:
    g = space.group
    n = g.n
    if g.family == "Sp":
        return factorial(n) * 8 ** n
    if g.family == "SO":
        return factorial(n) * 2 ** (n - 1)
    # det(P D) = sign(P) prod(d) = 1 leaves unit_order^(n-1) diagonals per permutation
    return factorial(n) * unit_order ** (n - 1)


# -- pools ----------------------------------------------------------------------------------------

class SearchPool:
    """Orbit of the origin under the monomial group (and optional bridge moves).

    points are sorted by their coset key, so enumeration order is deterministic.
    """

    def __init__(self, space: SpaceModel, unit_order: int = 4, monomial_only: bool = True,
                 cap: int = 200000, bridge_depth: int = 1):
        self.space = space
        self.unit_order = unit_order
        self.monomial_only = monomial_only
        self.cap = cap
        self.bridge_depth = 0 if monomial_only else bridge_depth
        self.generators = monomial_generators(space, unit_order)
        for s in self.generators:
            assert contains(space.group, s), s
        self.bridges = bridge_generators(space, unit_order)
        for s in self.bridges:
            assert contains(space.group, s), s
        self.group_order = monomial_group_order(space, unit_order)
        self._build()
        self._adj: dict = {}
        self._perm_cache: dict = {}

    def _build(self):
        sp = self.space
        o = sp.origin
        if sp.group.kind == CYC:
            N = self.generators[0].N
            o = CosetPoint(o.rep.lift(lcm(N, o.rep.N)))
        found = {sp.key(o): (o, 0)}
        frontier = [o]
        level = 0
        while True:
            # monomial closure at this bridge level
            while frontier:
                nxt = []
                for x in frontier:
                    for s in self.generators:
                        y = sp.translate(s, x)
                        k = sp.key(y)
                        if k not in found:
                            found[k] = (y, level)
                            nxt.append(y)
                            if len(found) > self.cap:
                                raise PoolLimit(f"pool exceeds cap {self.cap} for {sp.name}")
                frontier = nxt
            if level >= self.bridge_depth or not self.bridges:
                break
            level += 1
            frontier = []
            for k, (x, lv) in list(found.items()):
                if lv != level - 1:
                    continue
                for s in self.bridges:
                    for t in (s, s.adjoint()):
                        y = sp.translate(t, x)
                        ky = sp.key(y)
                        if ky not in found:
                            found[ky] = (y, level)
                            frontier.append(y)
                            if len(found) > self.cap:
                                raise PoolLimit(f"pool exceeds cap {self.cap} for {sp.name}")
        items = sorted(found.items(), key=lambda kv: _key_order(kv[0]))
        self.keys = [k for k, _ in items]
        self.points = [v[0] for _, v in items]
        self.index = {k: i for i, k in enumerate(self.keys)}
        self.origin_index = self.index[sp.key(sp.origin)]

    def __len__(self):
        return len(self.points)

    def stats(self) -> dict:
        return {"points": len(self.points), "monomial_group_order": self.group_order,
                "unit_order": self.unit_order, "monomial_only": self.monomial_only,
                "bridge_depth": self.bridge_depth}

    def lookup(self, key) -> Optional[int]:
        return self.index.get(key)

    def adjacent(self, i: int, j: int) -> bool:
        if i == j:
            return True
        a, b = (i, j) if i < j else (j, i)
        v = self._adj.get((a, b))
        if v is None:
            v = self.space.is_antipodal_pair(self.points[a], self.points[b])
            self._adj[(a, b)] = v
        return v

    def perm(self, g: Matrix, partial: bool = False, right: bool = False):
        """Permutation of pool indices induced by left translation by g (None where undefined).

        right=True uses x -> x g, an isometry only in the group form.
        """
        ck = (g, partial, right)
        if ck in self._perm_cache:
            return self._perm_cache[ck]
        sp = self.space
        out = []
        for x in self.points:
            y = CosetPoint(x.rep @ g) if right else sp.translate(g, x)
            j = self.index.get(sp.key(y))
            if j is None and not partial:
                raise PoolLimit("pool is not closed under this translation")
            out.append(j)
        out = tuple(out)
        self._perm_cache[ck] = out
        return out

    def subset(self, idx) -> AntipodalSet:
        return self.space.make_set([self.points[i] for i in sorted(idx)], check=False)

    def indices(self, X: AntipodalSet):
        out = []
        for p in X.points:
            i = self.index.get(self.space.key(p))
            if i is None:
                return None
            out.append(i)
        return out


def _key_order(k):
    if isinstance(k, Matrix):
        return k.sort_key()
    if isinstance(k, tuple):
        return tuple(_key_order(x) for x in k)
    if hasattr(k, "sort_key"):
        return k.sort_key()
    return k


def make_pool(space: SpaceModel, unit_order: int = 4, monomial_only: bool = True,
              cap: int = 200000, bridge_depth: int = 1) -> SearchPool:
    return SearchPool(space, unit_order, monomial_only, cap, bridge_depth)


# -- extension --------------------------------------------------------------------------------------

def extend_indices(pool: SearchPool, start, order=None):
    cur = list(dict.fromkeys(start))
    for i in (order if order is not None else range(len(pool))):
        if i in cur:
            continue
        if all(pool.adjacent(i, j) for j in cur):
            cur.append(i)
    return cur


def extend_to_maximal(space: SpaceModel, X: AntipodalSet, pool: SearchPool, order=None) -> AntipodalSet:
    if not space.is_antipodal_set(X):
        raise NotAntipodal("cannot extend a set that is not antipodal")
    idx = pool.indices(X)
    if idx is None:
        # points outside the pool: extend by direct checks
        pts = list(X.points)
        for i in (order if order is not None else range(len(pool))):
            y = pool.points[i]
            if all(space.is_antipodal_pair(y, p) for p in pts):
                if not any(space.coset_eq(y, p) for p in pts):
                    pts.append(y)
        return space.make_set(pts, check=False)
    return pool.subset(extend_indices(pool, idx, order))


def pool_extension(pool: SearchPool, X: AntipodalSet) -> Optional[int]:
    """First pool point that extends X, or None."""
    sp = pool.space
    keys = X.keys()
    for i, y in enumerate(pool.points):
        if pool.keys[i] in keys:
            continue
        if all(sp.is_antipodal_pair(y, p) for p in X.points):
            return i
    return None


def is_pool_maximal(pool: SearchPool, X: AntipodalSet) -> bool:
    return pool_extension(pool, X) is None


def restart_orders(pool: SearchPool, restarts: int, seed: int = 0):
    base = list(range(len(pool)))
    yield base
    for r in range(1, restarts):
        order = base[:]
        random.Random(seed * 1000003 + r).shuffle(order)
        yield order


@dataclass
class TwoNumberResult:
    value: int
    best: AntipodalSet
    sizes: list
    certificate: "MaximalityCertificate"


def two_number(space: SpaceModel, pool: SearchPool, restarts: int = 8, seed: int = 0,
               certify: bool = True) -> TwoNumberResult:
    best = None
    sizes = []
    o = pool.origin_index
    for order in restart_orders(pool, restarts, seed):
        idx = extend_indices(pool, [o], order)
        sizes.append(len(idx))
        if best is None or len(idx) > len(best):
            best = idx
    X = pool.subset(best)
    cert = maximality_certificate(space, X, pool) if certify else None
    return TwoNumberResult(len(best), X, sizes, cert)


# -- exact maximality certificates ------------------------------------------------------------------

@dataclass
class MaximalityCertificate:
    verdict: str
    witness: Optional[CosetPoint] = None
    commutant_dim: Optional[int] = None
    note: str = ""

    def to_json(self):
        return {"verdict": self.verdict, "commutant_dim": self.commutant_dim, "note": self.note,
                "has_witness": self.witness is not None}


def _roots_of_unity_sqrt(s: Cyc, limit: int = 64):
    """Both square roots of a root of unity s, in a cyclotomic field."""
    N = s.N
    for M in (N, 2 * N, lcm(4, 2 * N)):
        if M > limit:
            continue
        for k in range(M):
            r = zeta(M, k)
            if r * r == s:
                return [r, -r]
    raise SpecMismatch(f"no square root found for {s}")


def _inner(u: Matrix, v: Matrix):
    # u* v for column vectors
    return (u.adjoint() @ v).rows[0][0]


def _gram_schmidt(vecs):
    out = []
    for v in vecs:
        w = v
        for u in out:
            c = _inner(u, w) / _inner(u, u)
            w = w - u.scale(c)
        if not w.is_zero():
            out.append(w)
    return out


def _hstack(vecs):
    n = vecs[0].shape[0]
    return Matrix([[v.rows[i][0] for v in vecs] for i in range(n)], vecs[0].kind, vecs[0].N)


def _split(M: Matrix, basis, roots):
    """Split span(basis) (M-invariant) into eigenspaces of M for the given roots."""
    B = _hstack(basis)
    n = M.n
    pieces = []
    total = 0
    for lam in roots:
        A = (M - identity(n, CYC, M.N).scale(lam)) @ B
        ker = nullspace(A.lift(lcm(A.N, B.N)))
        if ker:
            vecs = [B.lift(k.N) @ k for k in ker]
            pieces.append((lam, vecs))
            total += len(vecs)
    assert total == len(basis), "operator is not diagonalizable on the subspace"
    return pieces


def joint_eigenspaces(mats):
    """Common eigenspaces of commuting diagonalizable matrices whose squares are scalar."""
    n = mats[0].n
    N = lcm(*(A.N for A in mats))
    spaces = [[Matrix([[1 if i == j else 0] for i in range(n)], CYC, N) for j in range(n)]]
    for M in mats:
        sq = (M @ M).scalar_value()
        assert sq is not None, "expected a matrix with scalar square"
        roots = _roots_of_unity_sqrt(sq)
        new = []
        for basis in spaces:
            for _, vecs in _split(M, basis, roots):
                new.append(vecs)
        spaces = new
    return spaces


def _projector(v: Matrix) -> Matrix:
    return (v @ v.adjoint()).scale(_inner(v, v).inv())


def _torus_candidates(lines, lam_choices):
    """All sum(lam_k P_k) with lam_k drawn from lam_choices."""
    Ps = [_projector(v) for v in lines]
    out = []

    def rec(k, acc):
        if k == len(Ps):
            out.append(acc)
            return
        for lam in lam_choices:
            t = Ps[k].scale(lam)
            rec(k + 1, t if acc is None else acc + t)
    rec(0, None)
    return out


def _rational_sqrt(r: Fraction):
    if r < 0:
        return None
    a, b = r.numerator, r.denominator
    sa, sb = isqrt(a), isqrt(b)
    if sa * sa == a and sb * sb == b:
        return Fraction(sa, sb)
    return None


def _realize_linear(space: SpaceModel, target: Matrix, lines):
    """A group element g with g C g^-1 = target, matching orthogonal eigenlines."""
    th = space.theta
    C = th.C.lift(target.N)
    sq = (C @ C).scalar_value()
    roots = _roots_of_unity_sqrt(sq)
    c_spaces = {}
    t_spaces = {}
    for lam, vecs in _split(C, [Matrix([[1 if i == j else 0] for i in range(C.n)], CYC, C.N)
                                 for j in range(C.n)], roots):
        c_spaces[lam] = _gram_schmidt(vecs)
    for v in lines:
        Tv = target @ v.lift(lcm(v.N, target.N))
        lam = next(l for l in roots if Tv == v.lift(Tv.N).scale(l))
        t_spaces.setdefault(lam, []).append(v)
    real = space.group.family == "SO"
    terms = []
    for lam, cv in c_spaces.items():
        tv = t_spaces.get(lam, [])
        if len(tv) != len(cv):
            return None
        if real and lam != lam.conj():
            # pair each line with its conjugate so the sum is real
            if lam.sort_key() > lam.conj().sort_key():
                continue
            tv = tv
        for v, w in zip(cv, tv):
            r = (_inner(v, v) * _inner(w, w))
            if not r.is_rational():
                return None
            s = _rational_sqrt(r.to_fraction())
            if s is None:
                return None
            terms.append((w @ v.adjoint()).scale(Fraction(1) / s))
            if real and lam != lam.conj():
                terms.append((w.conj() @ v.conj().adjoint()).scale(Fraction(1) / s))
    if not terms:
        return None
    g = terms[0]
    for t in terms[1:]:
        g = g + t
    if not g.is_unitary():
        return None
    d = det(g)
    if d != 1:
        if real:
            return None
        g = _fix_det(g)
    if not contains(space.group, g):
        return None
    return g


def _realize(space: SpaceModel, pool: Optional[SearchPool], phi_target: Matrix, lines=None):
    key = canonical_rep(space.group, phi_target)
    if pool is not None:
        i = pool.lookup(key)
        if i is not None:
            return pool.points[i]
    if lines is not None and space.group.kind == CYC and not space.theta.antilinear:
        g = _realize_linear(space, phi_target @ space.theta.C.lift(phi_target.N), lines)
        if g is not None:
            x = space.point(g)
            if space.key(x) == key:
                return x
    return None


def _new_candidate(space, X, phis_keys, phi_new) -> bool:
    return canonical_rep(space.group, phi_new) not in phis_keys


def maximality_certificate(space: SpaceModel, X: AntipodalSet, pool: Optional[SearchPool] = None
                           ) -> MaximalityCertificate:
    if space.mode != FULL or space.group_form:
        raise SpecMismatch("certificates need the full fixed group")
    if not X.contains_origin:
        raise NotAntipodal("certificates are for antipodal sets through the origin")
    if not space.is_antipodal_set(X):
        raise NotAntipodal("X is not antipodal")
    th = space.theta
    quotient = len(space.group.center_kernel()) > 1
    if not quotient:
        if th.antilinear:
            cert = _certify_outer(space, X, pool)
        elif space.group.kind == QUAT:
            cert = _certify_quaternion(space, X, pool)
        else:
            cert = _certify_inner(space, X, pool)
        if cert is not None:
            return cert
    return _pool_fallback(space, X, pool, note="no exact certificate for this case")


def _pool_fallback(space, X, pool, note="", commutant_dim=None):
    if pool is None:
        return MaximalityCertificate(POOL_MAXIMAL, None, commutant_dim, note + "; no pool given")
    i = pool_extension(pool, X)
    if i is None:
        return MaximalityCertificate(POOL_MAXIMAL, None, commutant_dim, note)
    return MaximalityCertificate(NOT_MAXIMAL, pool.points[i], commutant_dim, note + "; pool witness")


def _witness_cert(space, X, pool, phi_new, lines, commutant_dim, note):
    w = _realize(space, pool, phi_new, lines)
    if w is not None:
        Y = space.make_set(list(X.points) + [w], check=False)
        assert len(Y) == len(X) + 1 and space.is_antipodal_set(Y)
        return MaximalityCertificate(NOT_MAXIMAL, w, commutant_dim, note)
    cert = _pool_fallback(space, X, pool, note + "; extension exists but was not realized",
                          commutant_dim)
    return cert


def _certify_inner(space: SpaceModel, X: AntipodalSet, pool):
    th = space.theta
    G = space.group
    C = th.C
    phis = [space.cartan_phi(x) for x in X.points]
    keys = {canonical_rep(G, f) for f in phis}
    Ms = [f @ C for f in phis]
    spaces = joint_eigenspaces(Ms)
    dims = [len(s) for s in spaces]
    commutant_dim = sum(d * d for d in dims)
    c2 = th.C_square()
    roots = _roots_of_unity_sqrt(c2)
    if all(d == 1 for d in dims):
        lines = [s[0] for s in spaces]
        refined = False
    else:
        lines = []
        for s in spaces:
            lines.extend(_gram_schmidt(s))
        refined = True
    Cinv = th.Cinv
    for Mp in _torus_candidates(lines, roots):
        f = Mp.lift(lcm(Mp.N, Cinv.N)) @ Cinv.lift(lcm(Mp.N, Cinv.N))
        if f.is_zero() or not contains(G, _to_conductor(f, G)):
            continue
        f = _to_conductor(f, G)
        t = space.ext.make(f, 1)
        if not space.ext.is_involution(t) or not space.ext.in_class_of_thetabar(t):
            continue
        if not _new_candidate(space, X, keys, f):
            continue
        return _witness_cert(space, X, pool, f, lines, commutant_dim,
                             "refined eigenspace split" if refined else "torus candidate")
    if refined:
        return _pool_fallback(space, X, pool, "higher-dimensional common eigenspace", commutant_dim)
    return MaximalityCertificate(CERTIFIED, None, commutant_dim, "all common eigenspaces are lines")


def _to_conductor(f: Matrix, G) -> Matrix:
    # drop to the group's conductor when the entries allow it
    if f.kind != CYC or f.N == G.conductor:
        return f
    rows = []
    for r in f.rows:
        row = []
        for x in r:
            d, coeffs = x.sort_key()
            if G.conductor % d:
                return f
            row.append(Cyc.from_coeffs(d, coeffs).lift(G.conductor) if d > 1
                       else Cyc.rational(coeffs[0], G.conductor))
        rows.append(row)
    return Matrix(rows, CYC, G.conductor)


def _diag_subalgebras(basis, n):
    """For a commutant made of diagonal matrices: per position, a Q-basis of the entries."""
    per = []
    for k in range(n):
        vecs = [Y.rows[k][k].parts for Y in basis]
        rows = [list(v) for v in vecs if any(v)]
        sub = _q_row_basis(rows)
        per.append([Quat(*v) for v in sub])
    return per


def _q_row_basis(rows):
    out = []
    for r in rows:
        cand = [Fraction(x) for x in r]
        for b, piv in out:
            if cand[piv]:
                f = cand[piv] / b[piv]
                cand = [x - f * y for x, y in zip(cand, b)]
        nz = next((i for i, x in enumerate(cand) if x), None)
        if nz is not None:
            out.append((cand, nz))
    return [b for b, _ in out]


def _certify_quaternion(space: SpaceModel, X: AntipodalSet, pool):
    th = space.theta
    G = space.group
    n = G.n
    phis = [space.cartan_phi(x) for x in X.points]
    keys = {canonical_rep(G, f) for f in phis}
    Ms = [f @ th.C for f in phis]
    basis = commutant_basis(Ms, n=n, kind=QUAT)
    cdim = len(basis)
    if not all(Y.is_diagonal() for Y in basis):
        return _pool_fallback(space, X, pool, "quaternionic commutant is not diagonal", cdim)
    c2 = th.C_square()
    per = _diag_subalgebras(basis, n)
    choices = []
    for k in range(n):
        if c2 == 1:
            choices.append([Quat(1), Quat(-1)])
            continue
        alg = per[k]
        if len(alg) != 2:
            return _pool_fallback(space, X, pool, "quaternionic commutant entry is not a field", cdim)
        pure = [Quat(0, *q.parts[1:]) for q in alg]
        w = next(p for p in pure if not p.is_zero())
        s = _rational_sqrt(w.norm())
        if s is None:
            return _pool_fallback(space, X, pool, "unit direction is irrational", cdim)
        u = w / s
        choices.append([u, -u])
    found = None

    def rec(k, acc):
        nonlocal found
        if found is not None:
            return
        if k == n:
            Mp = diag(acc, QUAT)
            f = Mp @ th.Cinv
            t = space.ext.make(f, 1)
            if space.ext.is_involution(t) and space.ext.in_class_of_thetabar(t) \
                    and _new_candidate(space, X, keys, f):
                found = f
            return
        for u in choices[k]:
            rec(k + 1, acc + [u])
    rec(0, [])
    if found is None:
        return MaximalityCertificate(CERTIFIED, None, cdim, "diagonal quaternionic commutant")
    return _witness_cert(space, X, pool, found, None, cdim, "diagonal torus candidate")


def _certify_outer(space: SpaceModel, X: AntipodalSet, pool):
    th = space.theta
    G = space.group
    n = G.n
    if G.conductor != 4:
        return None
    phis = [space.cartan_phi(x) for x in X.points]
    keys = {canonical_rep(G, f) for f in phis}
    Ns = [f @ th.C for f in phis]
    T = commutant_basis(Ns[1:], n=n, antilinear_twist=Ns[0], kind=CYC, N=4)
    tdim = len(T)
    if not all(Y.is_diagonal() for Y in T):
        return _pool_fallback(space, X, pool, "twisted commutant is not diagonal", tdim)
    dirs = []
    for k in range(n):
        ents = [Y.rows[k][k] for Y in T if not Y.rows[k][k].is_zero()]
        if len(ents) != 1:
            return _pool_fallback(space, X, pool, "twisted commutant entry is not a line", tdim)
        u = ents[0]
        r = (u * u.conj())
        s = _rational_sqrt(r.to_fraction()) if r.is_rational() else None
        if s is None:
            return _pool_fallback(space, X, pool, "unit direction is irrational", tdim)
        dirs.append(u * Fraction(1, 1) / s)
    found = None

    def rec(k, acc):
        nonlocal found
        if found is not None:
            return
        if k == n:
            Np = diag(acc, CYC, 4)
            f = Np @ th.Cinv
            if not contains(G, f):
                return
            t = space.ext.make(f, 1)
            if space.ext.is_involution(t) and space.ext.in_class_of_thetabar(t) \
                    and _new_candidate(space, X, keys, f):
                found = f
            return
        for u in (dirs[k], -dirs[k]):
            rec(k + 1, acc + [u])
    rec(0, [])
    if found is None:
        return MaximalityCertificate(CERTIFIED, None, tdim, "diagonal twisted commutant")
    return _witness_cert(space, X, pool, found, None, tdim, "twisted torus candidate")


# -- exhaustive searches --------------------------------------------------------------------------------

def bron_kerbosch(vertices, adj):
    """All maximal cliques (as sorted tuples) of the graph given by adj(i, j)."""
    nbr = {v: {u for u in vertices if u != v and adj(u, v)} for v in vertices}
    out = []

    def rec(R, P, Xs):
        if not P and not Xs:
            out.append(tuple(sorted(R)))
            return
        pivot = max(P | Xs, key=lambda u: len(nbr[u] & P))
        for v in sorted(P - nbr[pivot]):
            rec(R | {v}, P & nbr[v], Xs & nbr[v])
            P = P - {v}
            Xs = Xs | {v}
    rec(set(), set(vertices), set())
    return sorted(out)


def maximal_sets_through_origin(pool: SearchPool):
    o = pool.origin_index
    nb = [i for i in range(len(pool)) if i != o and pool.adjacent(i, o)]
    cliques = bron_kerbosch(nb, pool.adjacent) if nb else [()]
    return [tuple(sorted((o,) + c)) for c in cliques]


def brute_force_max(pool: SearchPool, max_size: int = 6):
    """Largest antipodal subset of the pool of size <= max_size, by exhaustive enumeration.

    Antipodality is a pairwise condition, so every subset is reached by the depth-first
    enumeration below; pruning only discards subsets containing a failing pair.
    """
    n = len(pool)
    best: tuple = ()
    count = 0

    def rec(start, cur):
        nonlocal best, count
        count += 1
        if len(cur) > len(best):
            best = tuple(cur)
        if len(cur) == max_size:
            return
        for i in range(start, n):
            if all(pool.adjacent(i, j) for j in cur):
                cur.append(i)
                rec(i + 1, cur)
                cur.pop()
    rec(0, [])
    return len(best), best, count


# -- translation classes ------------------------------------------------------------------------------

def translator_perms(pool: SearchPool, use_bridges: bool = True):
    perms = [pool.perm(g) for g in pool.generators]
    if pool.space.group_form:
        # M = G carries the isometries x -> g x h; right factors are needed for conjugacy
        perms += [pool.perm(g, right=True) for g in pool.generators]
    if use_bridges:
        for b in pool.bridges:
            for t in (b, b.adjoint()):
                perms.append(pool.perm(t, partial=True))
                if pool.space.group_form:
                    perms.append(pool.perm(t, partial=True, right=True))
    return perms


def _apply(perm, S):
    out = []
    for i in S:
        j = perm[i]
        if j is None:
            return None
        out.append(j)
    return frozenset(out)


def enumerate_maximal_classes(space: SpaceModel, pool: SearchPool, use_bridges: bool = True,
                              orbit_cap: int = 2000000):
    """Pool-maximal sets through the origin, up to translations by pool elements."""
    sets = [frozenset(s) for s in maximal_sets_through_origin(pool)]
    perms = translator_perms(pool, use_bridges)
    o = pool.origin_index
    remaining = set(sets)
    classes = []
    for S in sets:
        if S not in remaining:
            continue
        orbit = {S}
        frontier = [S]
        while frontier:
            nxt = []
            for T in frontier:
                for p in perms:
                    U = _apply(p, T)
                    if U is not None and U not in orbit:
                        orbit.add(U)
                        nxt.append(U)
                        if len(orbit) > orbit_cap:
                            raise PoolLimit("translation orbit too large")
            frontier = nxt
        members = [T for T in orbit if o in T]
        remaining -= set(members)
        classes.append(pool.subset(S))
    return classes


# -- Weyl groups --------------------------------------------------------------------------------------

@dataclass
class WeylResult:
    order: int
    origin_isotropy_order: int
    generators: list          # permutations of X's points, as tuples
    matrices: list            # group elements realizing the generators
    points: list


def _compose(p, q):
    # (p o q)(i) = p[q[i]]
    return tuple(p[i] for i in q)


def weyl_pool(space: SpaceModel, X: AntipodalSet, pool: SearchPool, max_orbit: int = 500000
              ) -> WeylResult:
    from sympy.combinatorics import Permutation, PermutationGroup

    idx = pool.indices(X)
    if idx is None or not is_pool_maximal(pool, X):
        raise NotMaximal("Weyl group needs a pool-maximal set inside the pool")
    start = frozenset(idx)
    gens = pool.generators
    perms = [pool.perm(g) for g in gens]
    # orbit with transversal words
    words = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for T in frontier:
            for a, p in enumerate(perms):
                U = frozenset(p[i] for i in T)
                if U not in words:
                    words[U] = words[T] + (a,)
                    nxt.append(U)
                    if len(words) > max_orbit:
                        raise PoolLimit("set orbit too large for the Weyl computation")
        frontier = nxt
    n = len(pool)
    ident = tuple(range(n))

    def word_perm(w):
        out = ident
        for a in w:
            out = _compose(perms[a], out)
        return out

    def inverse(p):
        inv = [0] * len(p)
        for i, j in enumerate(p):
            inv[j] = i
        return tuple(inv)

    pos = {i: k for k, i in enumerate(idx)}
    seen = {}
    tcache = {}
    for T, w in words.items():
        if T not in tcache:
            tcache[T] = word_perm(w)
        tT = tcache[T]
        for a, p in enumerate(perms):
            U = frozenset(p[i] for i in T)
            if U not in tcache:
                tcache[U] = word_perm(words[U])
            s = _compose(inverse(tcache[U]), _compose(p, tT))
            restr = tuple(pos[s[i]] for i in idx)
            if restr not in seen and restr != tuple(range(len(idx))):
                seen[restr] = words[T] + (a,) + tuple(("inv", b) for b in reversed(words[U]))
    gens_perm = sorted(seen)
    mats = []
    for r in gens_perm:
        g = space.group.identity()
        for step in seen[r]:
            if isinstance(step, tuple):
                g = gens[step[1]].adjoint() @ g
            else:
                g = gens[step] @ g
        for k, i in enumerate(idx):
            y = space.translate(g, pool.points[i])
            assert space.key(y) == pool.keys[idx[r[k]]]
        mats.append(g)
    if gens_perm:
        PG = PermutationGroup([Permutation(list(r)) for r in gens_perm])
        order = int(PG.order())
        iso = int(PG.stabilizer(0).order())
    else:
        order, iso = 1, 1
    return WeylResult(order, iso, gens_perm, mats, [pool.points[i] for i in idx])
