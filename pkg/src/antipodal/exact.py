"""Exact matrices over Q(zeta_N) or the rational quaternions, and the linear algebra
the rest of the package needs: products, adjoints, Bareiss determinants and ranks,
nullspaces, involution signatures, Pfaffians and commutants.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import DivisionByZero, NotAnInvolution, ShapeError, UnsupportedScalarKind
from .scalars import Cyc, Quat, zeta

CYC = "cyc"
QUAT = "quat"


def _kind_of(x) -> str:
    if isinstance(x, Quat):
        return QUAT
    if isinstance(x, Cyc):
        return CYC
    raise UnsupportedScalarKind(f"not an exact scalar: {x!r}")


def scalar(x, kind=CYC, N: int = 1):
    """Coerce ints, Fractions and 'a/b' strings into an exact scalar of the given kind."""
    if isinstance(x, (Cyc, Quat)):
        if kind == CYC and isinstance(x, Cyc) and x.N != N and N % x.N == 0:
            return x.lift(N)
        return x
    if kind == QUAT:
        return Quat(x)
    return Cyc.rational(x, N)


class Matrix:
    """Square-or-rectangular matrix of exact scalars of one kind. Immutable."""

    __slots__ = ("rows", "kind", "N", "_hash")

    def __init__(self, rows, kind=None, N=None):
        rows = [list(r) for r in rows]
        if not rows:
            raise ShapeError("empty matrix")
        w = len(rows[0])
        if any(len(r) != w for r in rows):
            raise ShapeError("ragged rows")
        if kind is None:
            kind = QUAT if any(isinstance(x, Quat) for r in rows for x in r) else CYC
        if kind == CYC:
            if N is None:
                N = 1
                for r in rows:
                    for x in r:
                        if isinstance(x, Cyc):
                            N = lcm(N, x.N)
                        elif isinstance(x, Quat):
                            raise UnsupportedScalarKind("matrix mixes scalar kinds")
            rows = [[scalar(x, CYC, N) for x in r] for r in rows]
        else:
            for r in rows:
                for x in r:
                    if isinstance(x, Cyc):
                        raise UnsupportedScalarKind("matrix mixes scalar kinds")
            rows = [[scalar(x, QUAT) for x in r] for r in rows]
            N = 0
        self.rows = tuple(tuple(r) for r in rows)
        self.kind = kind
        self.N = N
        self._hash = None

    @classmethod
    def _raw(cls, rows, kind, N):
        m = object.__new__(cls)
        m.rows, m.kind, m.N, m._hash = rows, kind, N, None
        return m

    # shape
    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    @property
    def n(self) -> int:
        r, c = self.shape
        if r != c:
            raise ShapeError(f"not square: {r}x{c}")
        return r

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def zero_scalar(self):
        return Quat(0) if self.kind == QUAT else Cyc.rational(0, self.N)

    def one_scalar(self):
        return Quat(1) if self.kind == QUAT else Cyc.rational(1, self.N)

    # arithmetic
    def _check_same(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other)}")
        if self.kind != other.kind:
            raise UnsupportedScalarKind("matrix kinds differ")

    def _aligned(self, other):
        if self.kind == CYC and self.N != other.N:
            M = lcm(self.N, other.N)
            return self.lift(M), other.lift(M)
        return self, other

    def lift(self, M: int) -> "Matrix":
        if self.kind != CYC or M == self.N:
            return self
        return Matrix._raw(tuple(tuple(x.lift(M) for x in r) for r in self.rows), CYC, M)

    def __add__(self, other):
        self._check_same(other)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        a, b = self._aligned(other)
        return Matrix._raw(tuple(tuple(x + y for x, y in zip(ra, rb))
                                 for ra, rb in zip(a.rows, b.rows)), a.kind, a.N)

    def __neg__(self):
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self.rows), self.kind, self.N)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        self._check_same(other)
        if self.shape[1] != other.shape[0]:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self._aligned(other)
        zero = a.zero_scalar()
        cols = b.shape[1]
        brows = [[(j, x) for j, x in enumerate(r) if not x.is_zero()] for r in b.rows]
        out = []
        for r in a.rows:
            acc = [None] * cols
            for k, x in enumerate(r):
                if x.is_zero():
                    continue
                for j, y in brows[k]:
                    p = x * y
                    acc[j] = p if acc[j] is None else acc[j] + p
            out.append(tuple(zero if v is None else v for v in acc))
        return Matrix._raw(tuple(out), a.kind, a.N)

    def scale(self, s) -> "Matrix":
        """Left scalar multiple s*A."""
        s = scalar(s, self.kind, self.N)
        if self.kind == CYC and s.N != self.N:
            A = self.lift(lcm(s.N, self.N))
            s = s.lift(A.N)
        else:
            A = self
        return Matrix._raw(tuple(tuple(s * x for x in r) for r in A.rows), A.kind, A.N)

    def rscale(self, s) -> "Matrix":
        """Right scalar multiple A*s (differs from scale for quaternions)."""
        if self.kind == CYC:
            return self.scale(s)
        s = scalar(s, QUAT)
        return Matrix._raw(tuple(tuple(x * s for x in r) for r in self.rows), QUAT, 0)

    def transpose(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows)), self.kind, self.N)

    def conj(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(x.conj() for x in r) for r in self.rows), self.kind, self.N)

    def adjoint(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*[[x.conj() for x in r] for r in self.rows])),
                           self.kind, self.N)

    H = property(adjoint)

    def is_unitary(self) -> bool:
        return (self @ self.adjoint()).is_identity()

    def inv_unitary(self) -> "Matrix":
        """Inverse of a unitary matrix (its adjoint); checked."""
        a = self.adjoint()
        if not (self @ a).is_identity():
            raise ShapeError("matrix is not unitary")
        return a

    def inverse(self) -> "Matrix":
        return inverse(self)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = identity(self.n, self.kind, self.N)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    # predicates
    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def is_identity(self) -> bool:
        n = len(self.rows)
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if i == j:
                    if not x == 1:
                        return False
                elif not x.is_zero():
                    return False
        return len(self.rows[0]) == n

    def scalar_value(self):
        """s if the matrix is s*I, else None."""
        s = self.rows[0][0]
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if i == j:
                    if x != s:
                        return None
                elif not x.is_zero():
                    return None
        return s

    def is_diagonal(self) -> bool:
        return all(x.is_zero() for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def is_monomial(self) -> bool:
        cols = set()
        for r in self.rows:
            nz = [j for j, x in enumerate(r) if not x.is_zero()]
            if len(nz) != 1:
                return False
            cols.add(nz[0])
        return len(cols) == len(self.rows)

    def is_real(self) -> bool:
        if self.kind == QUAT:
            return all(x.is_real() for r in self.rows for x in r)
        return all(x == x.conj() for r in self.rows for x in r)

    def is_rational(self) -> bool:
        if self.kind == QUAT:
            return self.is_real()
        return all(x.is_rational() for r in self.rows for x in r)

    def commutes(self, other) -> bool:
        return self @ other == other @ self

    # equality, hashing, ordering
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.kind != other.kind or self.shape != other.shape:
            return False
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, self.rows))
        return self._hash

    def sort_key(self):
        return tuple(x.sort_key() for r in self.rows for x in r)

    def __repr__(self):
        return "Matrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]"
                                      for r in self.rows) + "])"

    def tolist(self):
        return [list(r) for r in self.rows]


# -- constructors --------------------------------------------------------------

def zeros(r: int, c: int | None = None, kind=CYC, N: int = 1) -> Matrix:
    c = r if c is None else c
    z = Quat(0) if kind == QUAT else Cyc.rational(0, N)
    return Matrix._raw(tuple(tuple(z for _ in range(c)) for _ in range(r)), kind, N if kind == CYC else 0)


def identity(n: int, kind=CYC, N: int = 1) -> Matrix:
    return diag([1] * n, kind, N)


def diag(entries, kind=None, N=None) -> Matrix:
    entries = list(entries)
    if kind is None:
        kind = QUAT if any(isinstance(x, Quat) for x in entries) else CYC
    if kind == CYC and N is None:
        N = 1
        for x in entries:
            if isinstance(x, Cyc):
                N = lcm(N, x.N)
    entries = [scalar(x, kind, N or 1) for x in entries]
    zero = Quat(0) if kind == QUAT else Cyc.rational(0, N or 1)
    n = len(entries)
    return Matrix([[entries[i] if i == j else zero for j in range(n)] for i in range(n)], kind, N)


def I_pq(p: int, q: int, kind=CYC, N: int = 1) -> Matrix:
    """diag(-I_p, I_q)."""
    return diag([-1] * p + [1] * q, kind, N)


def J(m: int, kind=CYC, N: int = 1) -> Matrix:
    """[[0, I_m], [-I_m, 0]]."""
    n = 2 * m
    rows = [[0] * n for _ in range(n)]
    for i in range(m):
        rows[i][m + i] = 1
        rows[m + i][i] = -1
    return Matrix(rows, kind, N if kind == CYC else None)


def block_diag(*blocks: Matrix) -> Matrix:
    kind = blocks[0].kind
    N = lcm(*(b.N for b in blocks)) if kind == CYC else 0
    n = sum(b.shape[0] for b in blocks)
    m = sum(b.shape[1] for b in blocks)
    rows = [[0] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.lift(N).rows if kind == CYC else b.rows):
            for j, x in enumerate(row):
                rows[r0 + i][c0 + j] = x
        r0 += b.shape[0]
        c0 += b.shape[1]
    return Matrix(rows, kind, N if kind == CYC else None)


def permutation_matrix(perm, kind=CYC, N: int = 1) -> Matrix:
    """Matrix sending e_j to e_perm[j]."""
    n = len(perm)
    rows = [[0] * n for _ in range(n)]
    for j, i in enumerate(perm):
        rows[i][j] = 1
    return Matrix(rows, kind, N if kind == CYC else None)


def mat_arith(op: str, A: Matrix, B: Matrix | None = None):
    if op == "mul":
        return A @ B
    if op == "adjoint":
        return A.adjoint()
    if op == "det":
        return det(A)
    raise ValueError(f"unknown matrix op {op!r}")


# -- elimination -----------------------------------------------------------------

def det(A: Matrix):
    """Bareiss fraction-free determinant over Q(zeta_N)."""
    if A.kind != CYC:
        raise UnsupportedScalarKind("determinant is undefined for quaternion matrices")
    n = A.n
    M = [list(r) for r in A.rows]
    sign = 1
    prev = Cyc.rational(1, A.N)
    for k in range(n - 1):
        if M[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if p is None:
                return Cyc.rational(0, A.N)
            M[k], M[p] = M[p], M[k]
            sign = -sign
        piv = M[k][k]
        pinv = prev.inv()
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                M[i][j] = (piv * M[i][j] - mik * M[k][j]) * pinv
            M[i][k] = Cyc.rational(0, A.N)
        prev = piv
    d = M[n - 1][n - 1]
    return d if sign > 0 else -d


def _rank_field(rows, N):
    # Bareiss-style elimination; rank only
    M = [list(r) for r in rows]
    if not M:
        return 0
    nr, nc = len(M), len(M[0])
    rank = 0
    prev = Cyc.rational(1, N)
    for c in range(nc):
        p = next((i for i in range(rank, nr) if not M[i][c].is_zero()), None)
        if p is None:
            continue
        M[rank], M[p] = M[p], M[rank]
        piv = M[rank][c]
        pinv = prev.inv()
        for i in range(rank + 1, nr):
            mic = M[i][c]
            if mic.is_zero():
                M[i] = [(piv * x) * pinv for x in M[i]]
                continue
            M[i] = [(piv * x - mic * y) * pinv for x, y in zip(M[i], M[rank])]
        prev = piv
        rank += 1
        if rank == nr:
            break
    return rank


def _rank_quat(rows):
    # plain elimination with left division; the skew field forbids Bareiss
    M = [list(r) for r in rows]
    if not M:
        return 0
    nr, nc = len(M), len(M[0])
    rank = 0
    for c in range(nc):
        p = next((i for i in range(rank, nr) if not M[i][c].is_zero()), None)
        if p is None:
            continue
        M[rank], M[p] = M[p], M[rank]
        pinv = M[rank][c].inv()
        for i in range(rank + 1, nr):
            if M[i][c].is_zero():
                continue
            f = M[i][c] * pinv
            M[i] = [x - f * y for x, y in zip(M[i], M[rank])]
        rank += 1
        if rank == nr:
            break
    return rank


def rank(A: Matrix) -> int:
    if A.kind == QUAT:
        return _rank_quat(A.rows)
    return _rank_field(A.rows, A.N)


def rref(rows, zero, one):
    """Reduced row echelon form over a commutative field. Returns (rows, pivot columns)."""
    M = [list(r) for r in rows]
    nr = len(M)
    nc = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if not M[i][c].is_zero()), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inv() if not M[r][c] == one else None
        if inv is not None:
            M[r] = [x * inv if not x.is_zero() else x for x in M[r]]
        for i in range(nr):
            if i != r and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [x - f * y if not y.is_zero() else x for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return M[:r], pivots


def nullspace_rows(rows, nc, zero, one):
    """Basis of {v : rows . v = 0} as a list of coefficient lists."""
    if not rows:
        return [[one if i == j else zero for i in range(nc)] for j in range(nc)]
    R, pivots = rref(rows, zero, one)
    free = [c for c in range(nc) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * nc
        v[f] = one
        for row, pc in zip(R, pivots):
            if not row[f].is_zero():
                v[pc] = -row[f]
        basis.append(v)
    return basis


def nullspace(A: Matrix) -> list[Matrix]:
    """Right nullspace of a cyclotomic matrix as column vectors."""
    if A.kind != CYC:
        raise UnsupportedScalarKind("nullspace over the quaternions: use realified_nullspace")
    zero, one = Cyc.rational(0, A.N), Cyc.rational(1, A.N)
    vecs = nullspace_rows(A.rows, A.shape[1], zero, one)
    return [Matrix._raw(tuple((x,) for x in v), CYC, A.N) for v in vecs]


def inverse(A: Matrix) -> Matrix:
    n = A.n
    if A.kind == QUAT:
        zero, one = Quat(0), Quat(1)
    else:
        zero, one = Cyc.rational(0, A.N), Cyc.rational(1, A.N)
    M = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(A.rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if not M[i][c].is_zero()), None)
        if p is None:
            raise DivisionByZero("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = M[c][c].inv()
        M[c] = [inv * x for x in M[c]]
        for i in range(n):
            if i != c and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return Matrix._raw(tuple(tuple(r[n:]) for r in M), A.kind, A.N)


# -- involutions, Pfaffians ---------------------------------------------------------

def involution_signature(B: Matrix) -> tuple[int, int]:
    """(p, q) with p the multiplicity of eigenvalue -1 of the involution B."""
    n = B.n
    if not (B @ B).is_identity():
        raise NotAnInvolution("B^2 != I")
    I = identity(n, B.kind, B.N)
    p = rank(I - B)
    return p, n - p


def pfaffian(A: Matrix):
    """Pfaffian of an antisymmetric cyclotomic matrix, by expansion along the first row."""
    if A.kind != CYC:
        raise UnsupportedScalarKind("Pfaffian needs a commutative field")
    n = A.n
    if n % 2:
        return Cyc.rational(0, A.N)
    return _pf(tuple(range(n)), A.rows, A.N, {})


def _pf(idx, rows, N, memo):
    if not idx:
        return Cyc.rational(1, N)
    if idx in memo:
        return memo[idx]
    i = idx[0]
    total = Cyc.rational(0, N)
    for k in range(1, len(idx)):
        j = idx[k]
        a = rows[i][j]
        if a.is_zero():
            continue
        rest = idx[1:k] + idx[k + 1:]
        term = a * _pf(rest, rows, N, memo)
        total = total + term if k % 2 == 1 else total - term
    memo[idx] = total
    return total


# -- realification over Q ------------------------------------------------------------

def _coords(x, kind, N):
    if kind == QUAT:
        return list(x.parts)
    return list(x.lift(N).coeffs) if x.N != N else list(x.coeffs)


def _basis_scalars(kind, N):
    if kind == QUAT:
        return [Quat(1), Quat(0, 1), Quat(0, 0, 1), Quat(0, 0, 0, 1)]
    d = len(Cyc.rational(0, N).num)
    return [zeta(N, k) for k in range(d)]


def _from_coords(coords, kind, N):
    if kind == QUAT:
        return Quat(*coords)
    return Cyc.from_coeffs(N, coords)


def realified_nullspace(linear_map, n_rows, n_cols, kind, N, out_shape=None):
    """Q-basis of the kernel of a Q-linear map on n_rows x n_cols matrices.

    linear_map takes a Matrix and returns a Matrix (or a list of them).
    The map is evaluated on the Q-basis E_ij * b of the matrix space.
    """
    basis_sc = _basis_scalars(kind, N)
    d = len(basis_sc)
    zero = Quat(0) if kind == QUAT else Cyc.rational(0, N)
    columns = []
    inputs = []
    for i in range(n_rows):
        for j in range(n_cols):
            for b in basis_sc:
                rows = [[zero] * n_cols for _ in range(n_rows)]
                rows[i][j] = b
                E = Matrix._raw(tuple(tuple(r) for r in rows), kind, N if kind == CYC else 0)
                out = linear_map(E)
                if isinstance(out, Matrix):
                    out = [out]
                col = []
                for O in out:
                    for r in O.rows:
                        for x in r:
                            col.extend(_coords(x, kind, N if kind == CYC else 0))
                columns.append(col)
                inputs.append((i, j, len(inputs) % d))
    nvars = len(columns)
    neq = len(columns[0]) if columns else 0
    zq, oq = Cyc.rational(0), Cyc.rational(1)
    eqs = [[Cyc.rational(columns[v][e]) for v in range(nvars)] for e in range(neq)]
    eqs = [r for r in eqs if any(not x.is_zero() for x in r)]
    sol = nullspace_rows(eqs, nvars, zq, oq)
    out = []
    for v in sol:
        rows = [[None] * n_cols for _ in range(n_rows)]
        for i in range(n_rows):
            for j in range(n_cols):
                base = (i * n_cols + j) * d
                coords = [v[base + t].to_fraction() for t in range(d)]
                if kind == QUAT:
                    rows[i][j] = Quat(*coords)
                else:
                    s = zero
                    for t, c in enumerate(coords):
                        if c:
                            s = s + basis_sc[t] * c
                    rows[i][j] = s
        out.append(Matrix._raw(tuple(tuple(r) for r in rows), kind, N if kind == CYC else 0))
    return out


def commutant_basis(S, n: int | None = None, antilinear_twist: Matrix | None = None,
                    kind=None, N=None):
    """Exact basis of {Y : YA = AY for all A in S}.

    Over Q(zeta_N) the system is solved directly and the basis spans the commutant as
    a Q(zeta_N)-space.  For quaternion matrices, or when antilinear_twist is given, the
    system Y conj(A) = A conj(Y) is solved over Q after realification and the basis
    spans the commutant as a Q-space.  antilinear_twist marks the twisted problem; its
    value is the matrix appended to S (typically the conjugator of theta).
    """
    S = list(S)
    if antilinear_twist is not None:
        S = S + [antilinear_twist]
    if n is None:
        if not S:
            raise ShapeError("dimension needed when S is empty")
        n = S[0].n
    if kind is None:
        kind = S[0].kind if S else CYC
    if N is None:
        N = lcm(*(A.N for A in S)) if S and kind == CYC else (1 if kind == CYC else 0)
    for A in S:
        if A.n != n or A.kind != kind:
            raise ShapeError("commutant inputs disagree in shape or kind")
    S = [A.lift(N) for A in S] if kind == CYC else S
    if antilinear_twist is not None:
        conjS = [A.conj() for A in S]

        def twisted(Y):
            return [Y @ cA - A @ Y.conj() for A, cA in zip(S, conjS)]
        return realified_nullspace(twisted, n, n, kind, N)
    if kind == QUAT:
        def comm(Y):
            return [Y @ A - A @ Y for A in S] or [Y.scale(0)]
        return realified_nullspace(comm, n, n, kind, 0)
    # field case: unknown vector y = vec(Y), row-major
    zero, one = Cyc.rational(0, N), Cyc.rational(1, N)
    eqs = []
    for A in S:
        a = A.rows
        # (YA - AY)_{ij} = sum_k Y_ik A_kj - A_ik Y_kj
        for i in range(n):
            for j in range(n):
                row = [zero] * (n * n)
                nz = False
                for k in range(n):
                    if not a[k][j].is_zero():
                        row[i * n + k] = row[i * n + k] + a[k][j]
                        nz = True
                    if not a[i][k].is_zero():
                        row[k * n + j] = row[k * n + j] - a[i][k]
                        nz = True
                if nz and any(not x.is_zero() for x in row):
                    eqs.append(row)
    sol = nullspace_rows(eqs, n * n, zero, one)
    return [Matrix._raw(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), CYC, N) for v in sol]
