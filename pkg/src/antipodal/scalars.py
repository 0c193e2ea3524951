"""Exact scalars: elements of cyclotomic fields Q(zeta_N) and rational quaternions.

Cyclotomic numbers are stored in the power basis 1, z, ..., z^(d-1) of
Q[x]/Phi_N(x) with d = phi(N), as an integer numerator vector over a common
positive denominator.  The vector is always fully reduced modulo Phi_N, so
two numbers of the same conductor are equal iff their stored data agree.
Numbers of different conductors are lifted to the lcm before they meet.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import ConductorLimit, DivisionByZero

_conductor_limit = 64


def set_conductor_limit(limit: int) -> None:
    global _conductor_limit
    _conductor_limit = int(limit)


def conductor_limit() -> int:
    return _conductor_limit


def _check_conductor(N: int) -> None:
    if N > _conductor_limit:
        raise ConductorLimit(f"conductor {N} exceeds limit {_conductor_limit}")


# -- cyclotomic polynomials -------------------------------------------------

def _polydiv_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        for j, dj in enumerate(den):
            num[k + j] -= c * dj
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_N, lowest degree first."""
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _polydiv_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _degree(N: int) -> int:
    return len(cyclotomic_polynomial(N)) - 1


@lru_cache(maxsize=None)
def _power_table(N: int) -> tuple[tuple[int, ...], ...]:
    # reduced coefficient vectors of x^k mod Phi_N, k = 0 .. 2N-1
    phi = cyclotomic_polynomial(N)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(2 * N):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(d):
                cur[j] -= top * phi[j]
    return tuple(rows)


def _normalize(num, den):
    if den < 0:
        num = [-a for a in num]
        den = -den
    g = den
    for a in num:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if not any(num):
        return tuple(0 for _ in num), 1
    if g != 1:
        num = [a // g for a in num]
        den //= g
    return tuple(num), den


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as a rational")


# -- lifting and subfield detection ------------------------------------------

@lru_cache(maxsize=None)
def _lift_images(N: int, M: int) -> tuple[tuple[int, ...], ...]:
    # image of z_N^j in Q(z_M), j < deg(N)
    tab = _power_table(M)
    step = M // N
    return tuple(tab[(j * step) % M] for j in range(_degree(N)))


@lru_cache(maxsize=None)
def _subfield_solver(d: int, N: int):
    """Pivot rows and inverse for recovering Q(z_d) coordinates of a lifted vector."""
    cols = _lift_images(d, N)
    k = len(cols)
    n = _degree(N)
    # choose k independent rows of the n x k lift matrix
    mat = [[Fraction(cols[j][i]) for j in range(k)] for i in range(n)]
    pivots = []
    work = []
    for i in range(n):
        row = list(mat[i])
        for prow, pcol in work:
            f = row[pcol]
            if f:
                row = [a - f * b for a, b in zip(row, prow)]
        nz = next((c for c, a in enumerate(row) if a), None)
        if nz is None:
            continue
        inv = 1 / row[nz]
        row = [a * inv for a in row]
        work = [(
            [a - prow[nz] * b for a, b in zip(prow, row)] if prow[nz] else prow, pcol)
            for prow, pcol in work]
        work.append((row, nz))
        pivots.append(i)
        if len(pivots) == k:
            break
    sub = [[mat[i][j] for j in range(k)] for i in pivots]
    return tuple(pivots), _invert_rational(sub)


def _invert_rational(a):
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def _divisors(N):
    return [d for d in range(1, N + 1) if N % d == 0]


@lru_cache(maxsize=1 << 16)
def _minimal_form(N: int, num: tuple[int, ...], den: int):
    """(d, coeffs) with d the least conductor whose field contains the number."""
    if not any(num[1:]):
        return 1, (Fraction(num[0], den),)
    for d in _divisors(N):
        if d == 1 or d % 4 == 2 or d == N:
            continue
        pivots, inv = _subfield_solver(d, N)
        rhs = [Fraction(num[i], den) for i in pivots]
        coeffs = [sum(r * x for r, x in zip(row, rhs)) for row in inv]
        images = _lift_images(d, N)
        back = [sum(c * images[j][i] for j, c in enumerate(coeffs)) for i in range(len(num))]
        if all(b == Fraction(a, den) for a, b in zip(num, back)):
            return d, tuple(coeffs)
    return N, tuple(Fraction(a, den) for a in num)


@lru_cache(maxsize=1 << 16)
def _inverse_nums(N: int, num: tuple[int, ...], den: int):
    # solve a * y = 1 through the multiplication matrix of a
    d = len(num)
    tab = _power_table(N)
    cols = []
    for j in range(d):
        col = [0] * d
        for i, a in enumerate(num):
            if a:
                v = tab[i + j]
                for t in range(d):
                    if v[t]:
                        col[t] += a * v[t]
        cols.append(col)
    mat = [[Fraction(cols[j][i], den) for j in range(d)] for i in range(d)]
    inv = _invert_rational(mat)
    y = [row[0] for row in inv]
    common = lcm(*(f.denominator for f in y))
    return _normalize([int(f * common) for f in y], common)


# -- cyclotomic numbers --------------------------------------------------------

class Cyc:
    """An element of Q(zeta_N), immutable and hashable."""

    __slots__ = ("N", "num", "den", "_hash")

    def __init__(self, N: int, num, den: int = 1, _normalized: bool = False):
        _check_conductor(N)
        self.N = N
        if _normalized:
            self.num, self.den = num, den
        else:
            num = list(num)
            d = _degree(N)
            if len(num) > d:
                num = _reduce_long(N, num)
            elif len(num) < d:
                num = num + [0] * (d - len(num))
            self.num, self.den = _normalize(num, den)
        self._hash = None

    # constructors
    @classmethod
    def rational(cls, q, N: int = 1) -> "Cyc":
        q = _as_fraction(q)
        num = [0] * _degree(N)
        num[0] = q.numerator
        return cls(N, tuple(num), q.denominator, _normalized=True)

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "Cyc":
        return cls(N, _power_table(N)[k % N], 1, _normalized=True)

    @classmethod
    def from_coeffs(cls, N: int, coeffs) -> "Cyc":
        fr = [_as_fraction(c) for c in coeffs]
        common = lcm(*(f.denominator for f in fr)) if fr else 1
        return cls(N, [int(f * common) for f in fr], common)

    # structure
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def lift(self, M: int) -> "Cyc":
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"cannot lift conductor {self.N} to {M}")
        _check_conductor(M)
        images = _lift_images(self.N, M)
        out = [0] * _degree(M)
        for a, img in zip(self.num, images):
            if a:
                for t, v in enumerate(img):
                    if v:
                        out[t] += a * v
        return Cyc(M, tuple(out), self.den, _normalized=True) if _is_reduced(out, self.den) \
            else Cyc(M, out, self.den)

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.N == self.N:
                return self, other
            M = lcm(self.N, other.N)
            return self.lift(M), other.lift(M)
        if isinstance(other, (int, Fraction)):
            return self, Cyc.rational(other, self.N)
        return None

    # arithmetic
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.den == b.den:
            return Cyc(a.N, [x + y for x, y in zip(a.num, b.num)], a.den)
        return Cyc(a.N, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.N, tuple(-x for x in self.num), self.den, _normalized=True)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyc(a.N, _mul_nums(a.N, a.num, b.num), a.den * b.den)

    __rmul__ = __mul__

    def inv(self) -> "Cyc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        num, den = _inverse_nums(self.N, self.num, self.den)
        return Cyc(self.N, num, den, _normalized=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * Fraction(1) / other if False else self * (Fraction(1) / other)
        if isinstance(other, Cyc):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inv() * other

    def conj(self) -> "Cyc":
        """Complex conjugation z -> z^-1."""
        N = self.N
        tab = _power_table(N)
        out = [0] * len(self.num)
        for k, a in enumerate(self.num):
            if a:
                v = tab[(-k) % N]
                for t in range(len(out)):
                    if v[t]:
                        out[t] += a * v[t]
        return Cyc(N, tuple(out), self.den, _normalized=True)

    def galois(self, k: int) -> "Cyc":
        """Apply the automorphism z -> z^k (k coprime to N)."""
        N = self.N
        tab = _power_table(N)
        out = [0] * len(self.num)
        for j, a in enumerate(self.num):
            if a:
                v = tab[(j * k) % N]
                for t in range(len(out)):
                    if v[t]:
                        out[t] += a * v[t]
        return Cyc(N, tuple(out), self.den, _normalized=True)

    # comparison
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, Cyc):
            return NotImplemented
        if self.N == other.N:
            return self.den == other.den and self.num == other.num
        a, b = self._coerce(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_rational():
                h = hash(Fraction(self.num[0], self.den))
            else:
                h = hash(_minimal_form(self.N, self.num, self.den))
            self._hash = h
        return h

    def sort_key(self):
        # conductor independent: minimal field first, then coordinates there
        return _minimal_form(self.N, self.num, self.den)

    def __repr__(self):
        return f"Cyc({self})"

    def __str__(self):
        if self.is_rational():
            return str(Fraction(self.num[0], self.den))
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = f"z{self.N}" if k == 1 else f"z{self.N}^{k}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _is_reduced(num, den):
    return den > 0 and (den == 1 or gcd(den, *num) == 1)


def _reduce_long(N, num):
    tab = _power_table(N)
    d = _degree(N)
    out = [0] * d
    for k, a in enumerate(num):
        if a:
            v = tab[k % N] if k >= 2 * N else tab[k]
            for t in range(d):
                if v[t]:
                    out[t] += a * v[t]
    return out


def _mul_nums(N, a, b):
    d = len(a)
    tab = _power_table(N)
    out = [0] * d
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            k = i + j
            p = x * y
            if k < d:
                out[k] += p
            else:
                v = tab[k]
                for t in range(d):
                    if v[t]:
                        out[t] += p * v[t]
    return out


def zeta(N: int, k: int = 1) -> Cyc:
    return Cyc.zeta(N, k)


# -- quaternions ------------------------------------------------------------------

class Quat:
    """Rational quaternion a + b i + c j + d k."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0, *, _raw=None):
        if _raw is not None:
            self.num, self.den = _raw
        else:
            fr = [_as_fraction(x) for x in (a, b, c, d)]
            common = lcm(*(f.denominator for f in fr))
            self.num, self.den = _normalize([int(f * common) for f in fr], common)
        self._hash = None

    @classmethod
    def _make(cls, num, den):
        return cls(_raw=_normalize(num, den))

    @property
    def parts(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_real(self) -> bool:
        return not any(self.num[1:])

    def _coerce(self, other):
        if isinstance(other, Quat):
            return other
        if isinstance(other, (int, Fraction)):
            return Quat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quat._make([x * o.den + y * self.den for x, y in zip(self.num, o.num)],
                          self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Quat(_raw=(tuple(-x for x in self.num), self.den))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self.num
        a2, b2, c2, d2 = o.num
        return Quat._make([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ], self.den * o.den)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def conj(self) -> "Quat":
        a, b, c, d = self.num
        return Quat(_raw=((a, -b, -c, -d), self.den))

    def norm(self) -> Fraction:
        return Fraction(sum(x * x for x in self.num), self.den * self.den)

    def inv(self) -> "Quat":
        if self.is_zero():
            raise DivisionByZero("inverse of zero quaternion")
        n = sum(x * x for x in self.num)
        a, b, c, d = self.num
        # (num/den)^-1 = conj(num) * den / |num|^2
        return Quat._make([a * self.den, -b * self.den, -c * self.den, -d * self.den], n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (Fraction(1) / other)
        if isinstance(other, Quat):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inv() * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_real() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, Quat):
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(Fraction(self.num[0], self.den)) if self.is_real() \
                else hash(("q", self.num, self.den))
        return self._hash

    def sort_key(self):
        return self.parts

    def __repr__(self):
        return f"Quat({self})"

    def __str__(self):
        labels = ("", "i", "j", "k")
        terms = []
        for lab, c in zip(labels, self.parts):
            if c:
                if lab and abs(c) == 1:
                    terms.append(("-" if c < 0 else "") + lab)
                else:
                    terms.append(f"{c}{'*' + lab if lab else ''}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


QI = Quat(0, 1, 0, 0)
QJ = Quat(0, 0, 1, 0)
QK = Quat(0, 0, 0, 1)


def scalar_arith(op: str, a, b=None):
    """Dispatch form of the scalar operations: add, mul, inv, conj."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "conj":
        return a.conj()
    raise ValueError(f"unknown scalar op {op!r}")
