"""Classical compact groups as exact matrix groups, their involutions theta, and the
extended group G x| <thetabar> with the class test for C_thetabar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .errors import NotAnInvolution, ShapeError, SpecMismatch
from .exact import (CYC, QUAT, Matrix, I_pq, J, det, diag, identity, involution_signature,
                    pfaffian)
from .scalars import Cyc, Quat, zeta

FAMILIES = ("SU", "SO", "Sp")
THETA_KINDS = ("AdIpq", "AdJn", "AdiI", "Tau", "TauPrime", "GroupForm")


@dataclass(frozen=True)
class GroupSpec:
    """family in SU, SO, Sp; n is the matrix size (quaternionic size for Sp).

    m is the order of the central quotient: for SU it divides n and the quotient is by
    <omega_m I>; for SO (even n) and Sp it is 1 or 2 (quotient by -I).
    """

    family: str
    n: int
    m: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SpecMismatch(f"unknown family {self.family!r}")
        if self.n < 1:
            raise SpecMismatch("degree must be positive")
        if self.m < 1:
            raise SpecMismatch("quotient order must be positive")
        if self.family == "SU" and self.n % self.m:
            raise SpecMismatch(f"m={self.m} must divide n={self.n}")
        if self.family in ("SO", "Sp") and self.m not in (1, 2):
            raise SpecMismatch("SO/Sp quotients are by -I only (m in {1, 2})")
        if self.family == "SO" and self.m == 2 and self.n % 2:
            raise SpecMismatch("-I is not in SO(n) for odd n")

    @property
    def kind(self) -> str:
        return QUAT if self.family == "Sp" else CYC

    @property
    def conductor(self) -> int:
        if self.family == "SU":
            return lcm(4, 2 * self.m)
        return 4 if self.family == "SO" else 0

    @property
    def label(self) -> str:
        fam = self.family
        if fam == "SO":
            fam = "SO_even" if self.n % 2 == 0 else "SO_odd"
        return fam

    def center_kernel(self) -> list:
        """Scalars z with zI identified with I in the group."""
        if self.family == "SU":
            N = self.conductor
            return [zeta(N, k * (N // self.m)) for k in range(self.m)]
        if self.m == 2:
            return [self.scalar(1), self.scalar(-1)]
        return [self.scalar(1)]

    def scalar(self, x):
        return Quat(x) if self.family == "Sp" else Cyc.rational(x, self.conductor)

    def identity(self) -> Matrix:
        return identity(self.n, self.kind, self.conductor)

    def to_json(self):
        return {"family": self.family, "n": self.n, "m": self.m}

    def __str__(self):
        q = f"/{self.m}" if self.m > 1 else ""
        return f"{self.family}({self.n}){q}"


def _check_shape(spec: GroupSpec, A: Matrix):
    if A.shape != (spec.n, spec.n):
        raise ShapeError(f"{spec} needs {spec.n}x{spec.n}, got {A.shape}")
    if A.kind != spec.kind:
        raise ShapeError(f"{spec} needs {spec.kind} entries")


def contains(spec: GroupSpec, A: Matrix) -> bool:
    _check_shape(spec, A)
    if not (A @ A.adjoint()).is_identity():
        return False
    if spec.family == "Sp":
        return True
    if spec.family == "SO" and not A.is_real():
        return False
    return det(A) == 1


def canonical_rep(spec: GroupSpec, A: Matrix) -> Matrix:
    """First element of {zA : z in the quotient kernel} in the lexicographic order where
    larger coefficient vectors come first, so the identity class is represented by I."""
    ks = spec.center_kernel()
    if len(ks) == 1:
        return A
    if A.kind == CYC and A.N % spec.conductor:
        A = A.lift(lcm(A.N, spec.conductor))
    return max((A.scale(z) for z in ks), key=Matrix.sort_key)


def same_element(spec: GroupSpec, A: Matrix, B: Matrix) -> bool:
    return any(A.scale(z) == B for z in spec.center_kernel())


@dataclass(frozen=True)
class InvolutionSpec:
    kind: str
    p: int = 0
    q: int = 0

    def __post_init__(self):
        if self.kind not in THETA_KINDS:
            raise SpecMismatch(f"unknown involution kind {self.kind!r}")

    @property
    def antilinear(self) -> bool:
        return self.kind in ("Tau", "TauPrime")

    def to_json(self):
        d = {"theta": self.kind}
        if self.kind == "AdIpq":
            d.update(p=self.p, q=self.q)
        return d


class Theta:
    """An involution bound to its group: holds the conjugator C."""

    def __init__(self, group: GroupSpec, inv: InvolutionSpec):
        self.group = group
        self.spec = inv
        self.C = self._conjugator()
        self.Cinv = self.C.adjoint() if self.C is not None else None
        if self.C is not None:
            self._check_involutive()

    def _conjugator(self):
        g, k = self.group, self.spec.kind
        n, N, kind = g.n, g.conductor, g.kind
        if k == "GroupForm":
            return None
        if k == "AdIpq":
            if self.spec.p + self.spec.q != n or self.spec.p < 0 or self.spec.q < 0:
                raise SpecMismatch(f"p+q must equal {n}")
            return I_pq(self.spec.p, self.spec.q, kind, N)
        if k == "AdJn":
            if g.family != "SO" or n % 2:
                raise SpecMismatch("Ad(J_n) is used on SO(2n)")
            return J(n // 2, kind, N)
        if k == "AdiI":
            if g.family != "Sp":
                raise SpecMismatch("Ad(iI) is used on Sp(n)")
            return diag([Quat(0, 1)] * n, QUAT)
        if k == "Tau":
            if g.family != "SU":
                raise SpecMismatch("tau is used on SU(n) and its quotients")
            return identity(n, CYC, N)
        if k == "TauPrime":
            if g.family != "SU" or n % 2:
                raise SpecMismatch("tau' is used on SU(2m)")
            return J(n // 2, CYC, N)
        raise SpecMismatch(k)

    def _check_involutive(self):
        C = self.C
        sq = C @ C.conj() if self.spec.antilinear else C @ C
        if sq.scalar_value() is None:
            raise NotAnInvolution("conjugator does not square to a central element")

    @property
    def antilinear(self) -> bool:
        return self.spec.antilinear

    @property
    def inner(self) -> bool:
        return not self.antilinear

    def C_square(self):
        """The central scalar C^2 (linear) or C conj(C) (antilinear)."""
        C = self.C
        return (C @ C.conj() if self.antilinear else C @ C).scalar_value()

    def __call__(self, A: Matrix) -> Matrix:
        if self.C is None:
            raise SpecMismatch("group form has no theta")
        B = A.conj() if self.antilinear else A
        out = self.C @ B @ self.Cinv
        return canonical_rep(self.group, out)

    def power(self, eps: int, A: Matrix) -> Matrix:
        return self(A) if eps else A


def theta_apply(theta: Theta, A: Matrix) -> Matrix:
    return theta(A)


@dataclass(frozen=True)
class ExtendedElement:
    """g * thetabar^outer in G x| <thetabar>; rep is canonical in the quotient."""

    rep: Matrix
    outer: int

    def key(self):
        return (self.rep, self.outer)


class ExtendedGroup:
    def __init__(self, theta: Theta):
        self.theta = theta
        self.group = theta.group

    def make(self, g: Matrix, outer: int) -> ExtendedElement:
        return ExtendedElement(canonical_rep(self.group, g), outer & 1)

    @property
    def identity(self) -> ExtendedElement:
        return self.make(self.group.identity(), 0)

    @property
    def thetabar(self) -> ExtendedElement:
        return self.make(self.group.identity(), 1)

    def mul(self, s: ExtendedElement, t: ExtendedElement) -> ExtendedElement:
        h = self.theta(t.rep) if s.outer else t.rep
        return self.make(s.rep @ h, s.outer ^ t.outer)

    def inv(self, s: ExtendedElement) -> ExtendedElement:
        gi = s.rep.adjoint()
        return self.make(self.theta(gi) if s.outer else gi, s.outer)

    def conjugate(self, h: ExtendedElement, t: ExtendedElement) -> ExtendedElement:
        return self.mul(self.mul(h, t), self.inv(h))

    def is_identity(self, s: ExtendedElement) -> bool:
        return s.outer == 0 and same_element(self.group, s.rep, self.group.identity())

    def eq(self, s: ExtendedElement, t: ExtendedElement) -> bool:
        return s.outer == t.outer and same_element(self.group, s.rep, t.rep)

    def is_involution(self, s: ExtendedElement) -> bool:
        return self.is_identity(self.mul(s, s))

    def commute(self, s: ExtendedElement, t: ExtendedElement) -> bool:
        return self.eq(self.mul(s, t), self.mul(t, s))

    # -- class of thetabar -------------------------------------------------------
    def _twisted(self, M: Matrix):
        for z in self.group.center_kernel():
            yield M.scale(z)

    def class_signature(self, t: ExtendedElement) -> dict:
        """Conjugation invariants of an involution t: the data compared by in_class."""
        if not self.is_involution(t):
            raise NotAnInvolution("class signature of a non-involution")
        sig = {"component": t.outer, "linear_signature": None, "antilinear_type": None,
               "center_orbit": []}
        th = self.theta
        if t.outer == 0:
            M = t.rep
            orbit = []
            for Mz in self._twisted(M):
                if (Mz @ Mz).is_identity():
                    orbit.append(involution_signature(Mz))
            sig["center_orbit"] = sorted(set(orbit))
            return sig
        M = t.rep @ th.C
        c2 = th.C_square()
        orbit = []
        for k, Mz in enumerate(self._twisted(M)):
            if th.antilinear:
                if Mz.transpose() == Mz:
                    orbit.append((k, "symmetric", None))
                elif Mz.transpose() == -Mz:
                    orbit.append((k, "antisymmetric", _pf_tag(Mz)))
            else:
                sq = (Mz @ Mz).scalar_value()
                if sq is None or sq != c2:
                    continue
                orbit.append((k, self._linear_invariant(Mz)))
        sig["center_orbit"] = orbit
        if orbit:
            if th.antilinear:
                sig["antilinear_type"] = sorted({o[1] for o in orbit})
            else:
                sig["linear_signature"] = sorted({o[1] for o in orbit}, key=repr)
        return sig

    def _linear_invariant(self, M: Matrix):
        k = self.theta.spec.kind
        if k == "AdIpq":
            return involution_signature(M)
        if k == "AdJn":
            if M.transpose() != -M:
                return None
            return ("pf", pfaffian(M) == 1)
        if k == "AdiI":
            return ("cx",)
        raise SpecMismatch(k)

    def _base_invariant(self):
        th = self.theta
        if th.antilinear:
            return ("symmetric", None) if th.spec.kind == "Tau" else ("antisymmetric", _pf_tag(th.C))
        return self._linear_invariant(th.C)

    def in_class_of_thetabar(self, t: ExtendedElement) -> bool:
        """Is t conjugate to thetabar under G?"""
        if not self.is_involution(t):
            raise NotAnInvolution("class test needs an involution")
        if t.outer == 0:
            return False
        th = self.theta
        M = t.rep @ th.C
        base = self._base_invariant()
        c2 = th.C_square()
        for Mz in self._twisted(M):
            if th.antilinear:
                if base[0] == "symmetric":
                    if Mz.transpose() == Mz:
                        return True
                elif Mz.transpose() == -Mz and _pf_tag(Mz) == base[1]:
                    return True
            else:
                sq = (Mz @ Mz).scalar_value()
                if sq is None or sq != c2:
                    continue
                if self._linear_invariant(Mz) == base:
                    return True
        return False


def _pf_tag(M: Matrix):
    return pfaffian(M)


def ext_mul(ext: ExtendedGroup, s: ExtendedElement, t: ExtendedElement) -> ExtendedElement:
    return ext.mul(s, t)


def in_class_of_thetabar(ext: ExtendedGroup, t: ExtendedElement) -> bool:
    return ext.in_class_of_thetabar(t)
