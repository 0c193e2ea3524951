import pytest
from hypothesis import given

from antipodal.errors import NotAnInvolution, ShapeError, SpecMismatch
from antipodal.exact import CYC, QUAT, Matrix, I_pq, J, diag, identity
from antipodal.groups import (ExtendedGroup, GroupSpec, InvolutionSpec, Theta, canonical_rep,
                              contains, ext_mul, in_class_of_thetabar, theta_apply)
from antipodal.scalars import QI, QJ, Quat, zeta
from strategies import group_element, moves, space_and_elements

i4 = zeta(4)


def _ext(family, n, kind, p=0, q=0, m=1):
    return ExtendedGroup(Theta(GroupSpec(family, n, m), InvolutionSpec(kind, p, q)))


def test_spec_validation():
    with pytest.raises(SpecMismatch):
        GroupSpec("SU", 4, 3)
    with pytest.raises(SpecMismatch):
        GroupSpec("SO", 3, 2)
    with pytest.raises(SpecMismatch):
        GroupSpec("Spin", 4)
    with pytest.raises(SpecMismatch):
        Theta(GroupSpec("SU", 4), InvolutionSpec("AdIpq", 1, 2))
    with pytest.raises(SpecMismatch):
        Theta(GroupSpec("SU", 3), InvolutionSpec("TauPrime"))
    assert GroupSpec("SU", 4, 2).to_json() == {"family": "SU", "n": 4, "m": 2}
    assert InvolutionSpec("AdIpq", 2, 2).to_json() == {"theta": "AdIpq", "p": 2, "q": 2}
    assert GroupSpec("SU", 6, 3).conductor == 12


def test_contains_examples():
    assert contains(GroupSpec("SU", 2), diag([i4, -i4]))
    assert not contains(GroupSpec("SO", 3), diag([1, 1, -1], CYC, 4))
    assert contains(GroupSpec("Sp", 1), Matrix([[QJ]], QUAT))
    assert not contains(GroupSpec("SO", 2), diag([i4, -i4]))
    with pytest.raises(ShapeError):
        contains(GroupSpec("SU", 3), identity(2, CYC, 4))


def test_theta_examples():
    th = Theta(GroupSpec("SU", 2), InvolutionSpec("AdIpq", 1, 1))
    J1 = J(1, CYC, 4)
    assert theta_apply(th, J1) == -J1 == J1.adjoint()
    tau = Theta(GroupSpec("SU", 2), InvolutionSpec("Tau"))
    assert tau(diag([i4, -i4])) == diag([-i4, i4])
    ci = Theta(GroupSpec("Sp", 1), InvolutionSpec("AdiI"))
    assert ci(Matrix([[QJ]], QUAT)) == Matrix([[-QJ]], QUAT)


def test_canonical_rep_examples():
    A = diag([i4, -i4])
    assert canonical_rep(GroupSpec("SU", 2), A) == A
    assert canonical_rep(GroupSpec("SU", 2, 2), -identity(2, CYC, 4)) == identity(2, CYC, 4)
    r = canonical_rep(GroupSpec("SU", 2, 2), A)
    assert r in (A, -A) and canonical_rep(GroupSpec("SU", 2, 2), -A) == r


def test_ext_mul_examples():
    ext = _ext("SU", 2, "AdIpq", 1, 1)
    tb = ext.thetabar
    assert ext_mul(ext, tb, tb) == ext.identity
    J1 = J(1, CYC, 4)
    s = ext.make(J1, 1)
    # J1 theta(J1) = J1 (-J1) = I, so the square is (I, 0)
    assert ext.mul(s, s) == ext.identity
    g = ext.make(J1 @ diag([zeta(8), zeta(8, 7)]), 0)
    conj = ext.mul(ext.mul(g, tb), ext.inv(g))
    assert conj == ext.make(g.rep @ ext.theta(g.rep).adjoint(), 1)


def test_class_examples():
    ext = _ext("SU", 4, "AdIpq", 2, 2)
    assert in_class_of_thetabar(ext, ext.thetabar)
    # det(gC) = det(C) = 1 in SU(4), so the reachable wrong signatures are (0,4) and (4,0)
    C = ext.theta.C
    for gC in (identity(4, CYC, 4), -identity(4, CYC, 4)):
        t = ext.make(gC @ C, 1)
        assert contains(ext.group, t.rep) and ext.is_involution(t)
        assert not in_class_of_thetabar(ext, t)
    t = ext.make(diag([1, 1, -1, -1], CYC, 4) @ C, 1)    # gC = I_{2,2} swapped blocks
    assert in_class_of_thetabar(ext, t)
    with pytest.raises(NotAnInvolution):
        in_class_of_thetabar(ext, ext.make(diag([zeta(8), zeta(8, 7), 1, 1]), 1))


def test_class_antilinear():
    tau = _ext("SU", 4, "Tau")
    taup = _ext("SU", 4, "TauPrime")
    assert in_class_of_thetabar(tau, tau.thetabar)
    assert in_class_of_thetabar(taup, taup.thetabar)
    # (J, 1) over tau: J conj(J) = -I, so it is no involution
    assert not tau.is_involution(tau.make(J(2, CYC, 4), 1))
    # over tau' the outer involutions have antisymmetric M = gC; Pf(DJD) = -Pf(J) splits them
    D = diag([-1, 1, 1, 1], CYC, 4)
    C = taup.theta.C
    t = taup.make(D @ C @ D @ C.adjoint(), 1)
    assert contains(taup.group, t.rep) and taup.is_involution(t)
    assert not in_class_of_thetabar(taup, t)


@given(space_and_elements(3, max_len=4))
def test_ext_mul_associative(data):
    sid, a, b, c = data
    from antipodal.catalog import get_entry
    ext = get_entry(sid).space.ext
    for ea in (0, 1):
        for eb in (0, 1):
            x, y, z = ext.make(a, ea), ext.make(b, eb), ext.make(c, ea ^ eb)
            assert ext.mul(ext.mul(x, y), z) == ext.mul(x, ext.mul(y, z))
            assert ext.mul(x, ext.identity) == x == ext.mul(ext.identity, x)
            assert ext.mul(x, ext.inv(x)) == ext.identity


@given(space_and_elements(1, max_len=6))
def test_theta_preserves_group(data):
    sid, g = data
    from antipodal.catalog import get_entry
    sp = get_entry(sid).space
    th = sp.theta
    assert contains(sp.group, th(g))
    assert canonical_rep(sp.group, th(th(g))) == canonical_rep(sp.group, g)


@given(space_and_elements(1, max_len=6))
def test_canonical_rep_central_invariance(data):
    sid, g = data
    from antipodal.catalog import get_entry
    G = get_entry(sid).space.group
    r = canonical_rep(G, g)
    assert canonical_rep(G, r) == r
    for z in G.center_kernel():
        assert canonical_rep(G, g.scale(z)) == r


@given(space_and_elements(1, max_len=6))
def test_conjugates_of_thetabar_in_class(data):
    sid, h = data
    from antipodal.catalog import get_entry
    ext = get_entry(sid).space.ext
    hb = ext.make(h, 0)
    t = ext.conjugate(hb, ext.thetabar)
    assert ext.is_involution(t)
    assert in_class_of_thetabar(ext, t)
    assert ext.class_signature(t) == ext.class_signature(ext.thetabar)
    # linear theta: (gC)^2 is the central C^2
    if not ext.theta.antilinear:
        M = t.rep @ ext.theta.C
        assert any((M @ M).scale(z) == (ext.theta.C @ ext.theta.C)
                   for z in ext.group.center_kernel())
