import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antipodal.catalog import canonical_maximal_set, get_entry
from antipodal.errors import (FiberDataRequired, MissingOrigin, MissingThetaBar, NotAntipodal,
                              NotFixed, NotInGroup, SpecMismatch)
from antipodal.exact import CYC, QUAT, Matrix, J, diag, identity
from antipodal.groups import GroupSpec, InvolutionSpec, contains
from antipodal.scalars import QJ, zeta
from antipodal.space import (ORACLE, CosetPoint, SpaceModel, adjoint_project, build_F2,
                             generated_subgroup, group_form_antipodal_check,
                             projection_antipodal_check, reconstruct_F2, saturate, theta_aut)
from strategies import PROPERTY_SPACES, moves, pool_of, space_and_elements

i4 = zeta(4)


@pytest.fixture
def su2_grass():
    return get_entry("SU2_mod_U1U1").space


@pytest.fixture
def su2_tau():
    return get_entry("SU2_mod_SO2").space


def test_phi_examples(su2_grass, su2_tau):
    sp = su2_grass
    J1 = sp.point(J(1, CYC, 4))
    assert sp.cartan_phi(sp.origin).is_identity()
    assert sp.cartan_phi(J1) == -identity(2, CYC, 4)
    assert sp.psi(J1) == sp.ext.make(-identity(2, CYC, 4), 1)
    assert sp.psi(sp.origin) == sp.ext.thetabar
    x = su2_tau.point(diag([i4, -i4]))
    assert su2_tau.cartan_phi(x) == -identity(2, CYC, 4)
    with pytest.raises(NotInGroup):
        sp.cartan_phi(CosetPoint(diag([1, -1], CYC, 4)), check=True)


def test_geodesic_symmetry_examples(su2_grass):
    sp = su2_grass
    o = sp.origin
    J1 = sp.point(J(1, CYC, 4))
    assert sp.coset_eq(sp.s_o(o), o)
    assert sp.coset_eq(sp.s_o(J1), J1)
    g = J(1, CYC, 8) @ diag([zeta(8), zeta(8, 7)])
    x = sp.point(g)
    assert sp.coset_eq(sp.s_o(x), CosetPoint(sp.theta(g)))


def test_antipodal_pair_examples(su2_grass, su2_tau):
    sp = su2_grass
    J1 = sp.point(J(1, CYC, 4))
    assert sp.is_antipodal_pair(sp.origin, sp.origin)
    assert sp.is_antipodal_pair(sp.origin, J1)
    y = su2_tau.point(diag([zeta(8), zeta(8, 7)]))
    assert not su2_tau.is_antipodal_pair(su2_tau.origin, y)
    assert not su2_tau.fixed_point_test(y)
    assert sp.fixed_point_test(J1)


def test_antipodal_set_examples(su2_grass):
    sp = su2_grass
    X = sp.make_set([sp.origin, sp.point(J(1, CYC, 4))])
    assert sp.is_antipodal_set(sp.make_set([sp.origin]))
    assert sp.is_antipodal_set(X) and sp.is_antipodal_set(X, "phi")
    Y = sp.make_set([sp.point(J(1, CYC, 4))])
    with pytest.raises(MissingOrigin):
        sp.is_antipodal_set(Y, "phi")
    e = get_entry("SU4_mod_SO4")
    X4 = canonical_maximal_set(e)
    assert len(X4) == 8 and e.space.is_antipodal_set(X4, "phi")


def test_make_set_dedups_and_orders(su2_grass):
    sp = su2_grass
    J1 = sp.point(J(1, CYC, 4))
    J1b = sp.point(J(1, CYC, 4) @ diag([i4, -i4]))     # same coset
    X = sp.make_set([J1, sp.origin, J1b])
    assert len(X) == 2 and X.contains_origin and X.points[0] == sp.origin


def test_group_form_examples():
    G2 = GroupSpec("SU", 2)
    I2 = identity(2, CYC, 4)
    assert group_form_antipodal_check(G2, [I2, -I2])
    assert not group_form_antipodal_check(G2, [I2, J(1, CYC, 4)])
    G4 = GroupSpec("SO", 4)
    signs = [diag(list(s), CYC, 4) for s in itertools.product([1, -1], repeat=4)
             if s[0] * s[1] * s[2] * s[3] == 1]
    assert len(signs) == 8 and group_form_antipodal_check(G4, signs)
    with pytest.raises(NotInGroup):
        group_form_antipodal_check(G4, [diag([-1, 1, 1, 1], CYC, 4)])
    sp = get_entry("SO4_group").space
    X = sp.make_set([sp.point(s) for s in signs])
    assert sp.is_antipodal_set(X)


def test_build_F2_examples(su2_grass):
    sp = su2_grass
    F = build_F2(sp, sp.make_set([sp.origin]))
    assert F.rank == 1 and len(F) == 2
    X = sp.make_set([sp.origin, sp.point(J(1, CYC, 4))])
    F = build_F2(sp, X)
    I2 = identity(2, CYC, 4)
    assert F.rank == 2
    assert {e.key() for e in F.elements} == {sp.ext.make(m, f).key() for m in (I2, -I2)
                                               for f in (0, 1)}
    e3 = get_entry("SU3_mod_SO3")
    F3 = build_F2(e3.space, canonical_maximal_set(e3))
    assert len(F3) == 8 and len(F3.F1) == 4
    assert all(f.rep.is_diagonal() for f in F3.F1)


def test_build_F2_errors(su2_tau):
    sp = su2_tau
    bad = sp.make_set([sp.origin, sp.point(diag([zeta(8), zeta(8, 7)]))])
    with pytest.raises(NotAntipodal):
        build_F2(sp, bad)
    with pytest.raises(MissingOrigin):
        build_F2(sp, sp.make_set([sp.point(diag([i4, -i4]))]))


def test_saturate_examples(su2_grass):
    sp = su2_grass
    pool = pool_of("SU2_mod_U1U1")
    F = build_F2(sp, sp.make_set([sp.origin]))
    assert saturate(sp, F, pool) == sp.make_set([sp.origin])
    X = sp.make_set([sp.origin, sp.point(J(1, CYC, 4))])
    assert saturate(sp, build_F2(sp, X), pool) == X
    sp1 = get_entry("Sp1_mod_U1").space
    Xq = sp1.make_set([sp1.origin, sp1.point(Matrix([[QJ]], QUAT))])
    assert sp1.cartan_phi(Xq.points[1]) == Matrix([[-1]], QUAT)
    assert saturate(sp1, build_F2(sp1, Xq), pool_of("Sp1_mod_U1")) == Xq
    Fno = generated_subgroup(sp, [sp.ext.make(-identity(2, CYC, 4), 0)])
    with pytest.raises(MissingThetaBar):
        saturate(sp, Fno, pool)


def test_involution_pair(su2_grass, su2_tau):
    sp = su2_grass
    a, b = sp.involution_pair(sp.origin)
    assert a == b == sp.ext.thetabar
    a, b = sp.involution_pair(sp.point(J(1, CYC, 4)))
    assert a == sp.ext.make(-identity(2, CYC, 4), 1) and sp.ext.commute(a, b)
    with pytest.raises(NotFixed):
        su2_tau.involution_pair(su2_tau.point(diag([zeta(8), zeta(8, 7)])))


def test_projection_examples():
    e = get_entry("SO4_mod_SO3")
    sp = e.space
    assert projection_antipodal_check(sp, sp.make_set([sp.origin]))
    x = sp.point(diag([-1, -1, 1, 1], CYC, 4))
    X = sp.make_set([sp.origin, x])
    assert projection_antipodal_check(sp, X) == sp.is_antipodal_set(X)
    bare = SpaceModel(sp.group, sp.involution, ORACLE, oracle=sp.oracle, key_fn=sp.key_fn)
    with pytest.raises(FiberDataRequired):
        projection_antipodal_check(bare, X)
    with pytest.raises(SpecMismatch):
        projection_antipodal_check(get_entry("SO4_mod_O1O3").space, X)


def test_adjoint_round_trip():
    e = get_entry("PSU2_mod_U1U1")
    sp = e.space
    pool = pool_of("PSU2_mod_U1U1")
    from antipodal.search import two_number
    X = two_number(sp, pool, certify=False).best
    F2 = build_F2(sp, X)
    F = adjoint_project(sp, F2)
    assert theta_aut(sp) in F
    F2b = reconstruct_F2(sp, F, pool)
    assert adjoint_project(sp, F2b).key() == F.key()
    tiny = build_F2(sp, sp.make_set([sp.origin]))
    Ft = adjoint_project(sp, tiny)
    assert len(Ft) == 2 and theta_aut(sp) in Ft
    with pytest.raises(SpecMismatch):
        adjoint_project(get_entry("SU2_mod_U1U1").space, tiny)


FULL_SPACES = [s for s in PROPERTY_SPACES]


@given(space_and_elements(2, FULL_SPACES, max_len=5))
def test_phi_equivariance(data):
    sid, g, x = data
    sp = get_entry(sid).space
    G = sp.group
    p = sp.point(x)
    lhs = sp.cartan_phi(sp.translate(g, p))
    rhs = g @ sp.cartan_phi(p) @ sp.theta(g).adjoint()
    assert lhs == sp.phi_matrix(g @ x)
    from antipodal.groups import same_element
    assert same_element(G, lhs, rhs)


@given(space_and_elements(1, FULL_SPACES, max_len=6))
def test_theta_inverts_phi(data):
    sid, g = data
    sp = get_entry(sid).space
    f = sp.cartan_phi(sp.point(g))
    from antipodal.groups import same_element
    assert same_element(sp.group, sp.theta(f), f.adjoint())
    assert sp.psi(sp.point(g)) == sp.ext.mul(sp.ext.make(f, 0), sp.ext.thetabar)


@given(space_and_elements(2, FULL_SPACES, max_len=5))
def test_geodesic_symmetry_involutive(data):
    sid, a, b = data
    sp = get_entry(sid).space
    x, y = sp.point(a), sp.point(b)
    assert sp.coset_eq(sp.geodesic_symmetry(x, x), x)
    assert sp.coset_eq(sp.geodesic_symmetry(x, sp.geodesic_symmetry(x, y)), y)
    assert sp.is_antipodal_pair(x, y) == sp.is_antipodal_pair(y, x)
    assert sp.fixed_point_test(y) == sp.coset_eq(sp.s_o(y), y)


@given(space_and_elements(1, FULL_SPACES, max_len=5), st.lists(st.integers(0, 10 ** 6), max_size=5))
def test_phi_independent_of_representative(data, word):
    sid, g = data
    sp = get_entry(sid).space
    fixed = [m for m in moves(sid) if sp.in_H(m)]
    u = sp.group.identity().lift(g.N) if g.kind == CYC else sp.group.identity()
    for i in word:
        if fixed:
            u = u @ fixed[i % len(fixed)]
    assert sp.in_H(u)
    assert sp.phi_matrix(g @ u) == sp.phi_matrix(g)
    assert sp.coset_eq(sp.point(g), sp.point(g @ u))
