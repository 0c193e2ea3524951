"""Hypothesis strategies for exact scalars, matrices and random group elements."""

from fractions import Fraction
from functools import lru_cache

from hypothesis import strategies as st

from antipodal.catalog import get_entry
from antipodal.exact import CYC, Matrix
from antipodal.scalars import Cyc, Quat
from antipodal.search import bridge_generators, make_pool, monomial_generators

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyc(draw, N=None):
    N = draw(st.sampled_from([1, 3, 4, 8, 12])) if N is None else N
    probe = Cyc.rational(0, N)
    d = len(probe.num)
    return Cyc.from_coeffs(N, [draw(small) for _ in range(d)])


@st.composite
def quat(draw):
    return Quat(*(draw(small) for _ in range(4)))


def cyc_matrix(n, N=4):
    return st.lists(st.lists(cyc(N), min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: Matrix(rows, CYC, N))


# spaces used for randomized group elements
PROPERTY_SPACES = ["SU2_mod_U1U1", "SU3_mod_SO3", "SU4_mod_U2U2", "SU4_mod_Sp2", "Sp1_mod_U1",
                   "Sp2_mod_U2", "Sp2_mod_Sp1Sp1", "SO6_mod_U3", "SO5_mod_O2O3", "G3_3_tau",
                   "PSU2_mod_U1U1", "G4_2_tau", "PSp2_mod_U2"]


@lru_cache(maxsize=None)
def moves(space_id):
    """Monomial and bridge generators (with inverses) of a catalog space."""
    sp = get_entry(space_id).space
    gens = list(monomial_generators(sp, 4)) + list(bridge_generators(sp, 4))
    return tuple(gens + [g.adjoint() for g in gens])


@lru_cache(maxsize=None)
def pool_of(space_id):
    e = get_entry(space_id)
    return make_pool(e.space, e.unit_order, e.monomial_only, bridge_depth=e.bridge_depth)


def _word(space_id, w):
    sp = get_entry(space_id).space
    ms = moves(space_id)
    g = sp.group.identity()
    if g.kind == CYC:
        g = g.lift(ms[0].N)
    for i in w:
        g = g @ ms[i % len(ms)]
    return g


@st.composite
def group_element(draw, space_id, max_len=6):
    w = draw(st.lists(st.integers(0, 10 ** 6), max_size=max_len))
    return _word(space_id, w)


@st.composite
def space_and_elements(draw, k=1, spaces=PROPERTY_SPACES, max_len=6):
    sid = draw(st.sampled_from(spaces))
    return (sid,) + tuple(draw(group_element(sid, max_len)) for _ in range(k))
