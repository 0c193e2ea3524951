import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antipodal.catalog import (LITERATURE_EXCEPTIONAL, MANIFEST_PATH, catalog, catalog_list,
                               canonical_maximal_set, expected_two_number, get_entry,
                               grassmannian, load_manifest, manifest_text, type_AI, type_AII,
                               type_CI, type_DIII)
from antipodal.errors import NoRecipe, SpecMismatch, UnknownSpace
from antipodal.space import FULL
from strategies import group_element


def test_constraints_rejected():
    with pytest.raises(SpecMismatch):
        grassmannian("R", 2, 2)
    with pytest.raises(SpecMismatch):
        type_AI(4, 3)
    with pytest.raises(SpecMismatch):
        type_AII(5)
    with pytest.raises(SpecMismatch):
        type_DIII(2)
    with pytest.raises(SpecMismatch):
        grassmannian("O", 1, 1)


def test_family_filters():
    ai, _ = catalog_list("AI")
    assert ai and all(e.involution.kind == "Tau" and e.constraint == "m | n" for e in ai)
    ci, _ = catalog_list("CI")
    assert ci and all(e.involution.kind == "AdiI" and e.group.family == "Sp" for e in ci)
    for fam in ("spin", "exceptional"):
        entries, note = catalog_list(fam)
        assert entries == [] and "out of scope" in note
    with pytest.raises(UnknownSpace):
        catalog_list("E9")
    with pytest.raises(UnknownSpace) as ex:
        get_entry("SU9_mod_nothing")
    assert "SU3_mod_SO3" in str(ex.value)


def test_expected_examples():
    assert expected_two_number(get_entry("SU4_mod_U2U2")) == 6
    assert expected_two_number(get_entry("SO8_mod_U4")) == 8
    assert expected_two_number(type_AI(4, 4)) is None
    assert expected_two_number(get_entry("SU3_mod_SO3")) == 4
    assert expected_two_number(get_entry("Sp3_mod_U3")) == 8


def test_canonical_examples():
    e = get_entry("SU2_mod_U1U1")
    X = canonical_maximal_set(e)
    from antipodal.exact import CYC, J
    assert X == e.space.make_set([e.space.origin, e.space.point(J(1, CYC, 4))])
    assert len(canonical_maximal_set(get_entry("SU3_mod_SO3"))) == 4
    e = get_entry("Sp1_mod_U1")
    from antipodal.exact import QUAT, Matrix
    from antipodal.scalars import QJ
    assert canonical_maximal_set(e) == e.space.make_set([e.space.origin,
                                                        e.space.point(Matrix([[QJ]], QUAT))])
    with pytest.raises(NoRecipe):
        canonical_maximal_set(get_entry("PSO8_mod_U4"))


@pytest.mark.parametrize("sid", sorted(catalog()))
def test_every_canonical_set(sid):
    e = get_entry(sid)
    try:
        X = canonical_maximal_set(e)
    except NoRecipe:
        assert e.group.m % 2 == 0
        return
    sp = e.space
    assert sp.is_antipodal_set(X)
    if sp.mode == FULL and not sp.group_form:
        assert sp.is_antipodal_set(X, "phi")
    exp = expected_two_number(e)
    if exp is not None and e.cartan != "AII":
        assert len(X) == exp
    if e.cartan == "AII":
        # the Pfaffian forces prod(eps) = 1 on diagonal points
        assert len(X) == 2 ** (e.group.n // 2 - 1)


def test_manifest_ships_and_matches():
    assert MANIFEST_PATH.exists()
    assert MANIFEST_PATH.read_text() == manifest_text()
    m = load_manifest()
    assert m["version"] >= 1
    assert {s["id"] for s in m["entries"]} == set(catalog())
    lit = m["exceptional_literature_values"]
    assert "unverified" in lit["status"]
    assert sorted(x["count"] for x in lit["values"]) == [4, 28, 56, 56, 64, 72, 128]


@settings(max_examples=50)
@given(st.sampled_from(["SU3_mod_SO3", "SU5_mod_SO5", "G3_3_tau"]).flatmap(
    lambda sid: st.tuples(st.just(sid), group_element(sid, 8))))
def test_fixed_group_is_SO_for_odd_m(data):
    sid, g = data
    sp = get_entry(sid).space
    G = sp.group
    fixed = sp.in_H(g)
    real_up_to_center = any(g.scale(z).is_real() for z in G.center_kernel())
    assert fixed == real_up_to_center
