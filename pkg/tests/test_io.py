import json
from fractions import Fraction

import pytest
from hypothesis import given

from antipodal.catalog import canonical_maximal_set, get_entry
from antipodal.config import Config, load_config
from antipodal.errors import SpecMismatch
from antipodal.exact import CYC
from antipodal.groups import GroupSpec, InvolutionSpec
from antipodal.scalars import Quat, zeta
from antipodal.serialize import (MalformedInput, decode_group, decode_involution, decode_matrix,
                                 decode_scalar, decode_set, dumps, encode_matrix, encode_scalar,
                                 encode_set, loads)
from strategies import cyc, cyc_matrix, quat


def test_scalar_encoding():
    assert encode_scalar(Fraction(-3, 4)) == "-3/4"
    assert encode_scalar(zeta(4) * 0 + 2) == "2"
    assert encode_scalar(zeta(4)) == {"N": 4, "coeffs": ["0", "1"]}
    assert encode_scalar(Quat(1, 0, Fraction(1, 2), 0)) == {"q": ["1", "0", "1/2", "0"]}
    assert decode_scalar("5/6", CYC, 4) == Fraction(5, 6)
    with pytest.raises(MalformedInput):
        decode_scalar(0.5)
    with pytest.raises(MalformedInput):
        decode_scalar({"q": [1, 2]})


@given(cyc())
def test_cyc_round_trip(a):
    assert decode_scalar(loads(json.dumps(encode_scalar(a))), CYC, a.N) == a


@given(quat())
def test_quat_round_trip(q):
    assert decode_scalar(encode_scalar(q), "quat") == q


@given(cyc_matrix(3, 12))
def test_matrix_round_trip(A):
    assert decode_matrix(loads(dumps(encode_matrix(A))), CYC, 12) == A


def test_spec_round_trip():
    g = GroupSpec("SU", 4, 2)
    assert decode_group(g.to_json()) == g
    t = InvolutionSpec("AdIpq", 2, 2)
    assert decode_involution(t.to_json()) == t


@pytest.mark.parametrize("sid", ["SU3_mod_SO3", "Sp2_mod_U2", "G3_3_tau", "SO6_mod_U3"])
def test_set_round_trip(sid):
    e = get_entry(sid)
    X = canonical_maximal_set(e)
    assert decode_set(loads(dumps(encode_set(X))), e.space) == X


def test_set_spec_mismatch():
    X = canonical_maximal_set(get_entry("SU3_mod_SO3"))
    with pytest.raises(SpecMismatch):
        decode_set(encode_set(X), get_entry("SU3_mod_U1U2").space)


def test_malformed_json_position():
    with pytest.raises(MalformedInput) as ex:
        loads('{\n  "points": [1,\n ]')
    assert ex.value.line == 3 and ex.value.column >= 1


def test_config_precedence(tmp_path):
    f = tmp_path / "cfg.json"
    f.write_text(json.dumps({"pool_cap": 500, "restarts": 3}))
    assert load_config(env={}) == Config()
    c = load_config(f, env={})
    assert (c.pool_cap, c.restarts) == (500, 3)
    c = load_config(f, env={"ANTIPODAL_POOL_CAP": "77"})
    assert c.pool_cap == 77
    c = load_config(f, {"pool_cap": 9, "seed": 4}, env={"ANTIPODAL_POOL_CAP": "77"})
    assert (c.pool_cap, c.seed, c.restarts) == (9, 4, 3)
    f.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(SpecMismatch):
        load_config(f, env={})
    with pytest.raises(SpecMismatch):
        Config(restarts=0)
