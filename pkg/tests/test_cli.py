import json

import pytest

from antipodal.cli import main
from antipodal.catalog import catalog


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_two_number_pass(capsys):
    code, out, _ = run(capsys, "two-number", "--space", "SU3_mod_SO3")
    d = json.loads(out)
    assert code == 0 and (d["two_number"], d["expected"], d["status"]) == (4, 4, "PASS")


def test_two_number_fail_is_flagged(capsys):
    code, out, _ = run(capsys, "two-number", "--space", "SU4_mod_Sp2")
    d = json.loads(out)
    assert code == 1 and d["status"] == "FAIL" and d["two_number"] == 2


def test_list_spaces(capsys):
    code, out, _ = run(capsys, "list-spaces", "--family", "spin")
    d = json.loads(out)
    assert code == 0 and d["spaces"] == [] and "open case, out of scope" in d["note"]
    code, out, _ = run(capsys, "list-spaces")
    assert len(json.loads(out)["spaces"]) == len(catalog())


def test_verify_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "find-maximal", "--space", "SU2_mod_U1U1")
    assert code == 0
    f = tmp_path / "two_points.json"
    f.write_text(out)
    for method in ("pairwise", "phi"):
        code, out2, _ = run(capsys, "verify-set", "--space", "SU2_mod_U1U1", "--points", str(f),
                            "--method", method)
        d = json.loads(out2)
        assert code == 0 and d["antipodal"] is True and d["size"] == 2


def test_verify_non_antipodal(capsys, tmp_path):
    f = tmp_path / "bad.json"
    z8 = {"N": 8, "coeffs": ["0", "1", "0", "0"]}
    z8i = {"N": 8, "coeffs": ["0", "0", "0", "-1"]}
    f.write_text(json.dumps({"points": [[["1", "0"], ["0", "1"]], [[z8, "0"], ["0", z8i]]]}))
    code, out, _ = run(capsys, "verify-set", "--space", "SU2_mod_SO2", "--points", str(f))
    d = json.loads(out)
    assert code == 1 and d["antipodal"] is False and d["witness"] == [0, 1]


def test_usage_errors(capsys, tmp_path):
    code, _, err = run(capsys, "two-number", "--space", "Nowhere")
    assert code == 2 and "SU3_mod_SO3" in err
    f = tmp_path / "broken.json"
    f.write_text('{"points": [\n')
    code, _, err = run(capsys, "verify-set", "--space", "SU2_mod_U1U1", "--points", str(f))
    assert code == 2 and "line" in err and "column" in err
    with pytest.raises(SystemExit) as ex:
        main(["frobnicate"])
    assert ex.value.code == 2
    code, _, err = run(capsys, "verify-set", "--space", "SU2_mod_U1U1", "--points",
                       str(tmp_path / "missing.json"))
    assert code == 2


def test_classes_and_weyl(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate-classes", "--space", "SU3_mod_SO3")
    d = json.loads(out)
    assert code == 0 and d["count"] == 1 and d["classes"][0]["size"] == 4
    f = tmp_path / "cls.json"
    f.write_text(json.dumps(d["classes"][0]))
    code, out, _ = run(capsys, "weyl", "--space", "SU3_mod_SO3", "--set", str(f))
    w = json.loads(out)
    assert code == 0 and w["order"] == 24 and w["origin_isotropy_order"] == 6


def test_report_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "report", "--space", "SO6_mod_U3", "--out", str(a))[0] == 0
    assert run(capsys, "report", "--space", "SO6_mod_U3", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    d = json.loads(a.read_text())
    assert d["config"]["pool_cap"] == 200000 and d["two_number"]["tier"] == "CertifiedMaximal"
    m = tmp_path / "r.md"
    assert run(capsys, "report", "--space", "Sp2_mod_U2", "--out", str(m), "--format", "md",
               "--seed", "5")[0] == 0
    assert "Verdict: PASS" in m.read_text() and "- seed: 5" in m.read_text()


def test_env_pool_cap(capsys, monkeypatch):
    monkeypatch.setenv("ANTIPODAL_POOL_CAP", "3")
    code, _, err = run(capsys, "two-number", "--space", "SO6_mod_O3O3")
    assert code == 2 and "cap" in err
    code, _, _ = run(capsys, "two-number", "--space", "SO6_mod_O3O3", "--pool-cap", "1000")
    assert code == 0
