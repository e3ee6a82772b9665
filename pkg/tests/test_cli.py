import json
from pathlib import Path

import pytest

from znfree.cli import run

FIXTURES = Path(__file__).parent / "fixtures"


def t(name):
    return str(FIXTURES / name)


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_len(capsys):
    code, out, _ = invoke(capsys, "len", t("t1.json"), "t^-1 x y t")
    assert code == 0
    assert json.loads(out) == {"length": [2, 0]}


def test_len_check_oracle(capsys):
    code, out, _ = invoke(capsys, "--radius", "3", "len", t("t1.json"), "x y", "--check-oracle")
    assert code == 0
    assert json.loads(out) == {"length": [2, 0]}


def test_weights(capsys):
    code, out, _ = invoke(capsys, "weights", t("t2.json"))
    assert code == 0
    assert json.loads(out) == {"x": 1, "y": 1, "t": 1}


def test_weights_infeasible(capsys):
    code, out, err = invoke(capsys, "weights", t("t2_corrupt_image.json"))
    assert code == 1
    assert "Infeasible" in err


def test_validate(capsys):
    code, out, _ = invoke(capsys, "--radius", "3", "validate", t("t1.json"))
    assert code == 0
    assert json.loads(out)["ok"]


def test_validate_corrupted(capsys):
    code, _, err = invoke(capsys, "validate", t("t2_corrupt_image.json"))
    assert code == 1
    assert "LengthMismatch" in err


def test_normalize(capsys):
    code, out, _ = invoke(capsys, "normalize", t("t1.json"), "y^-1 x^-1 t x y")
    assert code == 0
    assert json.loads(out) == {"normalized": "t"}


def test_gromov_and_com(capsys):
    code, out, _ = invoke(capsys, "gromov", t("f2.json"), "x y", "x x")
    assert code == 0
    assert json.loads(out) == {"gromov": [1, 0]}
    code, out, _ = invoke(capsys, "com", t("f2.json"), "x y", "x x")
    assert code == 0
    assert json.loads(out) == {"com": "x"}


def test_reduce_basis(capsys):
    code, out, _ = invoke(capsys, "reduce-basis", t("t1.json"), "x y t", "t")
    assert code == 0
    doc = json.loads(out)
    assert doc["heights"] == [1, 2]
    assert len(doc["basis"]) == 2


def test_wm(capsys):
    code, out, _ = invoke(capsys, "wm", t("t1.json"), "t^-1 x y t")
    assert code == 0
    assert json.loads(out) == {"wm": 2}


def test_complex_json_and_dot(capsys):
    code, out, _ = invoke(capsys, "complex", t("t1.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["gluings"][0]["circles"] == [{"id": "T1.c1", "length": 2}]
    code, out, _ = invoke(capsys, "complex", t("t1.json"), "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")


def test_check_axioms(capsys):
    code, out, _ = invoke(capsys, "--radius", "2", "check-axioms", t("f2.json"))
    assert code == 0
    doc = json.loads(out)
    assert all(v["violations"] == 0 for v in doc["axioms"].values())


def test_missing_file(capsys):
    code, _, err = invoke(capsys, "len", t("nope.json"), "x")
    assert code == 2
    assert "cannot read" in err


def test_usage_error():
    with pytest.raises(SystemExit) as e:
        run(["unknown-verb", "x.json"])
    assert e.value.code == 2


def test_radius_env(capsys, monkeypatch):
    monkeypatch.setenv("ZNFREE_RADIUS", "3")
    code, out, _ = invoke(capsys, "validate", t("f2.json"))
    assert code == 0
    assert json.loads(out)["radius"] == 3
