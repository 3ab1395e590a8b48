import json
from pathlib import Path

import pytest

from src.main import main

SAMPLES = Path(__file__).resolve().parent.parent / "data" / "samples"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_example25_passes_and_is_byte_identical(capsys):
    code, first = run(capsys, "example25", "--n", "5", "--t", "3", "--json")
    assert code == 0
    report = json.loads(first)
    assert report["theorems"]["example_2_5"]["verdict"] == "pass"
    assert report["timing"] == {}
    _, second = run(capsys, "example25", "--n", "5", "--t", "3", "--json")
    assert first == second


def test_timing_flag(capsys):
    code, out = run(capsys, "example25", "--n", "4", "--json", "--timing")
    assert code == 0
    assert "example_2_5" in json.loads(out)["timing"]


def test_example25_precondition(capsys):
    assert main(["example25", "--n", "4", "--t", "3"]) == 3


def test_gp_of_a2_simple(capsys):
    code, out = run(capsys, "gp", "a2", "S:1", "--json")
    assert code == 0
    record = json.loads(out)["modules"][0]
    assert record["gp"] == "not_gp"
    assert record["ext_against_algebra"]["degree"] == 1


def test_gp_inconclusive_within_small_bound(capsys):
    code, out = run(capsys, "gp", "lambda:5", "S:1", "--bound", "4", "--json")
    assert code == 2
    assert json.loads(out)["modules"][0]["gp"] == "unknown"


def test_selforth(capsys):
    code, out = run(capsys, "selforth", "lambda:5", "S:1", "--bound", "8", "--json")
    assert code == 0
    certificate = json.loads(out)["modules"][0]["self_orthogonal"]
    assert (certificate["kind"], certificate["degree"]) == ("nonzero_at", 5)


def test_ext_table(capsys):
    code, out = run(capsys, "ext", "lambda:4", "S:1", "S:1", "--upto", "8", "--json")
    assert code == 0
    assert json.loads(out)["modules"][0]["ext"] == [0, 0, 0, 1, 0, 0, 0, 1]


def test_resolve(capsys):
    code, out = run(capsys, "resolve", "a2", "S:1", "--length", "2", "--json")
    assert code == 0
    terms = json.loads(out)["modules"]
    assert [term["generators"] for term in terms] == [["1"], ["2"], []]
    assert all(term["exact"] and term["minimal"] for term in terms)


def test_transpose_prints_module_text(capsys):
    code, out = run(capsys, "transpose", "lambda:4", "S:2")
    assert code == 0
    assert "module over lambda4^op" in out
    assert "dims: 0 0 1 0" in out


def test_build_from_file(capsys):
    code, out = run(capsys, "build", str(SAMPLES / "lambda4.alg"), "--json")
    assert code == 0
    algebra = json.loads(out)["algebra"]
    assert algebra["dim"] == 8
    assert algebra["self_injective"] is True
    assert algebra["nakayama"] is True


def test_sweep_commands(capsys):
    for command in ("gpc-check", "symmetry", "prop34", "prop35", "prop37", "prop22", "lemma33"):
        assert main([command, "a2"]) == 0
    capsys.readouterr()
    code, out = run(capsys, "gpc-check", "lambda:4", "--json")
    assert code == 0
    report = json.loads(out)
    assert len(report["modules"]) == 8


def test_star_prints_opposite_module(capsys):
    code, out = run(capsys, "star", "lambda:4", str(SAMPLES / "lambda4_p1.mod"), "--json")
    assert code == 0
    record = json.loads(out)["modules"][0]
    assert record["dims"] == [1, 0, 0, 1]
    assert record["module_text"].startswith("module over lambda4^op")


def test_symmetry_sweep_on_lambda(capsys):
    code, out = run(capsys, "symmetry", "lambda:5", "--json")
    assert code == 0
    found = json.loads(out)["theorems"]["symmetry_check"]["witnesses"]
    assert found["ext_tables"]["S(1)"] == [0, 0, 0, 0, 1, 0]


C3_ALGEBRA = "vertices: 1 2\narrow a: 1 -> 2\nchar: 3\n"


def characteristic_of(capsys, *argv):
    code, out = run(capsys, "build", *argv, "--json")
    assert code == 0
    return json.loads(out)["algebra"]["characteristic"]


def test_file_characteristic_is_used_unless_overridden(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("GPC_CHAR", raising=False)
    path = tmp_path / "c3.alg"
    path.write_text(C3_ALGEBRA, encoding="utf-8")
    plain = tmp_path / "plain.alg"
    plain.write_text("vertices: 1 2\narrow a: 1 -> 2\n", encoding="utf-8")

    assert characteristic_of(capsys, str(path)) == 3
    assert characteristic_of(capsys, str(plain)) == 2
    assert characteristic_of(capsys, str(path), "--char", "5") == 5
    monkeypatch.setenv("GPC_CHAR", "7")
    assert characteristic_of(capsys, str(path)) == 7


@pytest.mark.parametrize("matrix", ["[[1,0],[1]]", "[[1.7]]"])
def test_malformed_module_matrix_is_input_error(capsys, tmp_path, matrix):
    path = tmp_path / "bad.mod"
    path.write_text(f"module over a2\ndims: 1 1\narrow a: {matrix}\n", encoding="utf-8")
    assert main(["gp", "a2", str(path)]) == 3


def test_audit_and_fuzz(capsys, tmp_path):
    assert main(["audit", "a2", "lambda:4", "--samples", "5"]) == 0
    assert main(["fuzz", "--seed", "3", "--count", "3", "--max-vertices", "3", "--out", str(tmp_path)]) == 0


@pytest.mark.parametrize("argv", [
    ["gpc-check", "kronecker"],
    ["build", str(SAMPLES / "missing.alg")],
    ["build", "a2", "--char", "4"],
    ["gp", "a2", "S:9"],
    ["bogus"],
    ["example25"],
])
def test_input_errors(capsys, argv):
    assert main(argv) == 3
