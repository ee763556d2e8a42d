import json
import subprocess
import sys
from pathlib import Path

import pytest

from detspace.cli import main

GOLDEN = Path(__file__).parent / "golden"
EXAMPLES = ("ex1", "ex2", "ex3")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_seed_env(monkeypatch):
    monkeypatch.delenv("DETSPACE_SEED", raising=False)


@pytest.mark.parametrize("name", EXAMPLES)
def test_construct_matches_golden(capsys, name):
    code, out, _ = run(capsys, "construct", name)
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text()


@pytest.mark.parametrize("name", EXAMPLES)
@pytest.mark.parametrize("cmd", ["detpoly", "classify", "singular", "rank"])
def test_pipeline_matches_golden(capsys, name, cmd):
    code, out, _ = run(capsys, cmd, "-i", str(GOLDEN / f"{name}.json"), "--format", "json")
    assert code == 0
    assert out == (GOLDEN / f"{name}.{cmd}.json").read_text()


@pytest.mark.parametrize("name", EXAMPLES)
def test_census_matches_golden(capsys, name):
    inp = str(GOLDEN / f"{name}.json")
    code, out, _ = run(capsys, "census", "-i", inp, "--projective", "--format", "json")
    assert code == 0 and out == (GOLDEN / f"{name}.census.json").read_text()
    code, out, _ = run(capsys, "census", "-i", inp)
    assert code == 0 and out == (GOLDEN / f"{name}.census.txt").read_text()


def test_golden_values():
    # the frozen files carry the documented example values
    assert json.loads((GOLDEN / "ex1.detpoly.json").read_text())["det_poly"] == "x1^2*x2 + x1*x2^2"
    c1 = json.loads((GOLDEN / "ex1.census.json").read_text())
    assert c1["N_affine"] == 4
    c2 = json.loads((GOLDEN / "ex2.census.json").read_text())
    assert (c2["N_affine"], c2["N_projective"]) == (9, 4)
    assert json.loads((GOLDEN / "ex3.detpoly.json").read_text())["det_poly"] == "3*x2^3 + 2*x3^3"
    cl = json.loads((GOLDEN / "ex3.classify.json").read_text())
    assert cl["verdicts"]["norm_form"] and cl["witness"]["r"] == 3
    sp = json.loads((GOLDEN / "ex3.singular.json").read_text())
    assert sp["dim"] == 1 and sp["count"] == 7
    assert json.loads((GOLDEN / "ex1.classify.json").read_text())["verdicts"]["vanishes_everywhere"]


def test_json_output_is_deterministic_across_threads(capsys):
    inp = str(GOLDEN / "ex3.json")
    outs = {run(capsys, "classify", "-i", inp, "--format", "json", "--threads", str(t))[1] for t in (1, 2, 5)}
    assert len(outs) == 1


def test_construct_writes_file(tmp_path, capsys):
    target = tmp_path / "f.json"
    code, out, _ = run(capsys, "construct", "field", "--q", "2", "--t", "3", "-o", str(target))
    assert code == 0 and out == ""
    code, out, _ = run(capsys, "group", "-i", str(target), "--normalizer", "--format", "json")
    doc = json.loads(out)
    assert (doc["centralizer_order"], doc["normalizer_order"], doc["quotient_order"]) == (7, 21, 3)


def test_charpoly(capsys):
    code, out, _ = run(capsys, "charpoly", "-i", str(GOLDEN / "ex3.json"), "--coeffs", "1,0,0", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["char_poly"].startswith("y^3")


def test_charpoly_wrong_length(capsys):
    code, _, err = run(capsys, "charpoly", "-i", str(GOLDEN / "ex3.json"), "--coeffs", "1,0")
    assert code == 2 and "coefficients" in err


def test_pfaffian_rejects_non_skew(capsys):
    code, _, err = run(capsys, "pfaffian", "-i", str(GOLDEN / "ex1.json"))
    assert code == 2 and "skew" in err


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "--id", "T3.2", "-i", str(GOLDEN / "ex3.json"), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["theorem_id"] == "T3.2"


def test_verify_suite_subset(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "--only", "T1.2,T7.3")
    assert code == 0
    assert "T1.2   ex1" in out and "FAIL" not in out


def test_verify_needs_input(capsys):
    code, _, err = run(capsys, "verify", "--id", "T3.2")
    assert code == 2 and "needs -i" in err


def test_unknown_theorem_id(capsys):
    code, _, err = run(capsys, "verify", "--id", "X9", "-i", str(GOLDEN / "ex1.json"))
    assert code == 2 and "unknown theorem" in err


def test_unknown_subcommand(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "detpoly", "-i", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in err


def test_bad_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "detpoly", "-i", str(bad))[0] == 2


def test_dependent_basis_file(capsys, tmp_path):
    doc = json.loads((GOLDEN / "ex1.json").read_text())
    doc["basis"].append(doc["basis"][0])
    f = tmp_path / "dep.json"
    f.write_text(json.dumps(doc))
    code, _, err = run(capsys, "detpoly", "-i", str(f))
    assert code == 2 and "dependent" in err


def test_cap_exceeded(capsys):
    code, _, err = run(capsys, "census", "-i", str(GOLDEN / "ex3.json"), "--affine-cap", "10",
                       "--projective-cap", "10")
    assert code == 2 and "cap" in err


def test_small_affine_cap_falls_back_to_projective(capsys):
    code, out, _ = run(capsys, "census", "-i", str(GOLDEN / "ex2.json"), "--affine-cap", "5", "--format", "json")
    assert code == 0 and json.loads(out)["N_affine"] == 9


def test_nonpositive_cap_is_usage_error(capsys):
    assert run(capsys, "rank", "-i", str(GOLDEN / "ex1.json"), "--affine-cap", "0")[0] == 2


def test_seed_sources(capsys, monkeypatch):
    inp = str(GOLDEN / "ex1.json")
    doc = json.loads(run(capsys, "detpoly", "-i", inp, "--format", "json")[1])
    assert (doc["seed"], doc["seed_source"]) == (0, "default")
    monkeypatch.setenv("DETSPACE_SEED", "5")
    doc = json.loads(run(capsys, "detpoly", "-i", inp, "--format", "json")[1])
    assert (doc["seed"], doc["seed_source"]) == (5, "env")
    doc = json.loads(run(capsys, "detpoly", "-i", inp, "--format", "json", "--seed", "9")[1])
    assert (doc["seed"], doc["seed_source"]) == (9, "flag")
    monkeypatch.setenv("DETSPACE_SEED", "abc")
    assert run(capsys, "detpoly", "-i", inp)[0] == 2


def test_header_fields(capsys):
    doc = json.loads(run(capsys, "rank", "-i", str(GOLDEN / "ex2.json"), "--format", "json")[1])
    for key in ("tool", "version", "command", "q", "n", "d", "seed", "seed_source", "caps"):
        assert key in doc
    assert "threads" not in doc


def test_console_script_exit_codes(tmp_path):
    ok = subprocess.run([sys.executable, "-m", "detspace.cli", "detpoly", "-i", str(GOLDEN / "ex1.json")],
                        capture_output=True, text=True)
    assert ok.returncode == 0 and "x1^2*x2 + x1*x2^2" in ok.stdout
    bad = subprocess.run([sys.executable, "-m", "detspace.cli", "detpoly"], capture_output=True, text=True)
    assert bad.returncode == 2


def test_failed_verification_exits_one(capsys, monkeypatch):
    from detspace import cli
    from detspace.theorems import VerdictReport

    def failing(tid, inst, cfg):
        return VerdictReport(tid, inst.describe(), False, {}, {}, [], "forced failure")

    monkeypatch.setattr(cli, "verify", failing)
    code, out, _ = run(capsys, "verify", "--id", "T1.2", "-i", str(GOLDEN / "ex1.json"))
    assert code == 1 and "forced failure" in out
