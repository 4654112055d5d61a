"""Command line interface: output schemas, formats, and exit codes."""

import csv
import io
import json

import pytest

from kacfusion.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


# ------------------------------------------------------------------ happy paths

def test_rootsys_json_schema(capsys):
    code, doc, _ = run_json(capsys, "rootsys", "--type", "G2")
    assert code == 0
    assert set(doc) == {
        "type", "rank", "positive_roots", "coxeter_number",
        "dual_coxeter_number", "lacing", "weyl_order", "marks", "comarks",
        "dual_marks", "cartan_determinant", "node_orbit", "dual_node_orbit",
        "twisted_partner",
    }
    assert doc["twisted_partner"] == "D4^(3)"
    assert doc["weyl_order"] == 12


def test_enumerate_json(capsys):
    code, doc, _ = run_json(capsys, "enumerate", "--type", "A1", "--pq", "5,2")
    assert code == 0
    assert doc["count"] == 8
    assert doc["level"] == "1/2"
    assert doc["all_verified"] is True
    assert {"lam", "nu", "beta", "ybar_sign", "degenerate"} == set(doc["labels"][0])


def test_enumerate_level_flag_matches_pq(capsys):
    # k = 2/5 - 2; negative rationals need the = form so argparse keeps the dash
    code1, doc1, _ = run_json(capsys, "enumerate", "--type", "A1",
                              "--level=-8/5")
    code2, doc2, _ = run_json(capsys, "enumerate", "--type", "A1",
                              "--pq", "2,5")
    assert code1 == code2 == 0
    assert doc1 == doc2


def test_smatrix_verify_passes(capsys):
    code, doc, _ = run_json(capsys, "smatrix", "--type", "A1", "--pq", "5,2",
                            "--verify")
    assert code == 0
    assert doc["size"] == 8
    assert doc["relations"]["max_error"] < 1e-9
    assert len(doc["matrix"]) == 8 and len(doc["matrix"][0][0]) == 2


def test_tmatrix_csv(capsys):
    code, out, _ = run(capsys, "tmatrix", "--type", "A1", "--pq", "3,4",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["exponent", "re", "im"]
    assert len(rows) == 9


def test_verify_reports_residuals(capsys):
    code, doc, _ = run_json(capsys, "verify", "--type", "A2", "--pq", "4,3")
    assert code == 0
    assert doc["pass"] is True
    assert doc["phase_mode_max_diff"] < 1e-12
    assert set(doc["relations"]) >= {
        "unitarity_error", "s_squared_error", "st_cubed_error", "max_error",
    }


def test_chars_eval(capsys):
    code, doc, _ = run_json(capsys, "chars-eval", "--type", "A1",
                            "--pq", "5,2", "--tau", "2i", "--x", "0.13")
    assert code == 0
    assert len(doc["values"]) == 8
    for entry in doc["values"]:
        assert set(entry) == {"value", "tail_bound", "N"}
        assert entry["tail_bound"] < 1e-8


def test_theta_check(capsys):
    code, doc, _ = run_json(capsys, "theta-check", "--type", "A1",
                            "--seed", "3")
    assert code == 0
    assert doc["pass"] is True
    assert doc["scalar_residual"] < 1e-10
    assert doc["lattice_residual"] < 1e-10


def test_wlabels(capsys):
    code, doc, _ = run_json(capsys, "wlabels", "--type", "A1", "--pq", "2,5")
    assert code == 0
    assert doc["count"] == 2
    assert doc["central_charge"] == "-22/5"


def test_fusion_ising(capsys):
    code, out, _ = run(capsys, "fusion", "--type", "A1", "--pq", "3,4")
    assert code == 0
    assert "[1] x [1] = [0] + [2]" in out
    code, doc, _ = run_json(capsys, "fusion", "--type", "A1", "--pq", "3,4")
    assert code == 0
    assert doc["vacuum"] == 0
    assert {"a": 1, "b": 1, "c": 2, "N": 1} in doc["table"]
    assert doc["central_charge"] == "1/2"


def test_factorize_clean(capsys):
    code, doc, _ = run_json(capsys, "factorize", "--type", "A1", "--pq", "3,5")
    assert code == 0
    assert doc["hypothesis_ok"] is True and doc["equal"] is True


# ------------------------------------------------------------------- exit codes

def test_factorize_hypothesis_violation_exits_two(capsys):
    code, doc, err = run_json(capsys, "factorize", "--type", "A1",
                              "--pq", "5,2")
    assert code == 2
    assert doc["hypothesis_ok"] is False
    assert "hypothesis violated" in err
    assert "gcd" in err


def test_verification_failure_exits_two(capsys):
    code, _, err = run(capsys, "verify", "--type", "A1", "--pq", "5,2",
                       "--tol", "1e-30")
    assert code == 2
    assert "exceeds tolerance" in err


def test_smatrix_verify_failure_exits_two(capsys):
    code, _, err = run(capsys, "smatrix", "--type", "A1", "--pq", "5,2",
                       "--verify", "--tol", "1e-30")
    assert code == 2


def test_bad_inputs_exit_one(capsys):
    assert run(capsys, "rootsys", "--type", "Z9")[0] == 1
    assert run(capsys, "enumerate", "--type", "A1")[0] == 1
    assert run(capsys, "enumerate", "--type", "A1", "--pq", "4,2")[0] == 1
    assert run(capsys, "enumerate", "--type", "A1", "--pq", "abc")[0] == 1
    assert run(capsys, "enumerate", "--type", "A1", "--level", "x/y")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "chars-eval", "--type", "A2", "--pq", "4,3",
               "--x", "0.1")[0] == 1  # wrong coordinate count


def test_wlabels_coprincipal_exits_one(capsys):
    code, _, err = run(capsys, "wlabels", "--type", "B2", "--pq", "5,2")
    assert code == 1
    assert "principal" in err


# ---------------------------------------------------------------- determinism

def test_identical_seeds_identical_reports(capsys):
    a = run(capsys, "verify", "--type", "A1", "--pq", "2,5", "--seed", "11",
            "--format", "json")
    b = run(capsys, "verify", "--type", "A1", "--pq", "2,5", "--seed", "11",
            "--format", "json")
    assert a == b
    c = run(capsys, "theta-check", "--seed", "9", "--format", "json")
    d = run(capsys, "theta-check", "--seed", "9", "--format", "json")
    assert c == d


def test_json_keys_sorted(capsys):
    _, out, _ = run(capsys, "rootsys", "--type", "A2", "--format", "json")
    doc = json.loads(out)
    assert list(doc) == sorted(doc)


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("KACFUSION_THREADS", "2")
    code, doc, _ = run_json(capsys, "smatrix", "--type", "A1", "--pq", "3,4")
    assert code == 0
    assert doc["relations"]["max_error"] < 1e-9
