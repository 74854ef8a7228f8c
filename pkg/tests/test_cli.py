import json
import subprocess
import sys
from fractions import Fraction

import pytest

from unified_apostol.cli import EXIT_DOMAIN, EXIT_USAGE, main

BERN = ["gen", "--k", "1", "--m", "1", "--r", "1", "--alphas", "1", "--log-a", "0", "--log-b", "1", "--log-c", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_csv_example(capsys):
    code, out, _ = run(capsys, *BERN, "--order", "2", "--format", "csv")
    assert code == 0
    assert out == "0,1\n1,-1/2,1\n2,1/6,-1,1\n"


def test_gen_numbers_example(capsys):
    code, out, _ = run(capsys, *BERN, "--order", "2", "--numbers")
    assert (code, out) == (0, "1,-1/2,1/6\n")


def test_gen_pole_exit_code(capsys):
    code, out, err = run(capsys, "gen", "--k", "0", "--m", "1", "--alphas", "1", "--order", "3")
    assert code == EXIT_DOMAIN
    assert "pole of order 1" in err
    assert out == ""


def test_gen_at_point_and_negative_flags(capsys):
    code, out, _ = run(capsys, *BERN[:-6], "--log-a", "-1/2", "--order", "2", "--at", "-1/3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["at"] == "-1/3"
    assert doc["params"]["log_a"] == "-1/2"
    assert len(doc["values"]) == 3


def test_gen_json_round_trip(capsys):
    code, out, _ = run(capsys, *BERN, "--order", "6", "--format", "json")
    doc = json.loads(out)
    polys = [[Fraction(c) for c in p] for p in doc["polynomials"]]
    assert polys[6][0] == Fraction(1, 42)
    assert doc["order"] == 6
    assert json.loads(json.dumps(doc)) == doc


def test_gen_table(capsys):
    code, out, _ = run(capsys, *BERN, "--order", "1", "--format", "table")
    assert code == 0 and out.splitlines()[0].startswith("M_0(x) = 1")


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--k", "x", "--m", "1", "--alphas", "1"],
        ["gen", "--k", "1", "--m", "0", "--alphas", "1"],
        ["gen", "--k", "1", "--m", "1", "--alphas", "1,abc"],
        ["gen", "--k", "1", "--m", "1", "--r", "2", "--alphas", "1"],
        ["verify", "--suite", "nope"],
        ["basis", "--family", "genstirling2", "--n", "3"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_basis_examples(capsys):
    code, out, _ = run(capsys, "basis", "--family", "stirling2", "--n", "4")
    assert code == 0
    assert out.splitlines()[-1] == "4,0,1,7,6,1"
    _, out, _ = run(capsys, "basis", "--family", "hermite", "--n", "2")
    assert out == "-2,0,4\n"
    _, out, _ = run(capsys, "basis", "--family", "stirling1", "--n", "3")
    assert out.splitlines()[-1] == "3,0,2,-3,1"


def test_basis_generalized_and_lah(capsys):
    code, out, _ = run(capsys, "basis", "--family", "genstirling2", "--n", "2", "--nodes", "1,2")
    assert code == 0 and out.splitlines()[-1] == "2,1,3,1"
    code, out, _ = run(capsys, "basis", "--family", "lah", "--n", "3", "--r", "1",
                       "--nodes", "1/2", "--target-nodes", "1/3,1/3,1/3", "--format", "json")
    assert code == 0
    assert json.loads(out)["triangle"][2] == ["0", "1/6"]


def test_bbh_example_and_singular(capsys):
    code, out, _ = run(capsys, "bbh", "--x", "1", "--a", "1", "--b", "2", "--k", "1", "--m", "1", "--order", "2")
    assert (code, out) == (0, "0,1/2,3/2\n")
    code, _, err = run(capsys, "bbh", "--x", "1", "--a", "-1", "--b", "2", "--k", "1")
    assert code == EXIT_DOMAIN and "1 + a*x = 0" in err


def test_verify_empty(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "0", "--report", "json")
    assert code == 0
    assert json.loads(out)["reports"] == []


def test_verify_table1_reports_both_signs(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "table1", "--samples", "1", "--report", "json")
    assert code == 0
    row13 = [r for r in json.loads(out)["reports"] if r["id"] == "TABLE1_ROW(13)"]
    assert row13 and {v["verdict"] for v in row13[0]["variants"]} == {"PASS", "FAIL"}
    assert any("minus sign" in n for n in row13[0]["notes"])


def test_verify_fails_for_wrong_factorial_mode(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "bbh", "--samples", "3", "--factorial-mode", "mk-fact")
    assert code == 1


def test_verify_report_schema(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lah", "--samples", "2", "--report", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) >= {"params", "order", "reports"}
    for r in doc["reports"]:
        assert set(r) >= {"id", "equation", "params", "verdict", "residual", "notes"}
        assert r["verdict"] in ("PASS", "INCONCLUSIVE")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "unified_apostol", "bbh", "--x", "1", "--a", "1", "--b", "2",
                           "--k", "1", "--order", "2"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "0,1/2,3/2\n"
