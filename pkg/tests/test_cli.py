import io
import json
import subprocess
import sys

import pytest

from haarlab.cli import main

BRANCH = {"resolution": 2, "values": ["4", "0", "0", "0"]}


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin if isinstance(stdin, str) else json.dumps(stdin)))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_example(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["analyze"], BRANCH)
    assert code == 0
    assert out == '{"coeffs":{"root":"1","0/0":"1","1/0":"1"}}\n'


def test_synthesize_round_trip_is_byte_identical(capsys, monkeypatch, tmp_path):
    source = tmp_path / "f.json"
    source.write_text(json.dumps({"resolution": 3, "values": ["1/2", "-3", "0", "7/4", "2", "2", "-1/3", "5"]}))
    _, coeffs, _ = run(capsys, monkeypatch, ["analyze", "--input", str(source)])
    code, back, _ = run(capsys, monkeypatch, ["synthesize", "--resolution", "3", "--input", coeffs.strip()])
    assert code == 0
    canonical = json.dumps(json.loads(source.read_text()), separators=(",", ":")) + "\n"
    assert back == canonical


def test_norm_threshold_project(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["norm"], {"f": BRANCH, "intervals": ["1/0", "1/1"]})
    assert json.loads(out) == {"norm": "1", "on": {"1/0": "1", "1/1": "0"}}
    _, out, _ = run(capsys, monkeypatch, ["threshold", "--delta", "1"], BRANCH)
    assert json.loads(out)["S"] == ["root", "0/0", "1/0"]
    _, out, _ = run(capsys, monkeypatch, ["project"], {"f": BRANCH, "S": ["root", "1/0"]})
    assert json.loads(out) == {"projection": {"resolution": 2, "values": ["3", "-1", "1", "1"]}, "norm": "3/2"}


def test_enlarge_and_construct(capsys, monkeypatch):
    payload = {"f": BRANCH, "A": ["1/0"]}
    _, out, _ = run(capsys, monkeypatch, ["enlarge", "--epsilon", "1/2"], payload)
    assert json.loads(out) == {"E": ["root", "0/0", "1/0"], "certificate": None}
    code, out, _ = run(capsys, monkeypatch, ["construct-e", "--delta", "1", "--epsilon", "1/4"], payload)
    result = json.loads(out)
    assert code == 0 and "1/0" in result["E"] and result["certificate"]["satisfied"] is True
    band = {"f": {"resolution": 2, "values": ["2", "-2", "0", "0"]}, "A": ["1/0"]}
    _, out, _ = run(capsys, monkeypatch, ["enlarge", "--epsilon", "1/2", "--rho", "3/4"], band)
    assert json.loads(out)["E"] == ["1/0"]


def test_symmetrize(capsys, monkeypatch):
    payload = {"f": {"resolution": 2, "values": ["2", "-2", "0", "0"]}, "g": {"resolution": 1, "values": ["0", "0"]}}
    _, out, _ = run(capsys, monkeypatch, ["symmetrize"], payload)
    result = json.loads(out)
    assert result["f_tilde"]["values"] == ["2", "-2", "2", "-2"]
    assert result["trace"] == [{"interval": "0/0", "branch": "left"}]
    assert (result["ratio_before"], result["ratio_after"]) == ("1", "1")


def test_example_intro(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["example", "--family", "intro", "--n", "1"])
    assert code == 0 and json.loads(out)["norms"] == {"f": "1", "projection": "3/2"}
    _, out, _ = run(capsys, monkeypatch, ["example", "--family", "spread", "--n", "2", "--epsilon", "3/4"])
    result = json.loads(out)
    assert result["norms"]["f"] == "1" and result["enlargement_is_trivial"] is True


def test_verify_exit_code_and_determinism(capsys, monkeypatch):
    argv = ["verify", "thm-3.8", "--trials", "100", "--seed", "1", "--resolution", "6", "--json"]
    code, first, _ = run(capsys, monkeypatch, argv)
    assert code == 0
    _, second, _ = run(capsys, monkeypatch, argv)
    assert first == second
    report = json.loads(first)
    assert report["violations"] == 0 and report["trials"] == 100


def test_verify_reports_violations(capsys, monkeypatch):
    from fractions import Fraction

    from haarlab.verification import checks

    monkeypatch.setattr(checks, "BANDED_CONSTANT", Fraction(1, 10**6))
    code, out, _ = run(capsys, monkeypatch, ["verify", "thm-3.8", "--trials", "20", "--seed", "1", "--resolution", "5"])
    assert code == 1 and json.loads(out)["violations"] > 0


def test_pretty_table(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["verify", "lemma-3.1", "--trials", "5", "--resolution", "4", "--pretty"])
    assert code == 0 and out.startswith("PASS lemma-3.1")
    _, out, _ = run(capsys, monkeypatch, ["analyze", "--pretty"], BRANCH)
    assert out.splitlines()[1].split() == ["coeffs.0/0", "1"]


@pytest.mark.parametrize(
    "argv, stdin, code, err_code",
    [
        (["analyze"], "not json", 3, "schema"),
        (["analyze"], {"resolution": 1, "values": [0.5, 1]}, 3, "schema"),
        (["project"], {"f": BRANCH}, 3, "schema"),
        (["threshold", "--delta", "0"], BRANCH, 4, "nonpositive-threshold"),
        (["construct-e", "--delta", "2", "--epsilon", "1/2"], {"f": BRANCH, "A": ["1/0"]}, 4, "precondition"),
        (["enlarge", "--epsilon", "1/2"], {"f": BRANCH, "A": ["1/1"]}, 4, "zero-coefficient"),
        (["threshold"], BRANCH, 2, "usage"),
    ],
)
def test_error_payloads(capsys, monkeypatch, argv, stdin, code, err_code):
    got, _, err = run(capsys, monkeypatch, argv, stdin)
    assert got == code
    assert json.loads(err.strip().splitlines()[-1])["error"]["code"] == err_code


def test_argparse_usage_errors(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["analyze", "--epsilon", "0.5"]) == 2
    assert main(["example", "--family", "intro", "--n", "9"]) == 4


def test_output_file(capsys, monkeypatch, tmp_path):
    target = tmp_path / "out.json"
    run(capsys, monkeypatch, ["analyze", "--output", str(target)], BRANCH)
    assert json.loads(target.read_text()) == {"coeffs": {"root": "1", "0/0": "1", "1/0": "1"}}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "haarlab", "example", "--family", "intro", "--n", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["norms"]["projection"] == "17/8"
