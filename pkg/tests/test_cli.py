import json

import pytest

from cubelab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_analyze_json(capsys):
    code, out = run(capsys, "analyze", "subcube:3,5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["mean"] == "1/8"
    assert data["vertex_boundary"] == {"vb0": "3/8", "vb1": "1/8"}


def test_analyze_truth_table(capsys):
    code, out = run(capsys, "analyze", "paper5")
    assert code == 0
    assert "mean: 1/2" in out


def test_spectrum_stdout_and_csv(capsys, tmp_path):
    code, out = run(capsys, "spectrum", "maj:3")
    assert code == 0
    assert "mask,numerator,denominator_log2" in out
    assert "1,2,3" in out  # f-hat({1}) = 2/8 = 1/4
    path = tmp_path / "spec.csv"
    code, out = run(capsys, "spectrum", "maj:3", "--csv", str(path))
    assert code == 0
    assert path.read_text().count("\n") == 9


def test_chernoff_command(capsys):
    code, out = run(capsys, "chernoff", "ltf:1,1,1;0", "--c", "1/3")
    assert code == 0
    assert "delta for factor 1/3: 1" in out
    assert "beta=1" in out


def test_correlate_command(capsys):
    code, out = run(capsys, "correlate", "paper5")
    assert code == 0
    assert "cov=3/32" in out
    assert "cov=1/8" in out


def test_corpus_gen_and_verify(capsys, tmp_path):
    corpus_path = tmp_path / "c.json"
    code, out = run(capsys, "corpus", "gen", "--kind", "random-halfspace",
                    "--seed", "5", "--count", "3", "--n-lo", "8", "--n-hi", "9",
                    "--out", str(corpus_path))
    assert code == 0 and "wrote 3 entries" in out
    report_path = tmp_path / "report.json"
    code, out = run(capsys, "verify", "--suite", "exact-identities",
                    "--corpus", str(corpus_path), "--out", str(report_path))
    assert code == 0
    assert "failures" in out
    payload = json.loads(report_path.read_text())
    assert payload["suite"] == "exact-identities"


def test_verify_pin_flow(capsys, tmp_path):
    corpus_path = tmp_path / "c.json"
    run(capsys, "corpus", "gen", "--kind", "random-halfspace", "--seed", "6",
        "--count", "3", "--n-lo", "8", "--n-hi", "9", "--out", str(corpus_path))
    constants_path = tmp_path / "pins.json"
    code, out = run(capsys, "verify", "--suite", "chernoff",
                    "--corpus", str(corpus_path),
                    "--pin", "--constants", str(constants_path))
    assert code == 0
    assert constants_path.exists()
    code, out = run(capsys, "verify", "--suite", "chernoff",
                    "--corpus", str(corpus_path),
                    "--constants", str(constants_path))
    assert code == 0


def test_verify_exit_code_reflects_failures(capsys, tmp_path):
    # paper-examples carries the heavy-light family check, which is red by
    # construction at its pinned size; the exit code must say so
    code, out = run(capsys, "verify", "--suite", "paper-examples",
                    "--corpus", "builtin")
    assert code == 1
    assert "EX54" in out
