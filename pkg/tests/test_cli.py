import json
import subprocess
import sys

import pytest

from droopjr import parse_election
from droopjr.cli import main
from droopjr.harness import COLUMNS, WitnessRegression, parse_csv

MES_TEXT = "4 7 2\n0\n0\n0\n1\n1\n1\n1\n"


@pytest.fixture
def election(tmp_path):
    path = tmp_path / "e.txt"
    path.write_text(MES_TEXT)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rule_mes(capsys, election):
    code, out, _ = run(capsys, "rule", "--rule", "mes", "--election", election)
    assert code == 0
    assert out.splitlines()[:2] == ["rule mes", "committee 1"]
    code, out, _ = run(capsys, "rule", "--rule", "mes", "--quota", "droop", "--election", election)
    assert "committee 0,1" in out and "7/5" in out
    code, out, _ = run(capsys, "rule", "--rule", "ees", "--budget", "7/5", "--election", election)
    assert "committee 0,1" in out


@pytest.mark.parametrize(
    "rule",
    ["av", "pav", "ls-pav", "gjcr", "gcr", "mes-completed", "ees-completed", "seq-phragmen", "monroe", "greedy-monroe"],
)
def test_every_rule_runs(capsys, election, rule):
    code, out, _ = run(capsys, "rule", "--rule", rule, "--quota", "droop", "--election", election)
    assert code == 0
    assert out.splitlines()[1].startswith("committee ")


def test_rule_tie_script(capsys, tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("3 3 1\n0,1\n0,1\n2\n")
    script = tmp_path / "tie.json"
    script.write_text(json.dumps({"candidate": [[1]]}))
    code, out, _ = run(capsys, "rule", "--rule", "av", "--election", str(path), "--tie", f"script:{script}")
    assert code == 0 and "committee 1" in out


def test_check_lines(capsys, election):
    code, out, _ = run(capsys, "check", "--election", election, "--committee", "1", "--axiom", "JR")
    assert code == 0
    assert out.splitlines() == ["JR hare PASS", "JR droop FAIL ell=1 T={0} S={0,1,2}"]
    code, out, _ = run(capsys, "check", "--election", election, "--committee", "1")
    assert len(out.splitlines()) == 14
    code, out, _ = run(
        capsys, "check", "--election", election, "--committee", "1", "--axiom", "EJR+", "--quota", "droop", "--machine"
    )
    assert out.startswith("axiom=EJR+ quota=droop ell=1 T={0} S={0,1,2} note=")


def test_check_empty_committee(capsys, election):
    code, out, _ = run(capsys, "check", "--election", election, "--committee", "", "--axiom", "JR", "--quota", "hare")
    assert code == 0 and out.startswith("JR hare FAIL")


def test_price(capsys, election):
    code, out, _ = run(capsys, "price", "--election", election, "--committee", "0,1")
    lines = out.splitlines()
    assert lines[0].startswith("PRICEABLE p=") and len(lines) == 8
    code, out, _ = run(capsys, "price", "--election", election, "--committee", "2")
    assert out.strip() == "NOT PRICEABLE"


def test_sample_echoes_seed(capsys, tmp_path):
    code, out, _ = run(capsys, "sample", "--model", "urn", "--p", "0.5", "--alpha", "0.2", "-m", "6", "-n", "5", "--seed", "41")
    assert code == 0
    assert out.startswith("# model=urn") and "seed=41" in out.splitlines()[0]
    e = parse_election(out)
    assert (e.m, e.n) == (6, 5)
    target = tmp_path / "s.txt"
    run(capsys, "sample", "--model", "ic", "--p", "0.5", "-m", "4", "-n", "3", "-k", "2", "--seed", "1", "--out", str(target))
    assert parse_election(target.read_text()).k == 2


def test_sample_bad_parameters(capsys):
    code, _, err = run(capsys, "sample", "--model", "noise", "--p", "0.5", "-m", "4", "-n", "3", "--seed", "1")
    assert code == 1 and "phi" in err


def test_experiment_writes_csv_and_plot(capsys, tmp_path):
    out = tmp_path / "r.csv"
    svg = tmp_path / "r.svg"
    code, text, _ = run(
        capsys, "experiment", "--id", "1", "--reps", "1", "--step", "1", "--seed", "5", "--out", str(out), "--plot", str(svg)
    )
    assert code == 0
    recs = parse_csv(out.read_text())
    assert len(recs) == 12
    assert out.read_text().splitlines()[0] == ",".join(COLUMNS)
    assert svg.read_text().startswith("<svg")


def test_witness_all(capsys):
    code, out, _ = run(capsys, "witness")
    assert code == 0
    assert sum(1 for line in out.splitlines() if " OK " in line) == 8


def test_witness_regression_exit_code(capsys, monkeypatch):
    from droopjr.harness import corpus

    def broken():
        raise WitnessRegression("broken: numbers changed")

    monkeypatch.setitem(corpus.CORPUS, "gjcr-not-droop-jr", broken)
    code, out, _ = run(capsys, "witness", "--name", "gjcr-not-droop-jr")
    assert code == 2 and "REGRESSION" in out


def test_assertion_exit_code(capsys, monkeypatch, election):
    import droopjr.cli as cli

    def boom(*a, **k):
        raise AssertionError("ledger overdrawn")

    monkeypatch.setattr(cli, "check", boom)
    code, _, err = run(capsys, "check", "--election", election, "--committee", "1")
    assert code == 2 and "ledger overdrawn" in err


def test_bad_election_file(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 2 3\n0\n1\n")
    code, _, err = run(capsys, "rule", "--rule", "av", "--election", str(path))
    assert code == 1 and "line 1" in err


def test_console_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "droopjr.cli", "witness", "--name", "ejrplus-fjr-incomparable"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert "ejrplus-fjr-incomparable OK" in res.stdout
