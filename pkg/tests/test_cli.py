import json
import subprocess
import sys
from pathlib import Path

import pytest

from fibertool import cli, count
from fibertool.errors import ParseError

CURVES = str(Path(__file__).parents[1] / "src" / "fibertool" / "data" / "curves.jsonl")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_count_m_with_oracle(capsys):
    code, out = run(capsys, "count-m", "--poly", "t^2 - 1", "--B", "99", "--oracle")
    assert code == 0
    rep = out["reports"][0]
    assert rep["count"] == 21 and rep["match"] is True
    assert all(isinstance(t, str) for t in rep["parameters"])


def test_reduce_command(capsys):
    code, out = run(capsys, "reduce", "--curve", "x - y^3", "--k", "0", "--param-p", "t^3", "--param-q", "t")
    assert code == 0
    assert out["normal_form"] == {"a": "1", "b": "0"} and out["integral_inverse"] is True


def test_pell_perfect_square(capsys):
    code = cli.main(["pell", "--d", "4"])
    captured = capsys.readouterr()
    assert code == 2 and captured.out == ""
    assert "PerfectSquare" in captured.err


def test_pell_grid(capsys):
    code, out = run(capsys, "pell", "--d", "2", "--B-grid", "10:1e6:x10")
    assert code == 0
    assert [r["count"] for r in out["counts"]] == [6, 14, 18, 22, 26, 34]
    assert out["fundamental_solution"] == [3, 2]
    assert out["growth"]["max_residual"] <= 4


def test_below_threshold_prints_B0(capsys):
    code = cli.main(["count-m", "--poly", "t^4 - 100*t^2", "--B", "1000"])
    out = json.loads(capsys.readouterr().out)
    assert code == 2 and out["B0"] == count.find_B0(count.UniPoly.parse("t^4 - 100*t^2"), "1/2")


def test_count_n_corpus(capsys, tmp_path):
    dest = tmp_path / "report.json"
    code, _ = run(capsys, "count-n", "--corpus", CURVES, "--B", "60", "--oracle", "--counts-only",
                  "--skip-tag", "complex-singular-parameter", "--out", str(dest))
    assert code == 0
    report = json.loads(dest.read_text())
    assert len(report["curves"]) >= 20
    for entry in report["curves"]:
        row = entry["reports"][0]
        assert row.get("match", True) is True


def test_count_n_surfaces_mismatch(capsys):
    code, out = run(capsys, "count-n", "--curve", "x^2 - y*(y + 2)^2", "--param-p", "t^3 + 2*t",
                    "--param-q", "t^2", "--B", "30", "--oracle", "--counts-only")
    assert code == 1
    assert out["curves"][0]["reports"][0]["missing"] == [[0, -2]]


def test_count_n_bad_param(capsys):
    code, _ = run(capsys, "count-n", "--curve", "x - y^3", "--param-p", "t", "--param-q", "t", "--B", "5")
    assert code == 2


def test_classify(capsys):
    code, out = run(capsys, "classify", "--p", "t^2 + 2*s^2", "--q", "2*t*s", "--r", "t^2 - 2*s^2")
    assert code == 0 and out["class"] == "pell-like"
    code, out = run(capsys, "classify", "--param-p", "t^3", "--param-q", "t")
    assert out["class"] == "line-like"


def test_bench(capsys):
    code, out = run(capsys, "bench", "--corpus", CURVES, "--B", "40", "--skip-tag", "complex-singular-parameter")
    assert code == 0
    assert all(r["oracle_seconds"] >= 0 and r["param_candidates"] >= 0 for r in out["rows"])


def test_bench_aborts_on_mismatch(capsys):
    code = cli.main(["bench", "--curve", "x^2 - y*(y + 2)^2", "--param-p", "t^3 + 2*t",
                     "--param-q", "t^2", "--B", "10"])
    assert code == 1


def test_fixtures_command(capsys):
    code, out = run(capsys, "fixtures")
    assert code == 0 and out["failed"] == []


def test_parse_errors(capsys):
    assert cli.main(["count-m", "--poly", "t^^2", "--B", "3"]) == 2
    assert cli.main(["count-m", "--poly", "t^2", "--B", "3", "--epsilon", "-1"]) == 2
    assert cli.main(["count-m", "--poly", "t^2", "--B", "3", "--workers", "0"]) == 2
    assert cli.main(["count-n", "--corpus", "/nonexistent.jsonl", "--B", "3"]) == 2


def test_grid_syntax():
    assert cli.parse_grid("10:1e6:x10") == [10, 100, 1000, 10**4, 10**5, 10**6]
    assert cli.parse_grid("1:10:+3") == [1, 4, 7, 10]
    assert cli.parse_grid("8,27,64") == [8, 27, 64]
    for bad in ("1:10", "1:10:x1", "1.5:10:x2", "a:b:xc"):
        with pytest.raises(ParseError):
            cli.parse_grid(bad)


def test_deterministic_output(capsys):
    argv = ["count-n", "--curve", "x - y^2 - y", "--param-p", "4*t^2 + 2*t", "--param-q", "2*t", "--B", "5000"]
    cli.main(argv)
    first = capsys.readouterr().out
    cli.main(argv + ["--workers", "2"])
    assert capsys.readouterr().out.replace('"workers": 2', "") == first


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fibertool.cli", "pell", "--d", "7", "--B", "100"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["fundamental_solution"] == [8, 3]
