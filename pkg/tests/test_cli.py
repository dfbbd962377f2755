import json
import subprocess
import sys
from pathlib import Path

import pytest

from demazure_lpp import cli

FIXTURES = Path(__file__).parent / "fixtures"


def run_json(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


def test_rsk_from_json_and_grid(capsys):
    code, data = run_json(capsys, "rsk", str(FIXTURES / "ex_rsk_matrix.json"))
    assert code == 0
    assert data["schema"] == "demazure-lpp/1"
    assert data["P"] == [[1, 1, 1, 1, 2, 3, 3], [2, 3, 3, 4], [4]]
    assert data["Q"] == [[1, 1, 1, 1, 1, 2, 2], [2, 2, 3, 3], [3]]
    assert data["percolation_time"] == 7
    code, grid = run_json(capsys, "rsk", str(FIXTURES / "ex_rsk_matrix.txt"))
    assert grid == data


def test_rsk_inverse_round_trip(capsys):
    code, data = run_json(capsys, "rsk-inverse", str(FIXTURES / "ex_rsk_pair.json"))
    assert code == 0
    assert data["matrix"] == json.loads((FIXTURES / "ex_rsk_matrix.json").read_text())


def test_augmented_pair_inverse(capsys):
    code, data = run_json(capsys, "rsk-inverse", str(FIXTURES / "augmented_pair.json"))
    assert code == 0
    assert sum(map(sum, data["matrix"])) == 10


def test_text_output(capsys):
    assert cli.run(["perc", str(FIXTURES / "ex_rsk_matrix.json"), "--format", "text"]) == 0
    assert capsys.readouterr().out == "7\n"


def test_stdin_matrix(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("1 0\n2 1\n"))
    code, data = run_json(capsys, "perc", "-")
    assert code == 0 and data["percolation_time"] == 3


def test_keys(capsys):
    code, data = run_json(capsys, "keys", "--tableau", "1,3/2")
    assert code == 0
    assert data["key_plus"] == [[1, 3], [3]]
    assert data["key_minus"] == [[1, 2], [2]]
    assert data["is_key"] is False
    for method in ("atoms", "descent", "dilatation"):
        assert run_json(capsys, "keys", "--tableau", "1,3/2", "--method", method)[1]["key_plus"] == [[1, 3], [3]]


def test_char_and_atom(capsys):
    code, data = run_json(capsys, "char", "--mu", "0,1,3")
    assert code == 0 and sum(t["coeff"] for t in data["terms"]) == 15
    code, data = run_json(capsys, "atom", "--mu", "2,2,0")
    assert data["terms"] == [{"coeff": 1, "x_exp": [2, 2, 0], "y_exp": [0, 0, 0]}]


def test_crystal_export(tmp_path, capsys):
    dot = tmp_path / "b.dot"
    assert cli.run(["crystal-export", "--lambda", "2,1,0", "--n", "3", "--output", str(dot)]) == 0
    assert dot.read_text().startswith("digraph")
    code, data = run_json(capsys, "crystal-export", "--lambda", "2,1,0", "--n", "3", "--format", "json")
    assert len(data["vertices"]) == 8 and len(data["edges"]) == 8


def test_mu_tilde(capsys):
    code, data = run_json(capsys, "mu-tilde", "--mu", "1,3,2", "--n", "5", "--q", "4", "--method", "both")
    assert code == 0
    assert data["mu_tilde"] == data["mu_tilde_fast"] == [0, 1, 2, 3, 0]
    assert data["agree"] is True


def test_project(capsys):
    code, data = run_json(capsys, "project", "--word", "1,2,3,1,2", "--n", "4", "--I", "1,2")
    assert code == 0 and data["projection"] == [3, 2, 1, 4]
    code, data = run_json(capsys, "project", "--perm", "4,3,2,1", "--p", "3")
    assert data["projection"] == [3, 2, 1, 4]


def test_verify_kernel(capsys):
    code, data = run_json(capsys, "verify-kernel", "--shape", "staircase", "--n", "2", "--N", "3")
    assert code == 0 and data["status"] == "ok"
    code, data = run_json(capsys, "verify-kernel", "--shape", "augmented", "--n", "3",
                          "--lambda", "3,1", "--N", "3")
    assert code == 0


def test_lpp_exact_to_file(tmp_path, capsys):
    target = tmp_path / "law.json"
    argv = ["lpp", "exact", "--shape", "staircase", "--n", "2", "--u", "0.3,0.2", "--v", "0.2,0.1",
            "--N", "8", "--json", str(target)]
    assert cli.run(argv) == 0
    first = target.read_bytes()
    data = json.loads(first)
    assert data["schema"] == "demazure-lpp/1" and data["bins"][0]["k"] == 0
    assert cli.run(argv) == 0
    assert target.read_bytes() == first


def test_lpp_simulate_is_reproducible(capsys):
    argv = ["lpp", "simulate", "--shape", "rectangle", "--n", "3", "--m", "2", "--trials", "2000", "--seed", "9"]
    assert cli.run(argv) == 0
    first = capsys.readouterr().out
    assert cli.run(argv) == 0
    assert capsys.readouterr().out == first


def test_lpp_compare_exit_codes(capsys):
    base = ["lpp", "compare", "--shape", "staircase", "--n", "2", "--trials", "20000", "--seed", "1"]
    code, data = run_json(capsys, *base)
    assert code == 0 and data["comparison"]["passed"]
    # a p-value can never reach 1, so this always fails
    code, data = run_json(capsys, *base, "--alpha", "1.0")
    assert code == 1 and not data["comparison"]["passed"]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["verify-kernel", "--shape", "truncated", "--n", "5", "--q", "4"],
    ["lpp", "exact", "--shape", "augmented", "--n", "3"],
    ["rsk", "/nonexistent/matrix.json"],
    ["project", "--perm", "1,1,2"],
    ["keys"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert cli.run(argv) == 2
    assert capsys.readouterr().err


def test_console_script_module_entry():
    proc = subprocess.run([sys.executable, "-m", "demazure_lpp.cli", "perc", str(FIXTURES / "ex_rsk_matrix.json"),
                           "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "7\n"
