from __future__ import annotations

import json
import subprocess
import sys

import pytest

from zonotopal import cli, suites
from zonotopal.fileio import EXAMPLE_GRAPH, EXAMPLE_MATRIX


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def matrix_file(tmp_path):
    def make(text, name="m.txt"):
        p = tmp_path / name
        p.write_text(text)
        return p
    return make


# -- subcommands on the fixtures ---------------------------------------------------------


def test_hilbert(capsys):
    code, rep = run_json(capsys, "hilbert", "--matrix", EXAMPLE_MATRIX, "--k", 1)
    assert code == 0
    assert rep["results"]["coefficients"] == [1, 2, 3, 3, 1]
    assert rep["results"]["dimension"] == 10
    assert rep["results"]["tutte_identity"] is True
    code, out, _ = run(capsys, "hilbert", "--matrix", EXAMPLE_MATRIX, "--k", -1)
    assert "1 + q" in out


def test_tutte(capsys):
    code, rep = run_json(capsys, "tutte", "--matrix", EXAMPLE_MATRIX)
    assert code == 0
    assert rep["results"]["text"] == "x + y + x^2 + xy + y^2"
    assert rep["results"]["coefficients"] == [[0, 1, 1], [1, 1, 0], [1, 0, 0]]


def test_zonotope(capsys):
    code, rep = run_json(capsys, "zonotope", "--matrix", EXAMPLE_MATRIX)
    r = rep["results"]
    assert (r["lattice_points"], r["interior_lattice_points"], r["volume"]) == (10, 2, "5")
    code, rep = run_json(capsys, "zonotope", "--matrix", EXAMPLE_MATRIX, "--volume")
    assert set(rep["results"]) == {"volume"}


def test_subalgebra(capsys):
    code, rep = run_json(capsys, "subalgebra", "--matrix", EXAMPLE_MATRIX)
    assert rep["results"]["coefficients"] == [1, 2, 3, 3, 1]


def test_reconstruct_strips_zero_columns(capsys, matrix_file):
    f = matrix_file("2 3\n1 0 1\n0 0 -1\n")
    code, rep = run_json(capsys, "reconstruct", "--matrix", f, "--seed", 4)
    assert code == 0
    assert rep["results"]["zero_columns_stripped"] == 1
    assert rep["results"]["matches_columns"] is True
    assert rep["seed"] == 4


def test_zequiv_identity(capsys):
    code, rep = run_json(capsys, "zequiv", "--a", EXAMPLE_MATRIX, "--b", EXAMPLE_MATRIX)
    w = rep["results"]["witness"]
    assert rep["results"]["equivalent"] and rep["flags"]["verdict"] == "exact"
    assert w["g"] == [["1", "0"], ["0", "1"]] and w["perm"] == [0, 1, 2, 3]


def test_zequiv_cross_ratio(capsys, matrix_file):
    a = matrix_file("2 4\n1 0 1 1\n0 1 1 2\n", "a.txt")
    b = matrix_file("2 4\n1 0 1 1\n0 1 1 3\n", "b.txt")
    code, rep = run_json(capsys, "zequiv", "--a", a, "--b", b)
    assert code == 0
    assert rep["results"]["equivalent"] is False and rep["results"]["mode"] == "exact"


def test_zequiv_unimodular(capsys, matrix_file):
    # the same graph with vertex 1 removed instead of vertex 0
    b = matrix_file("2 4\n-1 -1 0 0\n0 1 1 1\n")
    code, rep = run_json(capsys, "zequiv", "--a", EXAMPLE_MATRIX, "--b", b, "--unimodular")
    assert code == 0 and rep["results"]["equivalent"]


def test_graph(capsys):
    code, out, _ = run(capsys, "graph", "--edges", EXAMPLE_GRAPH, "--forests")
    assert code == 0 and out.strip() == "10"
    code, out, _ = run(capsys, "graph", "--edges", EXAMPLE_GRAPH, "--trees")
    assert out.strip() == "5"
    code, rep = run_json(capsys, "graph", "--edges", EXAMPLE_GRAPH, "--emit-matrix")
    assert rep["results"]["matrix"] == [["1", "0", "-1", "-1"], ["0", "1", "1", "1"]]


def test_emitted_matrix_is_a_valid_matrix_file(capsys, matrix_file):
    code, out, _ = run(capsys, "graph", "--edges", EXAMPLE_GRAPH, "--emit-matrix")
    f = matrix_file(out)
    code, rep = run_json(capsys, "hilbert", "--matrix", f, "--k", 0)
    assert rep["results"]["coefficients"] == [1, 2, 2]


def test_reduce(capsys, matrix_file):
    f = matrix_file("2 3\n1 0 0\n0 1 1\n")
    code, rep = run_json(capsys, "reduce", "--matrix", f)
    assert rep["results"]["matrix"] == [["1", "1"]]
    assert rep["results"]["bridge_columns"] == [0]


def test_verify_worked_example(capsys):
    code, out, _ = run(capsys, "verify", "--paper-example")
    assert code == 0 and "[PASS]" in out


def test_verify_small_corpus(capsys):
    code, rep = run_json(capsys, "verify", "--corpus", 3, "--seed", 1)
    assert code == 0 and rep["results"]["passed"]
    assert len(rep["results"]["checks"]) == len(suites.SUITES)


# -- reports ------------------------------------------------------------------------------------


def test_json_round_trip_and_reproducible(capsys):
    argv = ["reconstruct", "--matrix", EXAMPLE_MATRIX, "--seed", 2, "--json"]
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2
    report = cli.RunReport.from_json(out1)
    assert report.to_json() == out1.rstrip("\n")
    assert report.inputs_digest == json.loads(out1)["inputs_digest"]


# -- exit codes ------------------------------------------------------------------------------------


def test_parse_error_exit_1(capsys, matrix_file):
    f = matrix_file("2 2\n1 0.5\n0 1\n")
    code, _, err = run(capsys, "tutte", "--matrix", f)
    assert code == 1 and "error" in err


def test_missing_file_exit_1(capsys, tmp_path):
    code, _, _ = run(capsys, "tutte", "--matrix", tmp_path / "missing.txt")
    assert code == 1


def test_rank_deficient_exit_1(capsys, matrix_file):
    f = matrix_file("2 2\n1 1\n1 1\n")
    code, _, err = run(capsys, "hilbert", "--matrix", f, "--k", 0)
    assert code == 1 and "rank" in err


def test_bad_graph_exit_1(capsys, matrix_file):
    f = matrix_file("2 1\n0 7\n")
    assert run(capsys, "graph", "--edges", f, "--forests")[0] == 1


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["hilbert", "--matrix", str(EXAMPLE_MATRIX)])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["graph", "--edges", str(EXAMPLE_GRAPH)])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 1


def test_guard_exit_2(capsys, matrix_file):
    f = matrix_file("1 21\n" + " ".join(["1"] * 21) + "\n")
    code, _, err = run(capsys, "tutte", "--matrix", f)
    assert code == 2 and "guard" in err


def test_verification_failure_exit_3(capsys, monkeypatch):
    failing = suites.CheckResult("worked example", False, 1, ["forced"])
    monkeypatch.setattr(suites, "worked_example", lambda: failing)
    code, out, _ = run(capsys, "verify", "--paper-example")
    assert code == 3 and "[FAIL]" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zonotopal.cli", "graph", "--edges", str(EXAMPLE_GRAPH),
                           "--trees"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "5"


def test_threads_do_not_change_results(capsys):
    _, serial = run_json(capsys, "verify", "--corpus", 2, "--seed", 5)
    _, parallel = run_json(capsys, "verify", "--corpus", 2, "--seed", 5, "--threads", 2)
    assert serial["results"] == parallel["results"]
