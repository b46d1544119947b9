import json
import subprocess
import sys

import pytest

from pfva import cli
from pfva.fock_states import Monomial, State
from pfva.parafermion_lab import CheckReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def dims_of(out):
    data = json.loads(out)
    return [data["dims"][str(n)] for n in range(data["cutoff"] + 1)]


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["dims", "N0", "--k", "3", "--cutoff", "5"], [1, 0, 1, 2, 4, 6]),
        (["dims", "V0", "--k", "2", "--cutoff", "3"], [1, 1, 3, 6]),
        (["dims", "K0", "--k", "2", "--cutoff", "1"], [1, 0]),
        (["dims", "Itilde", "--k", "2", "--cutoff", "4"], [0, 0, 0, 1, 2]),
    ],
)
def test_dims(capsys, argv, expected):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    assert dims_of(out) == expected


def test_dims_text_and_vectors(capsys):
    code, out, _ = run(capsys, "dims", "N0", "--k", "2", "--cutoff", "3", "--vectors")
    assert code == 0
    assert out.splitlines()[0] == "N0 k=2 cutoff=3: 1,0,1,2"
    assert len(out.splitlines()) == 1 + 4


def test_check_theta(capsys):
    code, out, _ = run(capsys, "check", "theta", "--k", "2", "--imax", "3", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] and report["scalars"]["theta_sign"] == "-1/1"


def test_check_generation_n0(capsys):
    code, out, _ = run(capsys, "check", "generation-n0", "--k", "3", "--cutoff", "6", "--json")
    assert code == 0
    assert json.loads(out)["scalars"]["w3w3"] == "63180/1"


def test_check_all_reports_skips(capsys):
    code, out, _ = run(capsys, "check", "all", "--k", "5", "--cutoff", "4", "--json")
    assert code == 0
    reports = {r["check"]: r for r in json.loads(out)}
    assert reports["maximal-ideal"]["skipped"]
    assert reports["k0-dims"]["skipped"]
    assert reports["generation-n0"]["skipped"]
    assert not reports["theta"]["skipped"] and reports["theta"]["pass"]
    assert not reports["decomposition"]["skipped"] and reports["decomposition"]["pass"]


def test_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "check", "all", "--k", "2", "--cutoff", "4", "--json")
    code, parallel, _ = run(capsys, "check", "all", "--k", "2", "--cutoff", "4", "--json", "--jobs", "3")
    assert code == 0
    assert serial == parallel


def test_failed_check_exits_1(capsys, monkeypatch):
    def failing(name, cutoff, k, i_max=3, cache=None):
        return CheckReport(name, k, cutoff, False, witness=State.vacuum(), notes=["forced"])

    monkeypatch.setattr(cli, "run_check", failing)
    code, out, _ = run(capsys, "check", "theta", "--k", "2")
    assert code == 1
    assert "[FAIL]" in out and "witness" in out


@pytest.mark.parametrize(
    "expr, k, expected",
    [
        ("h(1) f(-2) e(-1) |0>", 2, {((), (1,), (1,)): "-2/1", ((2,), (), ()): "2/1"}),
        ("L(-1) f(-1) e(-1) |0>", 2, {((3,), (), ()): "-2/1", ((), (2,), (1,)): "1/1", ((), (1,), (2,)): "1/1"}),
    ],
)
def test_eval_examples(capsys, expr, k, expected):
    code, out, _ = run(capsys, "eval", expr, "--k", str(k), "--json")
    assert code == 0
    terms = json.loads(out)["state"]["terms"]
    assert {(tuple(t["h"]), tuple(t["e"]), tuple(t["f"])): t["coeff"] for t in terms} == expected


def test_eval_named_multiple(capsys):
    code, out, _ = run(capsys, "eval", "W3_3 W3", "--k", "3", "--json")
    assert code == 0
    assert json.loads(out)["multiple_of"] == {"name": "omega", "scalar": "63180/1"}
    code, out, _ = run(capsys, "eval", "W3_3 W3", "--k", "3")
    assert "63180 * omega" in out


def test_eval_grammar():
    k = 2
    assert cli.evaluate("|0>", k) == State.vacuum()
    assert cli.evaluate("e(-1)|0>", k) == State.basis(Monomial.make((), (1,), ()))
    assert cli.evaluate("omega_1 omega", k) == 2 * cli.evaluate("omega", k)
    assert cli.evaluate("Lgam(0) h(-1) |0>", k) == cli.evaluate("h(-1) |0>", k)
    assert cli.evaluate("Laff(0) W4", k) == 4 * cli.evaluate("W4", k)
    assert cli.evaluate("W3_{-1} |0>", k) == cli.evaluate("W3", k)


@pytest.mark.parametrize(
    "expr, position",
    [("h(1) x(-1) |0>", 5), ("h(1) f(-2)", 10), ("|0> h(1)", 4), ("W3 W3", 3)],
)
def test_eval_parse_errors(capsys, expr, position):
    code, _, err = run(capsys, "eval", expr, "--k", "2")
    assert code == 2
    assert f"position {position}" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["dims", "N0", "--k", "1"],
        ["dims", "N0", "--k", "two"],
        ["dims", "N0", "--cutoff", "-1"],
        ["dims", "Q0"],
        ["check", "nope"],
        ["check", "theta", "--jobs", "0"],
        ["check", "theta", "--imax", "0"],
    ],
)
def test_invalid_config_exits_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_resource_limits_exit_3(capsys):
    assert run(capsys, "eval", "h(1) W5_-30 W5", "--k", "2")[0] == 3
    assert run(capsys, "dims", "N0", "--cutoff", "7")[0] == 3
    assert run(capsys, "dims", "V0", "--cutoff", "8", "--allow-cutoff-7")[0] == 3
    assert run(capsys, "dims", "V0", "--cutoff", "7", "--allow-cutoff-7")[0] == 0


def test_warm_cache_matches_cold_across_processes(tmp_path):
    argv = [sys.executable, "-m", "pfva.cli", "dims", "Itilde", "--k", "2", "--cutoff", "5",
            "--json", "--vectors", "--cache-dir", str(tmp_path)]
    cold = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    files = sorted(p.name for p in tmp_path.glob("*.json"))
    assert files == ["Itilde-k2-c5.json", "J-k2-c5.json", "N0-k2-c5.json"]
    warm = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    assert cold == warm
    uncached = subprocess.run(argv[:-2], capture_output=True, text=True, check=True).stdout
    assert uncached == cold


def test_cache_dir_from_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PFVA_CACHE_DIR", str(tmp_path))
    assert run(capsys, "dims", "N0", "--k", "2", "--cutoff", "3")[0] == 0
    assert (tmp_path / "N0-k2-c3.json").exists()
