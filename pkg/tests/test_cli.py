import json
import subprocess
import sys
from pathlib import Path

import pytest

from essalg.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, json.loads(capsys.readouterr().out)


def test_krull_on_sphere(capsys):
    code, rep = run(capsys, "krull", DATA / "sphere4.json")
    assert code == EXIT_OK
    assert rep["schema"] == 1
    assert rep["result"]["krull_dimension"] == 3
    assert rep["command"] == "krull"


def test_krull_standardizes_associative_input(capsys):
    code, rep = run(capsys, "krull", DATA / "free_nonunital.json")
    assert code == EXIT_OK and rep["result"]["krull_dimension"] == 2


def test_degeneracy_with_sequence(capsys):
    code, rep = run(capsys, "degeneracy", DATA / "plane.json", "--sequence", "x,y")
    assert code == EXIT_OK
    assert rep["verdict"] == "NotQuasiFree"
    assert rep["witness"]["path"] == "sequence"
    assert rep["witness"]["certificate"]["ok"]
    assert rep["provenance"]


def test_cover(capsys):
    code, rep = run(capsys, "cover", DATA / "line.json", "--elements", "x, x-1")
    assert code == EXIT_OK
    assert rep["verdict"] == "verified"
    assert rep["witness"]["coefficients"] == ["1", "-1"]


def test_failed_cover_is_still_exit_zero(capsys):
    code, rep = run(capsys, "cover", DATA / "line.json", "--elements", "x,x^2")
    assert code == EXIT_OK and rep["verdict"] == "failed"


@pytest.mark.parametrize("argv, verdict", [
    (["smooth", "cusp.json"], "NotSmooth"),
    (["smooth", "--essential", "weyl.json"], "EssentiallySmooth"),
    (["smooth", "--mode", "etale", "sphere4.json"], "Smooth"),
    (["hochschild", "dual_numbers.json"], "NotQuasiFree"),
    (["lie-cohomology", "sl2.json"], "NotQuasiFree"),
    (["localize", "localize_x_minus_1.json"], "accepted"),
    (["localize", "localize_x_minus_1.json", "--at", "x"], "rejected"),
])
def test_verdict_commands(capsys, argv, verdict):
    code, rep = run(capsys, *[DATA / a if a.endswith(".json") else a for a in argv])
    assert code == EXIT_OK
    assert rep["verdict"] == verdict


def test_hochschild_normalized_and_bimodule_default(capsys):
    _, rep = run(capsys, "hochschild", DATA / "dual_numbers.json", "--normalized", "--n-max", "2")
    assert rep["result"]["hochschild_dims"] == {"A": [2, 1, 1], "A*": [2, 1, 1]}


def test_lie_with_module(capsys):
    _, rep = run(capsys, "lie-cohomology", DATA / "sl2.json", "--module", DATA / "sl2_adjoint.json")
    assert rep["result"]["cohomology_dims"] == [0, 0, 0, 0]
    assert "verdict" not in rep


def test_standardize(capsys):
    _, rep = run(capsys, "standardize", DATA / "weyl.json")
    labels = {f["factor"]: f["zero_ring"] for f in rep["result"]["factors"]}
    assert labels["abelianization"] is True


def test_points(capsys):
    _, rep = run(capsys, "points", DATA / "idempotent_f2.json", "--target", DATA / "f2.json")
    assert rep["result"]["count"] == 2
    _, rep = run(capsys, "points", DATA / "idempotent_f2.json", "--target", DATA / "f2.json", "--nonunital")
    assert rep["result"]["count"] == 3


@pytest.mark.parametrize("argv", [
    ["krull", "bad_syntax.json"],
    ["krull", "does_not_exist.json"],
    ["krull", "dual_numbers.json"],
    ["lie-cohomology", "bad_lie.json"],
    ["smooth", "weyl.json"],
    ["localize", "line.json"],
])
def test_input_errors_exit_2(capsys, argv):
    code, rep = run(capsys, argv[0], DATA / argv[1])
    assert code == EXIT_INPUT
    assert rep["error"]["kind"] == "input"


def test_budget_exit_3(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("ESSALG_BUDGET_PAIRS", "2")
    f = tmp_path / "hard.json"
    f.write_text(json.dumps({"kind": "comm_presentation", "variables": ["x", "y", "z"],
                             "relations": ["x^3 + y*z - 1", "y^3 - x*z^2", "z^3 - x^2*y + x"]}))
    code, rep = run(capsys, "krull", f)
    assert code == EXIT_RESOURCE
    assert rep["error"] == {"kind": "resource", "budget": "pairs", "limit": 2,
                            "message": "budget 'pairs' exceeded (limit 2)"}
    assert rep["budget"]["pairs"] == 2


def _strip(text: str) -> str:
    rep = json.loads(text)
    rep.pop("timing", None)
    return json.dumps(rep, sort_keys=True)


def test_reports_are_deterministic():
    argv = [sys.executable, "-m", "essalg.cli", "degeneracy", str(DATA / "plane.json"), "--sequence", "x,y"]
    outs = [subprocess.run(argv, capture_output=True, text=True, check=True).stdout for _ in range(2)]
    assert _strip(outs[0]) == _strip(outs[1])


@pytest.mark.parametrize("argv", [
    ["degeneracy", "plane.json", "--sequence", "x,y"],
    ["cover", "line.json", "--elements", "x,x-1"],
    ["localize", "localize_x_minus_1.json"],
    ["krull", "bad_syntax.json"],
])
def test_verify_report_round_trip(capsys, tmp_path, argv):
    main([str(DATA / a) if a.endswith(".json") else a for a in argv])
    report = tmp_path / "report.json"
    report.write_text(capsys.readouterr().out)
    code, rep = run(capsys, "--verify-report", report)
    assert code == EXIT_OK, rep
    assert rep["replayed"]


def test_verify_report_catches_tampering(capsys, tmp_path):
    main(["cover", str(DATA / "line.json"), "--elements", "x,x-1"])
    rep = json.loads(capsys.readouterr().out)
    rep["witness"]["coefficients"] = ["2", "-1"]
    report = tmp_path / "report.json"
    report.write_text(json.dumps(rep))
    code, out = run(capsys, "--verify-report", report)
    assert code == EXIT_FAILED
    assert "partition of unity does not sum to 1" in out["problems"]


def test_verify_report_rejects_non_reports(capsys):
    code, rep = run(capsys, "--verify-report", DATA / "line.json")
    assert code == EXIT_INPUT


def test_selftest_subset(capsys):
    code, rep = run(capsys, "selftest", "--only", "1", "7")
    assert code == EXIT_OK
    assert [c["criterion"] for c in rep["result"]["criteria"]] == [1, 7]


def test_console_script_installed():
    out = subprocess.run(["essalg", "krull", str(DATA / "line.json")], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["krull_dimension"] == 1
