import csv
import io
import json
import subprocess
import sys

import pytest

from agencygame import __version__, certifier as C, welfare as W
from agencygame.cli import (
    PRESETS, SWEEP_COLUMNS, SweepConfig, SweepDim, lambda_grid, main, run_figure, run_sweep,
)
from agencygame.model_core import EquilibriumClass as EC, ValidationError, make_params

FIG4_SET = ["--set", "E=0.85", "--set", "pi=0.7", "--set", "rho=0.85", "--set", "beta=0.9"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_validate_prints_the_resolved_config(capsys):
    code, out, _ = run(capsys, "validate", "--set", "lam=0.3")
    assert code == 0
    assert json.loads(out)["params"]["lambda"] == 0.3


@pytest.mark.parametrize("argv, code", [
    (["frobnicate"], 1),
    (["certify", "--set", "rho"], 1),
    (["figure", "fig9"], 1),
    (["sweep", "--dim", "lambda=0:1"], 1),
    (["certify", "--set", "rho=1.5"], 2),
    (["certify", "--set", "colour=1"], 2),
    (["sweep", "--dim", "lambda=0.1:0.9:1"], 2),
    (["sweep", "--dim", "colour=0:1:3"], 2),
    (["sweep", "--outputs", "everything"], 2),
    (["audit", "--class", "NPE_SF"], 2),
    (["certify", "--config", "/nonexistent/config.json"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_invalid_json_config_is_a_validation_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{rho: ")
    assert run(capsys, "validate", "--config", str(path))[0] == 2


def test_unwritable_output_is_an_io_error(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(capsys, "figure", "fig5", "--points", "3", "--out", str(blocker / "sub"))
    assert code == 3 and "I/O error" in err


def test_certify_matches_the_library(capsys):
    code, out, _ = run(capsys, "certify", *FIG4_SET, "--set", "lambda=0.3", "--class", "NPE_SF")
    assert code == 0
    doc = json.loads(out)
    cert = C.certify(EC.NPE_SF, make_params(E=0.85, pi=0.7, rho=0.85, beta=0.9, lam=0.3))
    (result,) = doc["certificates"] if "certificates" in doc else doc["results"]
    assert result == json.loads(json.dumps(cert.to_dict()))


def test_benchmark_and_selection_commands(capsys):
    code, out, _ = run(capsys, "benchmark", "--set", "beta=0.25")
    assert code == 0
    doc = json.loads(out)
    flat = json.dumps(doc)
    assert '"beta_tilde": 0.25' in flat
    code, out, _ = run(capsys, "selection", "--set", "lambda=0.25", "--format", "csv")
    assert code == 0
    (row,) = read_rows(out)
    assert float(row["zeta"]) == pytest.approx(0.505859375, abs=1e-12)


def test_audit_command_with_monte_carlo(capsys):
    code, out, _ = run(capsys, "audit", *FIG4_SET, "--set", "lambda=0.6", "--class", "NPE_SF",
                       "--reps", "20000", "--seed", "5")
    assert code == 0
    doc = json.loads(out)
    (result,) = doc["results"]
    assert result["certified"] and result["audit"]["passes"] is True
    again = json.loads(run(capsys, "audit", *FIG4_SET, "--set", "lambda=0.6", "--class",
                           "NPE_SF", "--reps", "20000", "--seed", "5")[1])
    assert again == doc


def test_lambda_sweep_at_fig4_params(capsys):
    code, out, _ = run(capsys, "sweep", *FIG4_SET, "--dim", "lambda=0.01:0.99:99",
                       "--outputs", "certificates,welfare")
    assert code == 0
    rows = read_rows(out)
    assert list(rows[0]) == list(SWEEP_COLUMNS)
    welfare = [r for r in rows if r["output"] == "welfare"]
    assert all(r["eu_total"] for r in welfare)
    classes = {}
    for r in welfare:
        classes.setdefault(round(float(r["lambda"]), 9), set()).add(r["class"])
    flips = [lam for lam, prev in zip(sorted(classes)[1:], sorted(classes))
             if classes[lam] != classes[prev]]
    assert len(flips) == 1
    assert flips[0] == pytest.approx(0.42, abs=1e-9)
    assert classes[0.41] == {"PECB"} and classes[0.42] == {"NPE_SF"}
    assert [int(r["grid_index"]) for r in rows] == sorted(int(r["grid_index"]) for r in rows)


def test_beta_sweep_brackets_beta_tilde(capsys):
    code, out, _ = run(capsys, "sweep", "--dim", "lambda=0:1:2", "--dim", "beta=0.05:0.45:9",
                       "--outputs", "benchmark")
    assert code == 0
    rows = read_rows(out)
    assert len(rows) == 18
    for r in rows:
        beta, d = float(r["beta"]), float(r["delta_eu"])
        assert float(r["beta_tilde"]) == 0.25
        if abs(beta - 0.25) > 1e-9:
            assert (d > 0) == (beta < 0.25)
        else:
            assert abs(d) < 1e-12


def test_empty_sweep_is_a_single_point(capsys):
    code, out, _ = run(capsys, "sweep", "--outputs", "benchmark,selection")
    assert code == 0
    rows = read_rows(out)
    assert [r["output"] for r in rows] == ["benchmark", "selection"]
    assert {r["grid_index"] for r in rows} == {"0"}


def test_sweep_from_nested_config(capsys, tmp_path):
    cfg = {"params": {"E": 0.85, "pi": 0.7, "rho": 0.85, "beta": 0.9},
           "sweep": [{"name": "lam", "min": 0.2, "max": 0.8, "steps": 4}],
           "outputs": ["certificates"], "seed": 9}
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(cfg))
    code, _, _ = run(capsys, "sweep", "--config", str(path), "--out", str(tmp_path / "o"))
    assert code == 0
    side = json.loads((tmp_path / "o" / "sweep.json").read_text())
    assert side["version"] == __version__ and side["config"]["seed"] == 9
    assert side["config"]["sweep"] == [{"name": "lambda", "min": 0.2, "max": 0.8, "steps": 4}]
    rows = read_rows((tmp_path / "o" / "sweep.csv").read_text())
    assert side["rows"] == len(rows) == 4 * 5


def test_sweep_rows_agree_with_certify():
    base = make_params(E=1.0, v_xx=500.0, pi=0.5, rho=0.3, beta=0.5)
    config = SweepConfig(base, [SweepDim("lambda", 0.05, 0.95, 31)], ("certificates",))
    rows, _ = run_sweep(config)
    for r in rows:
        p = base.replace(lam=r["lambda"])
        assert r["verdict"] == C.certify(r["class"], p).verdict


def test_sweep_is_independent_of_worker_count():
    base = make_params(E=0.85, pi=0.7, rho=0.85, beta=0.75)
    dims = [SweepDim("lambda", 0.1, 0.9, 9)]
    outputs = ("certificates", "welfare", "audit")
    serial, _ = run_sweep(SweepConfig(base, dims, outputs, reps=2000, seed=4))
    parallel, _ = run_sweep(SweepConfig(base, dims, outputs, reps=2000, seed=4, workers=3))
    assert serial == parallel


def test_sweep_config_checks():
    with pytest.raises(ValidationError):
        SweepConfig(make_params(), [SweepDim("lambda", 0, 1, 1)]).check()
    with pytest.raises(ValidationError):
        SweepConfig(make_params(), [SweepDim("gamma", 0, 1, 3)]).check()


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_are_byte_identical(capsys, tmp_path, name):
    for run_dir in ("a", "b"):
        assert run(capsys, "figure", name, "--out", str(tmp_path / run_dir))[0] == 0
    for suffix in ("csv", "json"):
        a = (tmp_path / "a" / f"{name}.{suffix}").read_bytes()
        b = (tmp_path / "b" / f"{name}.{suffix}").read_bytes()
        assert a == b


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_preset_class_tags_agree_with_certify(name):
    rows, side, _ = run_figure(name)
    curves = {c["label"]: c["params"] for c in side["config"]["curves"]}
    for r in rows:
        if r["class"] in {e.value for e in EC} and 0 < r["lambda"] < 1:
            p = make_params(**curves[r["curve"]]).replace(lam=r["lambda"])
            verdict = C.certify(r["class"], p).verdict
            assert r.get("verdict", True) == verdict


def test_fig4_transition():
    rows, side, _ = run_figure("fig4")
    ell = C.ell(make_params(E=0.85, pi=0.7, rho=0.85))
    for label in ("beta=0.9", "beta=0.75"):
        (t,) = [t for t in side["transitions"] if t["curve"] == label]
        assert (t["from"], t["to"]) == ("PECB", "NPE_SF")
        assert abs(t["lambda"] - ell) < 1e-6
        assert t["step"] > 0


def test_fig1_left_panel_peaks_inside():
    _, side, _ = run_figure("fig1")
    (peak,) = [a for a in side["argmax"] if a["curve"].startswith("left beta=0.25")]
    assert peak["interior"] and 0 < peak["lambda"] < 1


def test_fig3_marks_coexistence():
    rows, side, _ = run_figure("fig3", points=199)
    coexist = [r for r in rows if r["region"] == "coexist"]
    assert coexist
    assert {r["class"] for r in coexist} == {"PECB", "PEPB"}
    assert any(t["to"] == "coexist" for t in side["transitions"])


def test_fig5_zeta_peaks_at_half():
    rows, _, _ = run_figure("fig5")
    for label in {r["curve"] for r in rows}:
        curve = [r for r in rows if r["curve"] == label]
        best = max(curve, key=lambda r: r["zeta"])
        assert best["lambda"] == 0.5


def test_figure_overrides_reach_every_curve():
    _, side, _ = run_figure("fig5", overrides=["E=0.9"], points=3)
    assert all(c["params"]["E"] == 0.9 for c in side["config"]["curves"])


def test_lambda_grid():
    assert lambda_grid(3, endpoints=False) == [0.25, 0.5, 0.75]
    assert lambda_grid(1, endpoints=True) == [0.0, 0.5, 1.0]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "agencygame", "--version"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == __version__
    bad = subprocess.run([sys.executable, "-m", "agencygame", "certify", "--set", "pi=2"],
                         capture_output=True, text=True)
    assert bad.returncode == 2 and "probability range" in bad.stderr
