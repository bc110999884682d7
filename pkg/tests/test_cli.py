"""End-to-end checks of the console entry point.

Each test drives ``console_main`` with a config file in a temp directory and
inspects the exit code, the printed certificate lines, and the JSON report.
"""

import json

import numpy as np
import pytest

from hardyliou import TaylorPolynomial, integrate_ode, write_trajectory_csv
from hardyliou.cli import console_main, run
from hardyliou.errors import ConfigError


def _run(tmp_path, command, config, out="out"):
    cfg_path = tmp_path / f"{command}_cfg.json"
    cfg_path.write_text(json.dumps(config))
    code = console_main(
        [command, "--config", str(cfg_path), "--out", str(tmp_path / out)]
    )
    return code, tmp_path / out


def _report(out_dir, name):
    return json.loads((out_dir / name).read_text())


def test_spectrum_exit_zero_and_report_contents(tmp_path):
    code, out = _run(
        tmp_path, "spectrum", {"N": 12, "f": [[0.1, 0.0], [0.9, 0.0]]}
    )
    assert code == 0
    report = _report(out, "spectrum_report.json")
    assert report["schema"] == 1
    eigs = [complex(re, im) for re, im in report["eigenvalues"]]
    assert eigs == [0.9 * n for n in range(13)]
    cert = report["certificates"][0]
    assert cert["passed"] and "tolerance_formula" in cert


def test_reports_are_byte_identical_across_runs(tmp_path):
    config = {"N": 10, "f": [0.0, 1.0]}
    _run(tmp_path, "spectrum", config, out="a")
    _run(tmp_path, "spectrum", config, out="b")
    first = (tmp_path / "a" / "spectrum_report.json").read_bytes()
    second = (tmp_path / "b" / "spectrum_report.json").read_bytes()
    assert first == second


def test_certificate_failure_exits_one(tmp_path, capsys):
    # dual-route HS gap is ~1e-16 but never exactly zero here
    config = {
        "N": 32,
        "f": [1.0],
        "phi": [0.0, 0.5],
        "tolerance": 1e-30,
    }
    code, out = _run(tmp_path, "hs-norm", config)
    assert code == 1
    assert "FAIL" in capsys.readouterr().out
    report = _report(out, "hs_norm_report.json")
    assert not report["certificates"][0]["passed"]
    assert report["certificates"][0]["residual"] > 0


def test_invalid_config_exits_two_and_names_field(tmp_path, capsys):
    code, _ = _run(tmp_path, "spectrum", {"N": 0, "f": [0.0, 1.0]})
    assert code == 2
    err = capsys.readouterr().err
    assert "'N'" in err and ">= 1" in err


def test_missing_coefficients_named(tmp_path, capsys):
    code, _ = _run(tmp_path, "spectrum", {"N": 4})
    assert code == 2
    assert "'f'" in capsys.readouterr().err


def test_bad_complex_entry_named_with_index(tmp_path, capsys):
    code, _ = _run(tmp_path, "spectrum", {"N": 4, "f": [0.0, "one"]})
    assert code == 2
    assert "f[1]" in capsys.readouterr().err


def test_missing_config_file_exits_two(tmp_path, capsys):
    code = console_main(
        ["spectrum", "--config", str(tmp_path / "nope.json")]
    )
    assert code == 2
    assert "not found" in capsys.readouterr().err


def test_malformed_json_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = console_main(["spectrum", "--config", str(bad)])
    assert code == 2
    assert "JSON" in capsys.readouterr().err


def test_config_required_except_verify_all(capsys):
    code = console_main(["spectrum"])
    assert code == 2
    assert "--config" in capsys.readouterr().err


def test_boundary_size_constraint_enforced(tmp_path, capsys):
    config = {"N": 64, "M": 100, "cases": 1, "seed": 0}
    code, _ = _run(tmp_path, "adjoint-check", config)
    assert code == 2
    assert "2N+2" in capsys.readouterr().err


def test_adjoint_check_battery_passes(tmp_path):
    config = {"N": 24, "M": 128, "cases": 6, "seed": 1}
    code, out = _run(tmp_path, "adjoint-check", config)
    assert code == 0
    report = _report(out, "adjoint_check_report.json")
    assert report["inputs"]["seed"] == 1
    assert report["certificates"][0]["residual"] < 1e-8


def test_occupation_from_ode_config(tmp_path):
    config = {
        "N": 80,
        "f": [0.0, 1.0],
        "ode": {"z0": [0.2, 0.0], "T": 1.0, "dt": 1e-3},
        "output": "occ.json",
    }
    code, out = _run(tmp_path, "occupation", config)
    assert code == 0
    report = _report(out, "occ.json")
    assert len(report["trajectory_digests"]) == 1
    assert report["certificates"][0]["residual"] < 1e-6


def test_occupation_from_csv_files(tmp_path):
    f = TaylorPolynomial([0.0, 1.0])
    paths = []
    for k, z0 in enumerate((0.2, 0.1 + 0.1j)):
        traj = integrate_ode(f, z0, 1.0, 1e-3)
        path = tmp_path / f"traj{k}.csv"
        write_trajectory_csv(traj, path)
        paths.append(str(path))
    config = {"N": 80, "f": [0.0, 1.0], "trajectories": paths}
    code, out = _run(tmp_path, "occupation", config)
    assert code == 0
    report = _report(out, "occupation_report.json")
    assert len(report["residuals"]) == 2
    assert max(report["residuals"]) < 1e-6


def test_missing_trajectory_file_exits_two(tmp_path, capsys):
    config = {
        "N": 16,
        "f": [0.0, 1.0],
        "trajectories": [str(tmp_path / "ghost.csv")],
    }
    code, _ = _run(tmp_path, "occupation", config)
    assert code == 2
    assert "ghost.csv" in capsys.readouterr().err


def test_corrupt_trajectory_row_cited(tmp_path, capsys):
    path = tmp_path / "corrupt.csv"
    path.write_text("t,re,im\n0.0,0.1,0.0\n0.5,oops,0.0\n")
    config = {"N": 16, "f": [0.0, 1.0], "trajectories": [str(path)]}
    code, _ = _run(tmp_path, "occupation", config)
    assert code == 2
    err = capsys.readouterr().err
    # rows are counted from the top of the file, header included
    assert "corrupt.csv" in err and "row 3" in err


def test_weighted_command(tmp_path):
    config = {
        "N": 80,
        "f": [0.0, 1.0],
        "phi": [0.0, 0.0, 1.0],
        "ode": {"z0": [0.2, 0.0], "T": 1.0, "dt": 1e-3},
    }
    code, out = _run(tmp_path, "weighted", config)
    assert code == 0
    report = _report(out, "weighted_report.json")
    assert report["certificates"][0]["residual"] < 1e-6


def test_dmd_command_fits_and_predicts(tmp_path):
    f = TaylorPolynomial([0.1, 0.9])
    paths = []
    for k, r in enumerate((0.1, 0.2, 0.3)):
        for j in range(4):
            z0 = r * np.exp(2j * np.pi * j / 4)
            traj = integrate_ode(f, z0, 1.0, 5e-3)
            path = tmp_path / f"dmd{k}_{j}.csv"
            write_trajectory_csv(traj, path)
            paths.append(str(path))
    config = {
        "N": 48,
        "trajectories": paths,
        "predict": {"z0": [0.2, 0.0], "times": [0.0, 0.5]},
    }
    code, out = _run(tmp_path, "dmd", config)
    assert code == 0
    report = _report(out, "dmd_report.json")
    assert report["identity_residual"] < 1e-2
    assert len(report["predictions"]) == 2
    t0 = complex(*report["predictions"][0]["value"])
    assert abs(t0 - 0.2) < 1e-3
    model = json.loads((out / "dmd_model.json").read_text())
    assert model["schema"] == 1


def test_bounds_writes_profile_csv(tmp_path):
    config = {
        "f": [1.0],
        "phi": [0.0, 0.5],
        "n_radii": 12,
        "n_angles": 32,
    }
    code, out = _run(tmp_path, "bounds", config)
    assert code == 0
    lines = (out / "bounds_profile.csv").read_text().strip().splitlines()
    assert lines[0] == "radius,value"
    assert len(lines) == 13
    radius, value = lines[-1].split(",")
    assert 0 < float(radius) < 1 and float(value) > 0
    report = _report(out, "bounds_report.json")
    assert report["diverges"] is False


def test_bounds_divergence_expectation(tmp_path):
    config = {"f": [1.0], "phi": [0.0, 1.0], "expect_diverges": True}
    code, out = _run(tmp_path, "bounds", config)
    assert code == 0
    report = _report(out, "bounds_report.json")
    assert report["diverges"] is True
    # declaring the wrong expectation must flip the exit code
    config["expect_diverges"] = False
    code, _ = _run(tmp_path, "bounds", config, out="wrong")
    assert code == 1


def test_hs_norm_infinite_case_needs_declaration(tmp_path):
    config = {"N": 32, "f": [1.0], "phi": [0.0, 1.0]}
    code, out = _run(tmp_path, "hs-norm", config)
    assert code == 1
    config["expect_finite"] = False
    code, out = _run(tmp_path, "hs-norm", config, out="declared")
    assert code == 0
    report = _report(out, "hs_norm_report.json")
    assert report["quadrature_sq"] == "infinite"


def test_smirnov_command(tmp_path):
    config = {"N": 128, "f": [1.0, -0.5]}
    code, out = _run(tmp_path, "smirnov", config)
    assert code == 0
    report = _report(out, "smirnov_report.json")
    assert report["certificates"][0]["residual"] < 1e-10
    assert report["normalized"] is True


def test_verify_all_covers_every_criterion(tmp_path, capsys):
    code = console_main(["verify-all", "--out", str(tmp_path)])
    assert code == 0
    out_text = capsys.readouterr().out
    assert out_text.count("PASS") == 13
    report = _report(tmp_path, "verify_all_report.json")
    assert len(report["certificates"]) == 13
    assert all(c["passed"] for c in report["certificates"])
    assert set(report["findings"]) == {
        "adjoint_kernel_weights",
        "kernel_action_power",
        "hs_quadrature_exponent",
        "occupation_relation_readings",
        "dmd_identity_capture",
    }
    text = (tmp_path / "verify_all_report.json").read_text()
    # measured wall-clock never lands in a report; fixed budgets may
    assert "runtime_seconds" not in text


def test_unknown_command_rejected_by_argparse(capsys):
    with pytest.raises(SystemExit) as excinfo:
        console_main(["frobnicate", "--config", "x.json"])
    assert excinfo.value.code == 2


def test_run_api_rejects_non_dict_config(tmp_path):
    with pytest.raises(ConfigError):
        run("spectrum", [1, 2], tmp_path)
