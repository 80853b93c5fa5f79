"""Command-line behavior: output contracts, exit statuses, seed precedence."""

import subprocess
import sys

import pytest

from gapdyn import (
    OscillatorParams,
    OscState,
    ScenarioConfig,
    analytic_trajectory,
    standard_normals,
    write_trajectory_csv,
)
from gapdyn.cli import main


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _kv(stdout):
    pairs = {}
    for line in stdout.splitlines():
        for token in line.split():
            key, _, value = token.partition("=")
            pairs[key] = value
    return pairs


@pytest.fixture
def config_file(tmp_path):
    def make(text=""):
        path = tmp_path / "scenario.cfg"
        path.write_text(text)
        return str(path)

    return make


@pytest.fixture(autouse=True)
def _no_ambient_seed(monkeypatch):
    monkeypatch.delenv("GAPDYN_SEED", raising=False)


class TestClassify:
    def test_exact_output_line(self, capsys):
        code, out, err = _run(capsys, ["classify", "--gamma", "4.0", "--alpha", "1.0"])
        assert code == 0
        assert out == "regime=over-damped discriminant=12\n"
        assert err == ""

    def test_under_damped(self, capsys):
        code, out, _ = _run(capsys, ["classify", "--gamma", "0.5", "--alpha", "4.0"])
        assert code == 0
        assert _kv(out)["regime"] == "under-damped"
        assert float(_kv(out)["discriminant"]) == -15.75

    def test_invalid_params_exit_2(self, capsys):
        code, _, err = _run(capsys, ["classify", "--gamma", "-1.0", "--alpha", "1.0"])
        assert code == 2
        assert err.startswith("error=InvariantViolation")


class TestUsageErrors:
    def test_no_subcommand(self, capsys):
        code, _, err = _run(capsys, [])
        assert code == 1
        assert err.startswith("error=Usage")

    def test_unknown_flag(self, capsys):
        code, _, err = _run(capsys, ["classify", "--gamma", "1", "--alpha", "1", "--wat"])
        assert code == 1
        assert err.startswith("error=Usage")

    def test_missing_required_flag(self, capsys):
        code, _, err = _run(capsys, ["classify", "--gamma", "1"])
        assert code == 1
        assert err.startswith("error=Usage")

    def test_non_numeric_flag_value(self, capsys):
        code, _, err = _run(capsys, ["classify", "--gamma", "fast", "--alpha", "1"])
        assert code == 1
        assert err.startswith("error=Usage")


class TestSimulate:
    def test_default_scenario_metrics(self, capsys, config_file):
        code, out, err = _run(capsys, ["simulate", "--config", config_file()])
        assert code == 0
        assert err == ""
        pairs = _kv(out)
        assert set(pairs) == {"settling_time", "overshoot", "zero_crossings", "terminal_abs"}
        assert float(pairs["terminal_abs"]) < 0.05
        assert pairs["zero_crossings"] == "0"

    def test_csv_has_header_plus_samples(self, capsys, config_file, tmp_path):
        out_csv = tmp_path / "run.csv"
        code, _, _ = _run(
            capsys, ["simulate", "--config", config_file(), "--out", str(out_csv)]
        )
        assert code == 0
        lines = out_csv.read_text().splitlines()
        assert lines[0] == "t,y,ydot,eps"
        assert len(lines) == 202

    def test_svg_written(self, capsys, config_file, tmp_path):
        svg = tmp_path / "run.svg"
        code, _, _ = _run(
            capsys, ["simulate", "--config", config_file(), "--svg", str(svg)]
        )
        assert code == 0
        text = svg.read_text()
        assert text.startswith("<svg")
        assert "critically-damped" in text

    def test_missing_config_is_io_error(self, capsys, tmp_path):
        code, _, err = _run(
            capsys, ["simulate", "--config", str(tmp_path / "absent.cfg")]
        )
        assert code == 2
        assert err.startswith("error=IoError")

    def test_bad_config_reports_line(self, capsys, config_file):
        code, _, err = _run(
            capsys, ["simulate", "--config", config_file("gamma = 1\nwat = 3\n")]
        )
        assert code == 2
        assert err.startswith("error=UnknownKey")
        assert "line 2" in err

    def test_divergent_scenario_exit_3(self, capsys, config_file):
        cfg = config_file("gamma = 50.0\ny0 = 1e300\ndt = 0.1\nt_end = 20\n")
        code, _, err = _run(capsys, ["simulate", "--config", cfg])
        assert code == 3
        assert err.startswith("error=Divergence")

    def test_rk4_integrator_accepted(self, capsys, config_file):
        code, out, _ = _run(
            capsys, ["simulate", "--config", config_file("integrator = rk4")]
        )
        assert code == 0
        assert float(_kv(out)["terminal_abs"]) < 0.01


class TestEstimate:
    def _write_clean_series(self, tmp_path, gamma=0.5, alpha=1.0):
        cfg = ScenarioConfig(gamma=gamma, alpha=alpha)
        traj = analytic_trajectory(cfg.params(), cfg.initial_state(), cfg.grid())
        path = tmp_path / "series.csv"
        write_trajectory_csv(path, traj)
        return str(path)

    def test_recovers_damping_from_noise_free_run(self, capsys, tmp_path):
        path = self._write_clean_series(tmp_path)
        code, out, err = _run(capsys, ["estimate", "--in", path])
        assert code == 0
        assert err == ""
        pairs = _kv(out)
        assert abs(float(pairs["gamma_hat"]) - 0.5) < 1e-6
        assert abs(float(pairs["alpha_hat"]) - 1.0) < 1e-6
        assert pairs["method"] == "ar2"
        assert pairs["converged"] == "true"
        assert pairs["n_obs"] == "201"

    def test_mle_method_selected(self, capsys, tmp_path):
        path = self._write_clean_series(tmp_path)
        code, out, _ = _run(capsys, ["estimate", "--in", path, "--method", "mle"])
        assert code == 0
        pairs = _kv(out)
        assert pairs["method"] == "mle"
        assert abs(float(pairs["gamma_hat"]) - 0.5) < 1e-3

    def test_unknown_method_is_usage_error(self, capsys, tmp_path):
        path = self._write_clean_series(tmp_path)
        code, _, err = _run(capsys, ["estimate", "--in", path, "--method", "ols"])
        assert code == 1
        assert err.startswith("error=Usage")

    def test_white_noise_series_is_non_stationary(self, capsys, tmp_path):
        draws = standard_normals(0, 201)
        path = tmp_path / "noise.csv"
        rows = ["t,y"]
        rows += ["%.17g,%.17g" % (0.1 * i, draws[i]) for i in range(201)]
        path.write_text("\n".join(rows) + "\n")
        code, _, err = _run(capsys, ["estimate", "--in", str(path)])
        assert code == 3
        assert err.startswith("error=NonStationary")

    def test_constant_series_is_degenerate(self, capsys, tmp_path):
        path = tmp_path / "flat.csv"
        rows = ["t,y"] + ["%.1f,0.0" % (0.1 * i) for i in range(10)]
        path.write_text("\n".join(rows) + "\n")
        code, _, err = _run(capsys, ["estimate", "--in", str(path)])
        assert code == 3
        assert err.startswith("error=Degenerate")

    def test_ragged_csv_exit_2(self, capsys, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("t,y\n0.0,1.0\n0.1,0.9\n0.3,0.8\n")
        code, _, err = _run(capsys, ["estimate", "--in", str(path)])
        assert code == 2
        assert err.startswith("error=NonUniformSpacing")


class TestImpulse:
    def test_kick_produces_crossings(self, capsys, config_file):
        cfg = config_file("gamma = 0.5\nalpha = 4.0\ny0 = 0\n")
        code, out, _ = _run(
            capsys, ["impulse", "--config", cfg, "--magnitude", "5.0", "--at", "1.0"]
        )
        assert code == 0
        assert int(_kv(out)["zero_crossings"]) >= 1

    def test_impulse_overrides_config_shock(self, capsys, config_file, tmp_path):
        cfg = config_file("shock = white-noise\nshock_seed = 1\n")
        out_csv = tmp_path / "imp.csv"
        code, _, _ = _run(
            capsys,
            ["impulse", "--config", cfg, "--magnitude", "2.0", "--at", "0.0",
             "--out", str(out_csv)],
        )
        assert code == 0
        first = out_csv.read_text().splitlines()[1]
        assert first.split(",")[3] == "2"

    def test_kick_outside_grid(self, capsys, config_file):
        code, _, err = _run(
            capsys,
            ["impulse", "--config", config_file(), "--magnitude", "1.0", "--at", "25.0"],
        )
        assert code == 2
        assert err.startswith("error=ImpulseOutsideGrid")


class TestSweep:
    def test_row_count_and_monotone_gamma(self, capsys, config_file):
        code, out, _ = _run(
            capsys,
            ["sweep", "--config", config_file(), "--gamma-from", "0.5",
             "--gamma-to", "4.0", "--gamma-steps", "8"],
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "gamma,settling_time,overshoot,zero_crossings,terminal_abs"
        assert len(lines) == 9
        gammas = [float(line.split(",")[0]) for line in lines[1:]]
        assert gammas[0] == 0.5
        assert gammas[-1] == 4.0
        assert all(b > a for a, b in zip(gammas, gammas[1:]))

    def test_single_step(self, capsys, config_file):
        code, out, _ = _run(
            capsys,
            ["sweep", "--config", config_file(), "--gamma-from", "2.0",
             "--gamma-to", "2.0", "--gamma-steps", "1"],
        )
        assert code == 0
        assert len(out.splitlines()) == 2

    def test_bad_range(self, capsys, config_file):
        code, _, err = _run(
            capsys,
            ["sweep", "--config", config_file(), "--gamma-from", "3.0",
             "--gamma-to", "1.0", "--gamma-steps", "5"],
        )
        assert code == 2
        assert err.startswith("error=InvariantViolation")

    def test_zero_steps(self, capsys, config_file):
        code, _, err = _run(
            capsys,
            ["sweep", "--config", config_file(), "--gamma-from", "1.0",
             "--gamma-to", "2.0", "--gamma-steps", "0"],
        )
        assert code == 2
        assert err.startswith("error=InvariantViolation")


class TestCheck:
    def test_default_point_has_zero_residuals(self, capsys):
        code, out, _ = _run(capsys, ["check", "--beta", "0.99", "--sigma-c", "2.0"])
        assert code == 0
        pairs = _kv(out)
        assert float(pairs["euler_residual"]) == 0.0
        assert float(pairs["budget_residual"]) == 0.0
        assert float(pairs["profit"]) == 0.0
        assert abs(float(pairs["steady_state_rate"]) - 1.0 / 0.99 + 1.0) < 1e-12

    def test_point_override_moves_residuals(self, capsys):
        code, out, _ = _run(
            capsys,
            ["check", "--beta", "0.99", "--sigma-c", "2.0",
             "--point", "r=0.05,b=2.0"],
        )
        assert code == 0
        pairs = _kv(out)
        assert abs(float(pairs["euler_residual"]) - (1.0 - 0.99 * 1.05)) < 1e-12
        # budget: c + b_next - (1+r) b - w n = 1 - 1.05*2 - 1
        assert abs(float(pairs["budget_residual"]) + 2.1) < 1e-12

    def test_unknown_point_key(self, capsys):
        code, _, err = _run(
            capsys,
            ["check", "--beta", "0.99", "--sigma-c", "2.0", "--point", "q=1.0"],
        )
        assert code == 2
        assert err.startswith("error=UnknownKey")

    def test_bad_point_value(self, capsys):
        code, _, err = _run(
            capsys,
            ["check", "--beta", "0.99", "--sigma-c", "2.0", "--point", "c=fast"],
        )
        assert code == 2
        assert err.startswith("error=BadValue")

    def test_bad_beta_exit_2(self, capsys):
        code, _, err = _run(capsys, ["check", "--beta", "1.5", "--sigma-c", "2.0"])
        assert code == 2
        assert err.startswith("error=InvariantViolation")


class TestSeedPrecedence:
    CONFIG = "shock = white-noise\nshock_sigma = 0.3\nshock_seed = 1\n"

    def _csv_for(self, capsys, tmp_path, config_file, name, argv_extra=()):
        out_csv = tmp_path / name
        code, _, _ = _run(
            capsys,
            ["simulate", "--config", config_file(self.CONFIG), "--out", str(out_csv),
             *argv_extra],
        )
        assert code == 0
        return out_csv.read_bytes()

    def _reference(self, capsys, tmp_path, seed):
        path = tmp_path / f"ref{seed}.cfg"
        path.write_text(f"shock = white-noise\nshock_sigma = 0.3\nshock_seed = {seed}\n")
        out_csv = tmp_path / f"ref{seed}.csv"
        code, _, _ = _run(
            capsys, ["simulate", "--config", str(path), "--out", str(out_csv)]
        )
        assert code == 0
        return out_csv.read_bytes()

    def test_config_seed_used_when_nothing_else_set(self, capsys, tmp_path, config_file):
        got = self._csv_for(capsys, tmp_path, config_file, "a.csv")
        assert got == self._reference(capsys, tmp_path, 1)

    def test_env_beats_config(self, capsys, tmp_path, config_file, monkeypatch):
        want = self._reference(capsys, tmp_path, 2)
        monkeypatch.setenv("GAPDYN_SEED", "2")
        got = self._csv_for(capsys, tmp_path, config_file, "b.csv")
        assert got == want

    def test_flag_beats_env(self, capsys, tmp_path, config_file, monkeypatch):
        want = self._reference(capsys, tmp_path, 3)
        monkeypatch.setenv("GAPDYN_SEED", "2")
        got = self._csv_for(capsys, tmp_path, config_file, "c.csv",
                            argv_extra=("--seed", "3"))
        assert got == want

    def test_garbage_env_seed(self, capsys, tmp_path, config_file, monkeypatch):
        monkeypatch.setenv("GAPDYN_SEED", "lots")
        out_csv = tmp_path / "d.csv"
        code, _, err = _run(
            capsys,
            ["simulate", "--config", config_file(self.CONFIG), "--out", str(out_csv)],
        )
        assert code == 2
        assert err.startswith("error=BadValue")

    def test_env_ignored_for_unseeded_scenario(self, capsys, config_file, monkeypatch):
        monkeypatch.setenv("GAPDYN_SEED", "lots")
        code, _, _ = _run(capsys, ["simulate", "--config", config_file()])
        assert code == 0


class TestDeterminism:
    def test_repeat_runs_are_byte_identical(self, capsys, config_file, tmp_path):
        cfg = config_file("shock = ar1\nshock_seed = 7\n")
        blobs = []
        for name in ("x", "y"):
            out_csv = tmp_path / f"{name}.csv"
            svg = tmp_path / f"{name}.svg"
            code, _, _ = _run(
                capsys,
                ["simulate", "--config", cfg, "--out", str(out_csv), "--svg", str(svg)],
            )
            assert code == 0
            blobs.append((out_csv.read_bytes(), svg.read_bytes()))
        assert blobs[0] == blobs[1]


class TestInstalledScript:
    def test_console_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-c",
             "import sys; from gapdyn.cli import main; "
             "sys.exit(main(['classify', '--gamma', '4.0', '--alpha', '1.0']))"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "regime=over-damped discriminant=12\n"
