"""
Tests for config resolution, the click commands and process exit codes.
"""

import json
import logging

import numpy as np
import pytest
from click.testing import CliRunner

from eit.cli import PRESETS, ParseError, cli, load_config, parse_config_text
from eit.fit import Nuisance, model_turnoff_T
from eit.main import main
from eit.shared.errors import SimulationError, UsageError
from eit.shared.logging import remove_logger


# ============================================================================
# Test Fixtures
# ============================================================================


def _invoke(tmp_path, *args):
    """Run a subcommand through CliRunner with logs and outputs under tmp_path."""
    run_id = f"test-{tmp_path.name}"
    argv = ["--logs-dir", str(tmp_path / "logs"), *args, "--out-dir", str(tmp_path / "out")]
    try:
        result = CliRunner().invoke(cli, argv, obj={"run_id": run_id})
    finally:
        remove_logger(run_id)
    assert result.exit_code == 0, result.output + repr(result.exception)
    return result


def _run_summaries(logs_dir):
    """Every run_summary entry written below logs_dir."""
    summaries = []
    for path in logs_dir.glob("*/run_log.jsonl"):
        for line in path.read_text().splitlines():
            entry = json.loads(line)
            if entry["type"] == "run_summary":
                summaries.append(entry)
    return summaries


# ============================================================================
# TestConfigFile
# ============================================================================


class TestConfigFile:
    """Tests for parse_config_text."""

    def test_typed_values_and_comments(self):
        """Floats, ints and strings should be converted by key; comments are skipped."""
        text = "# run settings\nomega1 = 45\nt_points = 100\nmode = TurnOn  # switch\n"
        values = parse_config_text(text)
        assert values == {"omega1": 45.0, "t_points": 100, "mode": "TurnOn"}
        assert isinstance(values["omega1"], float)
        assert isinstance(values["t_points"], int)

    def test_unknown_key(self):
        """Unknown keys should raise ParseError with the line number."""
        with pytest.raises(ParseError) as exc:
            parse_config_text("# header\nomega1 = 45\nomega3 = 1\n", path="run.conf")
        assert exc.value.line == 3
        assert "run.conf:3" in str(exc.value)

    def test_bad_number(self):
        """Non-numeric values for numeric keys should raise ParseError."""
        with pytest.raises(ParseError) as exc:
            parse_config_text("gamma = fast\n")
        assert exc.value.line == 1

    def test_missing_value(self):
        """A key without `=` should raise ParseError."""
        with pytest.raises(ParseError):
            parse_config_text("omega1\n")

    def test_parse_error_is_usage_error(self):
        """Config problems map to exit code 1."""
        assert issubclass(ParseError, UsageError)


# ============================================================================
# TestResolution
# ============================================================================


class TestResolution:
    """Tests for load_config precedence and validation."""

    def test_precedence(self, tmp_path):
        """Flags beat the config file, which beats the preset."""
        path = tmp_path / "run.conf"
        path.write_text("omega1 = 50\n")
        spec = load_config(path, {"preset": "fig9", "delta2": -30.0}, command="turnoff")

        assert spec.params.omega1 == 50.0
        assert spec.params.delta2 == -30.0
        assert spec.params.delta1 == -23.0
        assert spec.preset == "fig9"
        assert spec.command == "turnoff"

    def test_gamma_sets_both_channels(self):
        """A single gamma should fill both decay channels."""
        spec = load_config(None, {"gamma": 3.0})
        assert spec.params.gamma_ca == spec.params.gamma_cb == 3.0

    def test_missing_gamma_rejected(self):
        """A run that reads decay rates should not fall back to a default Γ."""
        with pytest.raises(UsageError, match="no decay rate given"):
            load_config(None, {"omega1": 45.0}, command="turnoff")
        with pytest.raises(UsageError, match="gamma_cb missing"):
            load_config(None, {"gamma_ca": 5.68}, command="turnoff")

    def test_gamma_free_commands(self, caplog):
        """vector3 and compare should resolve without any decay rate."""
        with caplog.at_level(logging.INFO, logger="eit.cli.config_loader"):
            spec = load_config(None, {"omega1": 10.0}, command="vector3")
        assert spec.params.gamma_ca == spec.params.gamma_cb == 5.68
        assert any("does not read gamma" in r.getMessage() for r in caplog.records)

        spec = load_config(None, {}, command="compare")
        assert spec.samples == 10

    def test_field_name_aliases(self, tmp_path):
        """uncoupled_fraction and omega1_on should be accepted for u and omega1."""
        values = parse_config_text("uncoupled_fraction = 0.3\nomega1_on = 40\n")
        assert values == {"u": 0.3, "omega1": 40.0}

        path = tmp_path / "run.conf"
        path.write_text("uncoupled_fraction = 0.3\nomega1_on = 40\ngamma = 5.5\n")
        spec = load_config(path, command="turnoff")
        assert spec.params.uncoupled_fraction == 0.3
        assert spec.params.omega1 == 40.0
        assert spec.schedule.omega1_on == 40.0

        spec = load_config(None, {"uncoupled_fraction": 0.1, "gamma": 5.5}, command="turnoff")
        assert spec.params.uncoupled_fraction == 0.1

    def test_unknown_preset(self):
        """An unknown preset name should raise UsageError."""
        with pytest.raises(UsageError):
            load_config(None, {"preset": "fig99"})

    def test_every_preset_resolves(self):
        """Each built-in preset should produce a valid RunSpec."""
        for name in PRESETS:
            spec = load_config(None, {"preset": name})
            assert spec.preset == name

    def test_missing_file(self, tmp_path):
        """A missing config file should raise UsageError."""
        with pytest.raises(UsageError):
            load_config(tmp_path / "absent.conf")

    def test_invalid_values(self):
        """Out-of-range values should surface as UsageError."""
        with pytest.raises(UsageError):
            load_config(None, {"u": 1.5, "gamma": 5.5})
        with pytest.raises(UsageError):
            load_config(None, {"t_min": 1.0, "t_max": 0.5, "gamma": 5.5})


# ============================================================================
# TestPresets
# ============================================================================


class TestPresets:
    """Tests pinning preset values to the behaviour they reproduce."""

    def test_fig7b_gain_peak(self):
        """The detuned turn-off preset should overshoot into gain near T = 1.35."""
        spec = load_config(None, {"preset": "fig7b"}, command="turnoff")
        assert spec.params.gamma == pytest.approx(2.84)
        assert spec.params.gamma_ba == pytest.approx(0.6 * 2.84)

        t = np.linspace(0.0, 0.3, 3001)
        peak = np.max(model_turnoff_T(spec.params, Nuisance(), t))
        assert peak == pytest.approx(1.35, abs=0.1)

    def test_fig7b_ringing_reported(self, tmp_path):
        """The trace command should report the ringing period 1/|Δ₂| for fig7b."""
        result = _invoke(tmp_path, "turnoff", "--preset", "fig7b", "--engine", "Analytic")
        assert "45.45 ns" in result.output


# ============================================================================
# TestCommands
# ============================================================================


class TestCommands:
    """Tests for the click subcommands."""

    def test_turnoff_trace(self, tmp_path):
        """turnoff should write trace.csv and run.meta."""
        result = _invoke(tmp_path, "turnoff", "--preset", "fig9", "--engine", "Analytic", "--t-points", "101")
        out = tmp_path / "out"
        lines = (out / "trace.csv").read_text().splitlines()
        assert lines[0] == "t_us,im_rho_bc,transmission"
        assert len(lines) == 102
        assert "command = turnoff" in (out / "run.meta").read_text()
        assert "ringing period" in result.output

    def test_spectrum(self, tmp_path):
        """spectrum should report the minima and write spectrum.csv."""
        result = _invoke(tmp_path, "spectrum", "--preset", "fig4a")
        assert "transmission minima" in result.output
        assert (tmp_path / "out" / "spectrum.csv").is_file()

    def test_scan(self, tmp_path):
        """scan should write the grid CSV and pixmap."""
        _invoke(
            tmp_path, "scan", "--preset", "fig2d", "--engine", "Analytic",
            "--delta2-points", "5", "--t-points", "10",
        )
        assert (tmp_path / "out" / "grid.csv").is_file()
        assert (tmp_path / "out" / "grid.ppm").read_bytes().startswith(b"P6\n10 5\n255\n")

    def test_vector3(self, tmp_path):
        """vector3 should write the four traces."""
        _invoke(tmp_path, "vector3", "--omega1", "10", "--omega2", "1", "--t-max", "0.5", "--t-points", "50")
        header = (tmp_path / "out" / "vector3.csv").read_text().splitlines()[0]
        assert header.startswith("t_us,im_rho_bc_from_b")

    def test_pump(self, tmp_path):
        """pump should report the slow root and the long-time population."""
        result = _invoke(tmp_path, "pump", "--omega2", "1.136", "--gamma", "5.68", "--t-max", "1", "--t-points", "50")
        assert "p4_exact_mhz" in result.output
        report = (tmp_path / "out" / "pump.txt").read_text()
        assert "long_time_rho_aa = " in report
        assert (tmp_path / "out" / "pump.csv").is_file()

    def test_fit_synthetic(self, tmp_path):
        """fit without --trace should fit a synthetic trace and its envelope."""
        result = _invoke(
            tmp_path, "fit", "--preset", "fig9", "--noise", "0", "--guess-offset", "0.5", "--envelope",
        )
        out = tmp_path / "out"
        assert (out / "synthetic_trace.csv").is_file()
        assert "converged = true" in (out / "fit.txt").read_text()
        assert "envelope decay" in result.output

    def test_operation_logged(self, tmp_path):
        """Each command should append an operation to the run log."""
        _invoke(tmp_path, "spectrum", "--preset", "fig4b")
        log = next((tmp_path / "logs").glob("*/run_log.jsonl")).read_text().splitlines()
        entry = json.loads(log[-1])
        assert entry["operation"] == "spectrum"
        assert entry["success"] is True


# ============================================================================
# TestExitCodes
# ============================================================================


class TestExitCodes:
    """Tests for main() exit-code mapping."""

    def test_success(self, tmp_path, monkeypatch):
        """A valid run should exit 0 and log a summary."""
        monkeypatch.chdir(tmp_path)
        code = main(["--logs-dir", "logs", "spectrum", "--preset", "fig4a", "--delta2-points", "11"])
        assert code == 0
        assert (tmp_path / "out" / "spectrum.csv").is_file()
        assert _run_summaries(tmp_path / "logs")[-1]["exit_code"] == 0

    def test_invalid_parameter(self, tmp_path, monkeypatch):
        """A negative Rabi frequency should exit 1."""
        monkeypatch.chdir(tmp_path)
        assert main(["--logs-dir", "logs", "turnoff", "--omega1", "-1", "--gamma", "5.5"]) == 1
        assert not (tmp_path / "out").exists()

    def test_missing_gamma(self, tmp_path, monkeypatch):
        """A turnoff run with no decay rate should exit 1 before writing anything."""
        monkeypatch.chdir(tmp_path)
        assert main(["--logs-dir", "logs", "turnoff", "--omega1", "45"]) == 1
        assert not (tmp_path / "out").exists()

    def test_missing_config(self, tmp_path, monkeypatch):
        """A missing config file should exit 1."""
        monkeypatch.chdir(tmp_path)
        assert main(["--logs-dir", "logs", "spectrum", "--config", "absent.conf"]) == 1

    def test_unknown_option(self, tmp_path, monkeypatch):
        """click usage errors should exit 1 as well."""
        monkeypatch.chdir(tmp_path)
        assert main(["--logs-dir", "logs", "spectrum", "--omega9", "1"]) == 1

    def test_numerical_failure(self, tmp_path, monkeypatch):
        """A SimulationError should exit 2 and leave no outputs."""
        monkeypatch.chdir(tmp_path)

        def fail(*args, **kwargs):
            raise SimulationError("solver diverged")

        monkeypatch.setattr("eit.cli.commands.spectrum", fail)
        assert main(["--logs-dir", "logs", "spectrum", "--preset", "fig4a"]) == 2
        assert not (tmp_path / "out").exists()

        summary = _run_summaries(tmp_path / "logs")[-1]
        assert summary["command"] == "spectrum"
        assert summary["exit_code"] == 2
        assert summary["failure_count"] == 1
