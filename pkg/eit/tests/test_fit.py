"""
Tests for turn-off trace fitting and envelope extraction.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from eit.analytic import turnoff_initial_coherence
from eit.fit import (
    DEFAULT_FREE,
    BadTrace,
    FitConfig,
    FitNoConvergence,
    FitResult,
    Nuisance,
    SingularJacobian,
    TooFewExtrema,
    Trace,
    envelope_decay,
    fit_turnoff,
    model_turnoff_im,
    read_trace_csv,
    recovery_study,
    synthetic_trace,
    write_fit_report,
    write_trace_csv,
)
from eit.model import equal_decay
from eit.shared.errors import UsageError


# ============================================================================
# Test Fixtures
# ============================================================================


def _make_params(**overrides):
    """Detuned turn-off parameters with visible ringing."""
    values = {
        "omega1": 46.0,
        "omega2": 1.0,
        "delta1": -23.0,
        "delta2": -40.0,
        "gamma": 5.5,
        "gamma_ba": 3.3,
        "uncoupled_fraction": 0.2,
    }
    values.update(overrides)
    return equal_decay(**values)


def _make_times():
    """A short pre-switch stretch followed by the ringing."""
    return np.linspace(-0.02, 0.28, 301)


def _make_guess(params, offset=0.5):
    """Initial guess with Δ₂ displaced by `offset` MHz."""
    return params.model_copy(update={"delta2": params.delta2 + offset})


# ============================================================================
# TestFitTurnoff
# ============================================================================


class TestFitTurnoff:
    """Tests for fit_turnoff."""

    def test_noiseless_recovery(self):
        """A noiseless synthetic trace should return the true Δ₂."""
        params = _make_params()
        trace = synthetic_trace(params, Nuisance(), _make_times())
        result = fit_turnoff(trace, _make_guess(params), free=DEFAULT_FREE)

        assert result.converged
        assert result.params.delta2 == pytest.approx(-40.0, abs=1e-5)
        assert result.nuisance.scale == pytest.approx(1.0, abs=1e-5)
        assert set(result.stderr) == set(DEFAULT_FREE)
        assert result.rss < 1e-12

    def test_frozen_parameters_untouched(self):
        """Names outside the free set should keep their guessed values."""
        params = _make_params()
        trace = synthetic_trace(params, Nuisance(), _make_times())
        result = fit_turnoff(trace, _make_guess(params), free=("delta2", "scale", "baseline"))
        assert result.params.omega1 == params.omega1
        assert result.params.gamma_ba == params.gamma_ba
        assert result.nuisance.t0 == 0.0

    def test_recovery_study(self):
        """Noisy fits should scatter tightly around the true Δ₂."""
        params = _make_params()
        fitted = recovery_study(
            params, Nuisance(), _make_times(), noise=1e-3, seeds=[1, 2], initial_params=_make_guess(params)
        )
        assert len(fitted) == 2
        assert np.all(np.abs(np.array(fitted) + 40.0) < 0.5)

    def test_recovery_at_one_percent_noise(self):
        """Over 100 seeds at 1 % noise at least 95 fits should land within 0.3 MHz of Δ₂."""
        params = _make_params()
        times = np.linspace(0.0, 0.3, 601)
        fitted = np.array(
            recovery_study(params, Nuisance(), times, noise=0.01, seeds=range(100), initial_params=_make_guess(params))
        )
        assert fitted.size == 100
        # NaN from a failed fit counts as a miss
        assert np.count_nonzero(np.abs(fitted + 40.0) < 0.3) >= 95

    def test_collinear_parameters(self):
        """A trace entirely before the switch cannot separate scale from baseline."""
        params = _make_params()
        nuisance = Nuisance(t0=1.0)
        trace = synthetic_trace(params, nuisance, np.linspace(0.0, 0.5, 20))
        with pytest.raises(SingularJacobian):
            fit_turnoff(trace, params, nuisance, free=("scale", "baseline"))

    def test_iteration_cap(self):
        """Hitting the iteration cap should raise FitNoConvergence."""
        params = _make_params()
        trace = synthetic_trace(params, Nuisance(), _make_times())
        with pytest.raises(FitNoConvergence):
            fit_turnoff(trace, _make_guess(params), config=FitConfig(max_iterations=1))

    def test_free_set_checked(self):
        """Empty, unknown or repeated free names should raise UsageError."""
        params = _make_params()
        trace = synthetic_trace(params, Nuisance(), _make_times())
        for free in ((), ("omega3",), ("delta2", "delta2")):
            with pytest.raises(UsageError):
                fit_turnoff(trace, params, free=free)


# ============================================================================
# TestEnvelope
# ============================================================================


class TestEnvelope:
    """Tests for envelope_decay."""

    def test_decay_rate_is_gamma(self):
        """The ringing envelope should decay at Γ."""
        params = _make_params()
        trace = synthetic_trace(params, Nuisance(), np.linspace(0.0, 0.3, 3001))
        assert envelope_decay(trace) == pytest.approx(5.5, abs=0.2)

    def test_monotone_trace(self):
        """A trace without extrema should raise TooFewExtrema."""
        ramp = np.linspace(0.0, 1.0, 20)
        with pytest.raises(TooFewExtrema):
            envelope_decay(Trace(times=ramp, transmissions=ramp))


# ============================================================================
# TestTrace
# ============================================================================


class TestTrace:
    """Tests for Trace validation and CSV input/output."""

    def test_too_short(self):
        """Fewer than eight samples should raise BadTrace."""
        with pytest.raises(BadTrace):
            Trace(times=np.arange(5.0), transmissions=np.zeros(5))

    def test_unsorted(self):
        """Times must be strictly ascending."""
        times = np.arange(10.0)
        times[3] = times[2]
        with pytest.raises(BadTrace):
            Trace(times=times, transmissions=np.zeros(10))

    def test_csv_round_trip(self, tmp_path):
        """write_trace_csv output should read back unchanged."""
        trace = synthetic_trace(_make_params(), Nuisance(), np.linspace(0.0, 0.1, 11), noise=1e-3, seed=4)
        path = write_trace_csv(trace, tmp_path / "trace.csv")
        assert path.read_text().splitlines()[0] == "t_us,transmission"
        restored = read_trace_csv(path)
        assert np.array_equal(restored.times, trace.times)
        assert np.array_equal(restored.transmissions, trace.transmissions)

    def test_wrong_header(self, tmp_path):
        """A CSV without the trace header should raise BadTrace."""
        path = tmp_path / "trace.csv"
        path.write_text("time,value\n0,1\n")
        with pytest.raises(BadTrace):
            read_trace_csv(path)


# ============================================================================
# TestModel
# ============================================================================


class TestModel:
    """Tests for the nuisance-mapped turn-off model."""

    def test_held_before_switch(self):
        """Before t0 the model should sit at the steady coherence."""
        params = _make_params()
        values = model_turnoff_im(params, Nuisance(t0=0.1), np.array([0.0, 0.05]))
        assert np.allclose(values, turnoff_initial_coherence(params).imag)

    def test_scale_and_baseline(self):
        """scale and baseline should act affinely on Im ρ_bc."""
        params = _make_params()
        t = np.linspace(0.0, 0.1, 5)
        plain = model_turnoff_im(params, Nuisance(), t)
        mapped = model_turnoff_im(params, Nuisance(scale=2.0, baseline=0.5), t)
        assert np.allclose(mapped, 2.0 * plain + 0.5)


# ============================================================================
# TestReport
# ============================================================================


class TestReport:
    """Tests for FitResult and the text report."""

    def test_report_lines(self, tmp_path):
        """The report should list value +/- error, then rss and converged."""
        result = FitResult(
            params=_make_params(),
            nuisance=Nuisance(),
            free=("delta2",),
            stderr={"delta2": 0.01},
            rss=1e-6,
            converged=True,
        )
        lines = write_fit_report(result, tmp_path / "fit.txt").read_text().splitlines()
        assert lines == ["delta2 = -40.0 +/- 0.01", "rss = 1e-06", "converged = true"]

    def test_negative_stderr_rejected(self):
        """Standard errors cannot be negative."""
        with pytest.raises(ValidationError):
            FitResult(
                params=_make_params(),
                nuisance=Nuisance(),
                free=("delta2",),
                stderr={"delta2": -0.01},
                rss=1e-6,
                converged=True,
            )
