"""
Unit tests for the domain model.

Covers parameter validation, unit conversion, density-matrix invariants,
switching schedules and dressed-state positions.
"""

import math

import numpy as np
import pytest

from eit.model import (
    TWO_PI,
    BadFraction,
    DensityMatrix,
    FieldSchedule,
    LambdaParams,
    NegativeRate,
    StateInvariantError,
    SwitchMode,
    angular,
    cyclic,
    dressed_state_positions,
    equal_decay,
    omega1_at,
    omega2_at,
    validate,
)
from eit.shared.errors import UsageError


# ============================================================================
# Test Fixtures
# ============================================================================


def _make_params(**overrides):
    """Create a generic equal-decay parameter record."""
    values = {
        "omega1": 45.0,
        "omega2": 1.0,
        "delta1": -23.0,
        "delta2": 14.0,
        "gamma": 5.5,
        "gamma_ba": 3.3,
        "uncoupled_fraction": 0.2,
    }
    values.update(overrides)
    return equal_decay(**values)


# ============================================================================
# TestParams
# ============================================================================


class TestParams:
    """Tests for LambdaParams validation and derived quantities."""

    def test_two_photon_detuning_is_derived(self):
        """Δ₂₁ should equal Δ₂ − Δ₁."""
        params = _make_params(delta1=-23.0, delta2=14.0)
        assert params.delta21 == pytest.approx(37.0)

    def test_equal_decay_sets_both_channels(self):
        """equal_decay should copy Γ into Γ_ca and Γ_cb."""
        params = _make_params(gamma=5.68)
        assert params.gamma_ca == params.gamma_cb == 5.68
        assert params.equal_decay is True
        assert params.gamma == pytest.approx(5.68)

    def test_unequal_decay_mean(self):
        """gamma should be the mean of the two channels."""
        params = LambdaParams(gamma_ca=4.0, gamma_cb=6.0)
        assert params.equal_decay is False
        assert params.gamma == pytest.approx(5.0)

    def test_negative_rabi_frequency_rejected(self):
        """A negative Rabi frequency should raise NegativeRate."""
        with pytest.raises(NegativeRate):
            _make_params(omega1=-1.0)

    def test_zero_decay_rejected(self):
        """Decay rates must be strictly positive."""
        with pytest.raises(NegativeRate):
            LambdaParams(gamma_ca=0.0, gamma_cb=5.0)

    def test_nan_rejected(self):
        """NaN inputs should not pass validation."""
        with pytest.raises(NegativeRate):
            _make_params(gamma_ba=float("nan"))
        with pytest.raises(NegativeRate):
            _make_params(delta2=float("nan"))

    def test_fraction_out_of_range(self):
        """u outside [0, 1] should raise BadFraction."""
        with pytest.raises(BadFraction):
            _make_params(uncoupled_fraction=1.5)

    def test_errors_are_usage_errors(self):
        """Validation failures should map to the usage-error exit code."""
        assert issubclass(NegativeRate, UsageError)
        assert issubclass(BadFraction, UsageError)

    def test_validate_is_idempotent(self):
        """Validating a validated record should return an equal record."""
        params = _make_params()
        assert validate(params) == params
        assert validate(validate(params)) == params

    def test_validate_accepts_mapping(self):
        """validate should accept plain dicts."""
        params = validate({"omega1": 10.0, "gamma_ca": 5.0, "gamma_cb": 5.0})
        assert params.omega1 == 10.0
        assert params.omega2 == 0.0

    def test_angular_record(self):
        """Angular view should hold half Rabi frequencies in rad/μs."""
        ang = _make_params(omega1=45.0, omega2=1.0).angular()
        assert ang.h1 == pytest.approx(math.pi * 45.0)
        assert ang.h2 == pytest.approx(math.pi * 1.0)
        assert ang.gamma == pytest.approx(TWO_PI * 5.5)
        assert ang.g_total == pytest.approx(2.0 * TWO_PI * 5.5)
        assert ang.d21 == pytest.approx(TWO_PI * 37.0)


# ============================================================================
# TestUnits
# ============================================================================


class TestUnits:
    """Tests for cyclic/angular conversion."""

    def test_angular_scales_by_two_pi(self):
        """1 MHz should be 2π rad/μs."""
        assert angular(1.0) == pytest.approx(2.0 * math.pi)

    def test_cyclic_inverts_angular(self):
        """cyclic(angular(x)) should return x for arrays."""
        values = np.array([-3.0, 0.0, 5.68])
        assert np.allclose(cyclic(angular(values)), values)


# ============================================================================
# TestDensityMatrix
# ============================================================================


class TestDensityMatrix:
    """Tests for DensityMatrix invariants and views."""

    def test_populations_constructor(self):
        """ρ_cc should be restored from the trace."""
        rho = DensityMatrix.populations(0.3, 0.5)
        assert rho.cc == pytest.approx(0.2)
        assert rho.trace == pytest.approx(1.0)
        assert rho.is_diagonal

    def test_trace_violation_rejected(self):
        """A trace away from 1 should raise StateInvariantError."""
        with pytest.raises(StateInvariantError):
            DensityMatrix(aa=0.5, bb=0.5, cc=0.1)

    def test_negative_population_rejected(self):
        """Negative diagonal entries should raise StateInvariantError."""
        with pytest.raises(StateInvariantError):
            DensityMatrix(aa=-0.1, bb=1.1, cc=0.0)

    def test_hermitian_conjugates(self):
        """Lower-triangle entries should be conjugates of the stored ones."""
        rho = DensityMatrix(aa=0.2, bb=0.7, cc=0.1, ab=0.1 + 0.05j, bc=-0.02j)
        assert rho.ba == (0.1 - 0.05j)
        assert rho.entry("cb") == 0.02j
        m = rho.matrix()
        assert np.allclose(m, m.conj().T)

    def test_unknown_entry(self):
        """entry should reject labels that are not two level names."""
        with pytest.raises(KeyError):
            DensityMatrix.populations(0.5, 0.5).entry("ad")

    def test_pure_state_sign_convention(self):
        """For |ψ⟩ = v_a|a⟩ + v_b|b⟩ − i v_c|c⟩, Im ρ_bc should equal v_b·v_c."""
        rho = DensityMatrix.pure(0.0, 0.6, 0.8)
        assert rho.bc.imag == pytest.approx(0.48)
        assert rho.bc.real == pytest.approx(0.0)
        assert rho.min_eigenvalue() == pytest.approx(0.0, abs=1e-12)

    def test_vector_view(self):
        """from_vector should invert to_vector."""
        rho = DensityMatrix(aa=0.25, bb=0.5, cc=0.25, ab=0.1 + 0.05j, ac=0.01j, bc=-0.02 + 0.03j)
        assert DensityMatrix.from_vector(rho.to_vector()) == rho

    def test_with_coherence(self):
        """with_coherence should replace only the named entry."""
        rho = DensityMatrix.populations(0.0, 1.0).with_coherence(bc=0.01j)
        assert rho.bc == 0.01j
        assert rho.bb == 1.0


# ============================================================================
# TestSchedule
# ============================================================================


class TestSchedule:
    """Tests for piecewise-constant field schedules."""

    def test_turn_off_is_right_continuous(self):
        """The switch instant should belong to the post-switch epoch."""
        schedule = FieldSchedule(mode=SwitchMode.TURN_OFF, switch_time=1.0, omega1_on=45.0)
        assert omega1_at(schedule, 0.999) == 45.0
        assert omega1_at(schedule, 1.0) == 0.0
        assert omega1_at(schedule, 2.0) == 0.0

    def test_turn_on(self):
        """TurnOn should start dark and switch the coupling on."""
        schedule = FieldSchedule(mode=SwitchMode.TURN_ON, switch_time=0.0, omega1_on=45.0)
        assert omega1_at(schedule, -0.1) == 0.0
        assert omega1_at(schedule, 0.0) == 45.0

    def test_steady_is_constant(self):
        """Steady mode should keep the coupling on at all times."""
        schedule = FieldSchedule(mode=SwitchMode.STEADY, omega1_on=45.0)
        assert omega1_at(schedule, -5.0) == omega1_at(schedule, 5.0) == 45.0

    def test_both_on_gates_probe(self):
        """BothOn should gate the probe as well as the coupling."""
        params = _make_params(omega2=1.0)
        schedule = FieldSchedule.for_params(SwitchMode.BOTH_ON, params)
        assert omega2_at(schedule, params, -0.1) == 0.0
        assert omega2_at(schedule, params, 0.0) == 1.0
        assert omega1_at(schedule, 0.0) == params.omega1

    def test_probe_always_on_otherwise(self):
        """Only BothOn switches the probe."""
        params = _make_params(omega2=1.0)
        schedule = FieldSchedule.for_params(SwitchMode.TURN_ON, params)
        assert omega2_at(schedule, params, -1.0) == 1.0

    def test_mode_from_string(self):
        """Modes should parse from their external names."""
        assert SwitchMode("TurnOff") is SwitchMode.TURN_OFF
        with pytest.raises(ValueError):
            SwitchMode("Sideways")


# ============================================================================
# TestDressedStates
# ============================================================================


class TestDressedStates:
    """Tests for dressed_state_positions."""

    def test_detuned_coupling(self):
        """Δ₁=−23, Ω₁=45 should give a major feature near 14 and a minor near −37 MHz."""
        major, minor = dressed_state_positions(-23.0, 45.0)
        assert major == pytest.approx(13.769, abs=1e-3)
        assert minor == pytest.approx(-36.769, abs=1e-3)

    def test_resonant_tie_reports_positive_major(self):
        """On resonance the two features are symmetric; the positive one is major."""
        assert dressed_state_positions(0.0, 45.0) == pytest.approx((22.5, -22.5))

    def test_no_coupling(self):
        """Without coupling both features collapse onto the bare resonance and Δ₁."""
        major, minor = dressed_state_positions(-10.0, 0.0)
        assert major == pytest.approx(0.0)
        assert minor == pytest.approx(-10.0)
