"""
Tests for transmission, steady spectra and transient scan grids.
"""

import numpy as np
import pytest

from eit.analytic import turnoff_im_rbc
from eit.model import FieldSchedule, SwitchMode, equal_decay
from eit.observe import (
    Engine,
    EngineUnsupported,
    Quantity,
    ScanConfig,
    ScanGrid,
    absorption_minima,
    dressed_ridges,
    rabi_peak_curves,
    scan,
    spectrum,
    transmission,
    write_pixmap,
    write_scan_csv,
)
from eit.ode import BadGrid, steady_state
from eit.shared.errors import UsageError


QUIET = ScanConfig(show_progress=False)


# ============================================================================
# Test Fixtures
# ============================================================================


def _make_params(**overrides):
    """Resonant-coupling spectrum parameters with a 20 % uncoupled background."""
    values = {
        "omega1": 45.0,
        "omega2": 1.0,
        "delta1": 0.0,
        "gamma": 5.5,
        "gamma_ba": 3.3,
        "uncoupled_fraction": 0.2,
    }
    values.update(overrides)
    return equal_decay(**values)


def _make_grid(values, delta2_axis=None, time_axis=None):
    """ScanGrid around a literal value matrix."""
    values = np.asarray(values, dtype=float)
    rows, cols = values.shape
    return ScanGrid(
        delta2_axis=np.arange(rows, dtype=float) if delta2_axis is None else np.asarray(delta2_axis, dtype=float),
        time_axis=np.arange(cols, dtype=float) if time_axis is None else np.asarray(time_axis, dtype=float),
        values=values,
        mode=SwitchMode.TURN_OFF,
    )


# ============================================================================
# TestTransmission
# ============================================================================


class TestTransmission:
    """Tests for the scaled transmission."""

    def test_perfect_transparency_leaves_background(self):
        """No coupled absorption on resonance should leave T = 1 − u."""
        params = _make_params(delta2=0.0)
        assert transmission(0.0, params) == pytest.approx(0.8)

    def test_bare_resonance_is_zero(self):
        """Full two-level absorption with u = 0 should read T = 0."""
        params = _make_params(delta2=0.0, uncoupled_fraction=0.0)
        im_rho_bc = -(params.omega2 / 2.0) / params.gamma
        assert transmission(im_rho_bc, params) == pytest.approx(0.0, abs=1e-12)

    def test_probe_required(self):
        """Without a probe the normalization is undefined."""
        with pytest.raises(UsageError):
            transmission(0.0, _make_params(omega2=0.0))

    def test_array_input(self):
        """Arrays should broadcast against a Δ₂ axis."""
        params = _make_params()
        values = transmission(np.zeros(3), params, np.array([-5.0, 0.0, 5.0]))
        assert values.shape == (3,)
        assert values[0] == pytest.approx(values[2])


# ============================================================================
# TestSpectrum
# ============================================================================


class TestSpectrum:
    """Tests for steady-state spectra."""

    def test_resonant_coupling_center(self):
        """Δ₁ = 0, Ω₁ = 45 should give T(0) ≈ 0.7723."""
        table = spectrum(_make_params(), [0.0])
        assert table.shape == (1, 2)
        assert table[0, 1] == pytest.approx(0.7723, abs=1e-4)

    def test_autler_townes_minima(self):
        """Resonant coupling should split the absorption into dips near ±Ω₁/2."""
        table = spectrum(_make_params(), np.linspace(-40.0, 40.0, 1601))
        deepest = np.sort(absorption_minima(table)[:2])
        assert deepest == pytest.approx([-22.5, 22.5], abs=0.5)

    def test_detuned_coupling_minima(self):
        """Δ₁ = −23 should put the dips at the dressed-state positions."""
        params = _make_params(delta1=-23.0, uncoupled_fraction=0.0)
        table = spectrum(params, np.linspace(-60.0, 40.0, 2001))
        minima = absorption_minima(table)
        major, minor = dressed_ridges(params)
        assert minima[0] == pytest.approx(major, abs=0.5)
        assert np.min(np.abs(minima - minor)) < 0.5


# ============================================================================
# TestScanGrid
# ============================================================================


class TestScanGrid:
    """Tests for ScanGrid construction and lookup."""

    def test_unsorted_axis_rejected(self):
        """A descending Δ₂ axis should raise BadGrid."""
        with pytest.raises(BadGrid):
            _make_grid([[0.0], [1.0]], delta2_axis=[1.0, 0.0])

    def test_shape_mismatch_rejected(self):
        """values must be (len Δ₂, len t)."""
        with pytest.raises(BadGrid):
            _make_grid(np.zeros((2, 3)), time_axis=[0.0, 1.0])

    def test_row_and_column(self):
        """Lookups should snap to the nearest axis entry."""
        grid = _make_grid([[1.0, 2.0], [3.0, 4.0]])
        assert np.array_equal(grid.row(0.9), [3.0, 4.0])
        assert np.array_equal(grid.column(0.1), [1.0, 3.0])


# ============================================================================
# TestScan
# ============================================================================


class TestScan:
    """Tests for transient scans."""

    def test_analytic_turn_off_rows(self):
        """Analytic turn-off rows should be the closed form at each Δ₂."""
        params = _make_params(delta1=-23.0)
        schedule = FieldSchedule.for_params(SwitchMode.TURN_OFF, params)
        t = np.linspace(0.0, 0.2, 21)
        grid = scan(params, schedule, [-40.0, 0.0, 14.0], t, engine=Engine.ANALYTIC, config=QUIET)

        assert grid.values.shape == (3, 21)
        expected = turnoff_im_rbc(params.model_copy(update={"delta2": 14.0}), t)
        assert np.allclose(grid.row(14.0), expected)

    def test_engine_values(self):
        """Scans run on the ODE or the closed forms only."""
        assert [e.value for e in Engine] == ["ODE", "Analytic"]

    def test_analytic_turn_on_needs_resonance(self):
        """Analytic turn-on rows outside Δ₁ = Δ₂ = 0 should be refused."""
        params = _make_params(delta1=-23.0)
        schedule = FieldSchedule.for_params(SwitchMode.TURN_ON, params)
        with pytest.raises(EngineUnsupported):
            scan(params, schedule, [0.0], [0.0, 0.1], engine="Analytic", config=QUIET)

    def test_analytic_steady_unsupported(self):
        """There is no analytic engine for the Steady mode."""
        params = _make_params()
        schedule = FieldSchedule.for_params(SwitchMode.STEADY, params)
        with pytest.raises(EngineUnsupported):
            scan(params, schedule, [0.0], [0.0, 0.1], engine="Analytic", config=QUIET)

    def test_times_before_switch_rejected(self):
        """The time axis must start at or after the switch."""
        params = _make_params()
        schedule = FieldSchedule.for_params(SwitchMode.TURN_OFF, params, switch_time=0.1)
        with pytest.raises(BadGrid):
            scan(params, schedule, [0.0], [0.0, 0.2], engine="Analytic", config=QUIET)

    def test_ode_turn_on_is_symmetric_in_probe_detuning(self):
        """With Δ₁ = 0 the turn-on response should be even in Δ₂."""
        params = equal_decay(omega1=20.0, omega2=1.0, gamma=5.68, gamma_ba=1.0)
        schedule = FieldSchedule.for_params(SwitchMode.TURN_ON, params)
        grid = scan(
            params,
            schedule,
            [-4.0, 0.0, 4.0],
            np.linspace(0.0, 0.2, 11),
            config=ScanConfig(rel_tol=1e-10, show_progress=False),
        )
        assert np.allclose(grid.values[0], grid.values[2], atol=1e-7)
        assert not np.allclose(grid.values[0], grid.values[1], atol=1e-7)

    def test_resonant_eit_level(self):
        """Long after a resonant turn-on with u = 0.2 and Γ_ba = 0.6Γ the probe settles near T = 0.8."""
        params = _make_params(delta2=0.0)
        assert params.gamma_ba == pytest.approx(0.6 * params.gamma)
        steady = transmission(steady_state(params, params.omega1).bc.imag, params)
        assert steady == pytest.approx(0.8, abs=0.05)

        schedule = FieldSchedule.for_params(SwitchMode.TURN_ON, params)
        grid = scan(
            params, schedule, [0.0], [1.0, 1.5], quantity=Quantity.TRANSMISSION,
            config=ScanConfig(rel_tol=1e-10, show_progress=False),
        )
        assert grid.values[0] == pytest.approx([0.8, 0.8], abs=0.05)
        assert grid.values[0, -1] == pytest.approx(steady, abs=1e-3)

    def test_rabi_peak_curves(self):
        """Guide curves should sit at Ω₁/2 ± n/t."""
        curves = rabi_peak_curves(20.0, 2, [0.1, 0.2])
        assert [n for n, _, _ in curves] == [1, 2]
        n, upper, lower = curves[0]
        assert np.allclose(upper, [20.0, 15.0])
        assert np.allclose(lower, [0.0, 5.0])

    def test_rabi_peak_curves_need_order(self):
        """n_max below 1 should raise UsageError."""
        with pytest.raises(UsageError):
            rabi_peak_curves(20.0, 0, [0.1])


# ============================================================================
# TestScanOutput
# ============================================================================


class TestScanOutput:
    """Tests for the CSV and pixmap writers."""

    def test_csv_layout(self, tmp_path):
        """First row holds the times; every other row starts with its Δ₂."""
        grid = _make_grid([[0.5, -0.5], [1.0, 2.0]], delta2_axis=[-3.0, 3.0], time_axis=[0.0, 0.1])
        path = write_scan_csv(grid, tmp_path / "grid.csv")

        lines = path.read_text().splitlines()
        assert lines[0] == "t_us,0,0.10000000000000001"
        table = np.loadtxt(path, delimiter=",", skiprows=1)
        assert np.array_equal(table[:, 0], [-3.0, 3.0])
        assert np.array_equal(table[:, 1:], grid.values)

    def test_pixmap(self, tmp_path):
        """The top row is the largest Δ₂; positive values are red."""
        grid = _make_grid([[-1.0], [1.0]])
        data = write_pixmap(grid, tmp_path / "grid.ppm").read_bytes()

        header = b"P6\n1 2\n255\n"
        assert data.startswith(header)
        pixels = data[len(header):]
        assert pixels[:3] == bytes([255, 0, 0])
        assert pixels[3:] == bytes([0, 0, 255])
