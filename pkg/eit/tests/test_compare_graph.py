"""
Tests for the compare graph: routing, sampling and an end-to-end run.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from eit.graph import create_compare_graph, draw_samples, initial_state, route_next_engine, time_grid, turnoff_tolerance
from eit.model import equal_decay
from eit.shared.contracts import CompareReport, OracleResidual
from eit.shared.logging import remove_logger


GAMMA = 5.68


# ============================================================================
# Test Fixtures
# ============================================================================


def _make_state(**overrides):
    """Create a minimal CompareState for routing tests."""
    base = {
        "run_id": "test-route",
        "seed": 0,
        "samples": [],
        "grid_points": 10,
        "decay_times": 5.0,
        "logs_dir": "logs",
        "ode_output": None,
        "laplace_output": None,
        "analytic_output": None,
        "report": None,
        "current_node": "start",
        "errors": [],
        "messages": [],
    }
    base.update(overrides)
    return base


def _make_samples():
    """Two moderate parameter sets well inside the first-order turn-off regime."""
    return [
        equal_decay(
            omega1=5.0 * GAMMA, omega2=0.02 * GAMMA, delta2=3.7, gamma=GAMMA, gamma_ba=0.3 * GAMMA
        ),
        equal_decay(
            omega1=3.0 * GAMMA,
            omega2=0.02 * GAMMA,
            delta1=-10.0,
            delta2=30.0,
            gamma=GAMMA,
            gamma_ba=0.2 * GAMMA,
        ),
    ]


def _filled():
    """A non-empty engine slot."""
    return {"samples": []}


# ============================================================================
# TestRouter
# ============================================================================


class TestRouter:
    """Tests for route_next_engine."""

    def test_starts_with_ode(self):
        """Empty slots should route to the ODE engine first."""
        assert route_next_engine(_make_state()) == "ode_node"

    def test_laplace_after_ode(self):
        """With ODE filled the Laplace engine runs next."""
        assert route_next_engine(_make_state(ode_output=_filled())) == "laplace_node"

    def test_analytic_after_laplace(self):
        """With ODE and Laplace filled the analytic engine runs next."""
        state = _make_state(ode_output=_filled(), laplace_output=_filled())
        assert route_next_engine(state) == "analytic_node"

    def test_complete_when_all_filled(self):
        """All slots filled should route to complete."""
        state = _make_state(ode_output=_filled(), laplace_output=_filled(), analytic_output=_filled())
        assert route_next_engine(state) == "complete"

    def test_skips_filled_slots(self):
        """A pre-filled Laplace slot should not be recomputed."""
        state = _make_state(laplace_output=_filled())
        assert route_next_engine(state) == "ode_node"
        state = _make_state(ode_output=_filled(), laplace_output=_filled(), analytic_output=None)
        assert route_next_engine(state) == "analytic_node"


# ============================================================================
# TestSamples
# ============================================================================


class TestSamples:
    """Tests for parameter sampling and tolerances."""

    def test_ranges(self):
        """Samples should respect the documented parameter ranges."""
        samples = draw_samples(20, seed=11)
        assert len(samples) == 20
        for params in samples:
            assert 2.0 * GAMMA <= params.omega1 <= 10.0 * GAMMA
            assert params.omega2 == pytest.approx(0.02 * GAMMA)
            assert abs(params.delta1) <= 2.0 * params.omega1
            assert abs(params.delta2) <= 2.0 * params.omega1
            assert 0.0 <= params.gamma_ba <= 0.6 * GAMMA
            assert params.equal_decay

    def test_reproducible(self):
        """The same seed should give the same samples."""
        assert draw_samples(3, seed=5) == draw_samples(3, seed=5)

    def test_turnoff_tolerance(self):
        """Ω₂ = 0.02Γ should allow 4e-5."""
        params = equal_decay(omega2=0.02 * GAMMA, gamma=GAMMA)
        assert turnoff_tolerance(params) == pytest.approx(4e-5)

    def test_time_grid(self):
        """The grid should span the requested number of decay times."""
        params = equal_decay(gamma=GAMMA)
        t = time_grid(params, 11, 5.0)
        assert t.size == 11
        assert t[-1] == pytest.approx(5.0 / (2.0 * np.pi * GAMMA))


# ============================================================================
# TestReport
# ============================================================================


class TestReport:
    """Tests for the CompareReport contract."""

    def test_pass_and_fail(self):
        """Rows above tolerance should fail the report."""
        good = OracleResidual(sample=0, check="turnon laplace-vs-ode", max_abs=1e-8, tolerance=1e-6)
        bad = OracleResidual(sample=1, check="turnon laplace-vs-ode", max_abs=1e-5, tolerance=1e-6)
        assert CompareReport(run_id="r", seed=1, rows=[good]).all_passed
        report = CompareReport(run_id="r", seed=1, rows=[good, bad])
        assert not report.all_passed
        assert report.to_text().splitlines()[-1].endswith("FAIL")

    def test_errors_fail_the_report(self):
        """Engine failures should fail the report even without rows."""
        assert not CompareReport(run_id="r", seed=1, errors=["ode_node sample 0: boom"]).all_passed

    def test_negative_residual_rejected(self):
        """max_abs cannot be negative."""
        with pytest.raises(ValidationError):
            OracleResidual(sample=0, check="x", max_abs=-1.0, tolerance=1.0)


# ============================================================================
# TestCompareGraph
# ============================================================================


class TestCompareGraph:
    """End-to-end run of the compare graph."""

    def test_engines_agree(self, tmp_path):
        """ODE, Laplace and closed-form traces should agree within tolerance."""
        run_id = "test-compare"
        app = create_compare_graph()
        try:
            final = app.invoke(
                initial_state(run_id, _make_samples(), seed=3, grid_points=50, logs_dir=str(tmp_path))
            )
        finally:
            remove_logger(run_id)

        assert final["current_node"] == "complete"
        assert final["errors"] == []
        report = CompareReport(**final["report"])
        assert len(report.rows) == 4
        assert report.all_passed, report.to_text()

        nodes = [m["node"] for m in final["messages"]]
        assert nodes == ["ode_node", "laplace_node", "analytic_node", "complete"]
        assert (tmp_path / run_id / "run_log.jsonl").is_file()
