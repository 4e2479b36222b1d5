"""
Click command group `eit`.

Every subcommand resolves a RunSpec, computes all results, and only then
writes its files plus a `run.meta` sidecar, so a failed run leaves no
partial outputs.
"""

import logging
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

import click
import numpy as np

from eit.analytic.pumping import pump_intermediate
from eit.cli.config_loader import RunSpec, ensure_out_dir, load_config
from eit.cli.presets import PRESETS, preset_help
from eit.fit.config import DEFAULT_FREE
from eit.fit.envelope import envelope_decay
from eit.fit.least_squares import fit_turnoff, write_fit_report
from eit.fit.model import Nuisance
from eit.fit.trace import read_trace_csv, synthetic_trace, write_trace_csv
from eit.graph.build import create_compare_graph, initial_state
from eit.graph.samples import draw_samples
from eit.laplace.rational import long_time_limit
from eit.laplace.systems import p4_approx, p4_exact, pump_epochs, pump_system
from eit.model.density import DensityMatrix
from eit.model.schedule import FieldSchedule, SwitchMode
from eit.model.units import cyclic
from eit.observe.config import ScanConfig
from eit.observe.io import write_pixmap, write_scan_csv
from eit.observe.scan import scan
from eit.observe.transmission import absorption_minima, dressed_ridges, spectrum, transmission
from eit.ode.config import OdeConfig
from eit.ode.integrate import evolve
from eit.ode.io import write_trajectory_csv
from eit.shared.contracts.compare_report import CompareReport
from eit.shared.errors import SimulationError
from eit.shared.logging import get_or_create_logger, write_run_meta
from eit.vector3.rotation import (
    RabiVector,
    StateVector3,
    averaged_fast_oscillation,
    im_rbc_first_order,
    im_rbc_of,
    trajectory,
)


logger = logging.getLogger(__name__)

Writer = Tuple[str, Callable[[Path], Any]]


class ComparisonFailed(SimulationError):
    """Raised when a compare run has residuals above tolerance or engine failures."""

    pass


# ============================================================================
# Shared options and execution
# ============================================================================

_PARAM_OPTIONS = [
    click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                 help="Config file of `key = value` lines"),
    click.option("--preset", type=click.Choice(sorted(PRESETS)), default=None, help=preset_help()),
    click.option("--omega1", type=float, default=None, help="Coupling Rabi frequency Ω₁ (MHz)"),
    click.option("--omega2", type=float, default=None, help="Probe Rabi frequency Ω₂ (MHz)"),
    click.option("--delta1", type=float, default=None, help="Coupling detuning Δ₁ (MHz)"),
    click.option("--delta2", type=float, default=None, help="Probe detuning Δ₂ (MHz)"),
    click.option("--gamma", type=float, default=None, help="Decay rate Γ = Γ_ca = Γ_cb (MHz)"),
    click.option("--gamma-ba", "gamma_ba", type=float, default=None, help="Ground-coherence dephasing Γ_ba (MHz)"),
    click.option("--u", type=float, default=None, help="Uncoupled absorption fraction"),
    click.option("--t-min", "t_min", type=float, default=None, help="First output time (μs)"),
    click.option("--t-max", "t_max", type=float, default=None, help="Last output time (μs)"),
    click.option("--t-points", "t_points", type=int, default=None, help="Number of output times"),
    click.option("--rel-tol", "rel_tol", type=float, default=None, help="Integrator relative tolerance"),
    click.option("--out-dir", "out_dir", type=str, default=None, help="Output directory"),
]

_AXIS_OPTIONS = [
    click.option("--delta2-min", "delta2_min", type=float, default=None, help="Lowest Δ₂ (MHz)"),
    click.option("--delta2-max", "delta2_max", type=float, default=None, help="Highest Δ₂ (MHz)"),
    click.option("--delta2-points", "delta2_points", type=int, default=None, help="Number of Δ₂ values"),
]

_ENGINE_OPTION = click.option(
    "--engine", type=click.Choice(["ODE", "Analytic"]), default=None, help="Trace engine"
)


def _with_options(options):
    def decorate(f):
        for option in reversed(options):
            f = option(f)
        return f

    return decorate


def _time_axis(spec: RunSpec) -> np.ndarray:
    low, high, points = spec.time_axis
    return np.linspace(low, high, points)


def _delta2_axis(spec: RunSpec) -> np.ndarray:
    low, high, points = spec.delta2_axis
    return np.linspace(low, high, points)


def _execute(ctx: click.Context, command: str, overrides: Dict[str, Any], body: Callable[[RunSpec], List[Writer]]) -> None:
    """Resolve, compute, then write outputs and run.meta."""
    config_path = overrides.pop("config_path", None)
    spec = load_config(config_path, overrides, command)
    run_id = ctx.obj["run_id"]
    run_logger = get_or_create_logger(run_id, ctx.obj["logs_dir"])
    _log = f"[run={run_id}] [command={command}] "

    start = time.perf_counter()
    try:
        writers = body(spec)
    except Exception as e:
        run_logger.log_operation(command, (time.perf_counter() - start) * 1000.0, success=False, error=str(e))
        raise
    run_logger.log_operation(command, (time.perf_counter() - start) * 1000.0, details={"preset": spec.preset})

    out_dir = ensure_out_dir(spec)
    for name, write in writers:
        write(out_dir / name)
        logger.info(f"{_log}Wrote {out_dir / name}")
    write_run_meta(out_dir / "run.meta", {**spec.resolved, "command": command, "run_id": run_id})


# ============================================================================
# Group
# ============================================================================


@click.group(name="eit")
@click.option("--verbose", is_flag=True, help="Log at DEBUG level")
@click.option("--logs-dir", "logs_dir", default="logs", show_default=True, help="Run-log directory")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, logs_dir: str) -> None:
    """Transient EIT simulator for a three-level Λ atom."""
    ctx.ensure_object(dict)
    ctx.obj.setdefault("run_id", "run")
    ctx.obj["logs_dir"] = logs_dir
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


# ============================================================================
# Traces
# ============================================================================


def _trace_writers(spec: RunSpec, mode: SwitchMode) -> List[Writer]:
    times = _time_axis(spec)
    schedule = FieldSchedule.for_params(mode, spec.params, switch_time=spec.schedule.switch_time)
    config = ScanConfig(workers=1, rel_tol=spec.rel_tol, show_progress=False)
    grid = scan(spec.params, schedule, [spec.params.delta2], times, spec.engine, config=config)
    im_rho_bc = grid.values[0]
    trans = np.asarray(transmission(im_rho_bc, spec.params))

    click.echo(
        f"{mode.value} Δ₂={spec.params.delta2:g} MHz: peak T = {trans.max():.4f}, "
        f"min T = {trans.min():.4f}, final T = {trans[-1]:.4f}"
    )
    if mode is SwitchMode.TURN_OFF and spec.params.delta2 != 0.0:
        click.echo(f"ringing period 1/|Δ₂| = {1000.0 / abs(spec.params.delta2):.2f} ns")

    table = np.column_stack([times, im_rho_bc, trans])

    def write(path: Path) -> None:
        np.savetxt(path, table, delimiter=",", header="t_us,im_rho_bc,transmission", comments="", fmt="%.17g")

    return [("trace.csv", write)]


@cli.command()
@_with_options(_PARAM_OPTIONS + [_ENGINE_OPTION])
@click.pass_context
def turnon(ctx: click.Context, **overrides: Any) -> None:
    """Im ρ_bc and T after the coupling field is switched on."""
    _execute(ctx, "turnon", overrides, lambda spec: _trace_writers(spec, SwitchMode.TURN_ON))


@cli.command()
@_with_options(_PARAM_OPTIONS + [_ENGINE_OPTION])
@click.pass_context
def turnoff(ctx: click.Context, **overrides: Any) -> None:
    """Im ρ_bc and T after the coupling field is switched off (Analytic uses the closed form)."""
    _execute(ctx, "turnoff", overrides, lambda spec: _trace_writers(spec, SwitchMode.TURN_OFF))


# ============================================================================
# Pumping
# ============================================================================


def _pump_writers(spec: RunSpec) -> List[Writer]:
    params = spec.params.model_copy(update={"omega1": 0.0})
    rho0 = DensityMatrix.populations(*spec.initial_populations)
    schedule = FieldSchedule(mode=SwitchMode.STEADY, omega1_on=0.0)
    traj = evolve(rho0, schedule, params, _time_axis(spec), config=OdeConfig(rel_tol=spec.rel_tol))

    exact = p4_exact(params)
    approx = p4_approx(params)
    t_fast, t_slow = pump_epochs(params)
    plateau_bc, plateau_aa, plateau_bb = pump_intermediate(rho0, params)
    final_aa = long_time_limit(pump_system(params, rho0)["aa"]).real
    report = {
        "p4_exact_mhz": cyclic(exact.real),
        "p4_approx_mhz": cyclic(approx.real),
        "p4_relative_difference": abs(approx - exact) / abs(exact),
        "epoch_fast_us": t_fast,
        "epoch_slow_us": t_slow,
        "plateau_re_rho_bc": plateau_bc.real,
        "plateau_im_rho_bc": plateau_bc.imag,
        "plateau_rho_aa": plateau_aa,
        "plateau_rho_bb": plateau_bb,
        "long_time_rho_aa": final_aa,
    }
    for key, value in report.items():
        click.echo(f"{key} = {value!r}")

    def write_report(path: Path) -> None:
        path.write_text("".join(f"{k} = {v!r}\n" for k, v in report.items()), encoding="utf-8")

    return [("pump.csv", lambda path: write_trajectory_csv(traj, path)), ("pump.txt", write_report)]


@cli.command()
@_with_options(_PARAM_OPTIONS)
@click.option("--rho-aa", "rho_aa", type=float, default=None, help="Initial ρ_aa")
@click.option("--rho-bb", "rho_bb", type=float, default=None, help="Initial ρ_bb")
@click.pass_context
def pump(ctx: click.Context, **overrides: Any) -> None:
    """Optical pumping by the probe alone; compares the slow root with its estimate."""
    _execute(ctx, "pump", overrides, _pump_writers)


# ============================================================================
# Scans and spectra
# ============================================================================


def _scan_writers(spec: RunSpec) -> List[Writer]:
    config = ScanConfig(workers=spec.workers, rel_tol=spec.rel_tol)
    grid = scan(spec.params, spec.schedule, _delta2_axis(spec), _time_axis(spec), spec.engine, config=config)
    major, minor = dressed_ridges(spec.params)
    click.echo(
        f"{grid.mode.value} grid {grid.values.shape[0]}x{grid.values.shape[1]}: "
        f"dressed ridges at Δ₂ = {major:.2f} (major), {minor:.2f} (minor) MHz; "
        f"max Im ρ_bc = {grid.values.max():.4e}"
    )
    return [
        ("grid.csv", lambda path: write_scan_csv(grid, path)),
        ("grid.ppm", lambda path: write_pixmap(grid, path)),
    ]


@cli.command(name="scan")
@_with_options(_PARAM_OPTIONS + _AXIS_OPTIONS + [_ENGINE_OPTION])
@click.option("--mode", type=click.Choice(["TurnOn", "TurnOff", "BothOn"]), default=None, help="Switching scenario")
@click.option("--workers", type=int, default=None, help="Processes for scan rows")
@click.pass_context
def scan_command(ctx: click.Context, **overrides: Any) -> None:
    """(t, Δ₂) grid of Im ρ_bc as CSV and P6 heat map."""
    _execute(ctx, "scan", overrides, _scan_writers)


def _spectrum_writers(spec: RunSpec) -> List[Writer]:
    table = spectrum(spec.params, _delta2_axis(spec))
    minima = absorption_minima(table)
    major, minor = dressed_ridges(spec.params)
    click.echo(f"transmission minima at Δ₂ = {', '.join(f'{m:.2f}' for m in minima)} MHz")
    click.echo(f"dressed states at {major:.2f} (major), {minor:.2f} (minor) MHz")

    def write(path: Path) -> None:
        np.savetxt(path, table, delimiter=",", header="delta2_mhz,transmission", comments="", fmt="%.17g")

    return [("spectrum.csv", write)]


@cli.command(name="spectrum")
@_with_options(_PARAM_OPTIONS + _AXIS_OPTIONS)
@click.pass_context
def spectrum_command(ctx: click.Context, **overrides: Any) -> None:
    """Steady-state transmission spectrum with uncoupled background."""
    _execute(ctx, "spectrum", overrides, _spectrum_writers)


# ============================================================================
# Fitting
# ============================================================================


def _fit_writers(spec: RunSpec, trace_path: str, free: str, guess_offset: float, envelope: bool) -> List[Writer]:
    writers: List[Writer] = []
    if trace_path:
        trace = read_trace_csv(trace_path)
    else:
        trace = synthetic_trace(spec.params, Nuisance(), _time_axis(spec), noise=spec.noise, seed=spec.seed)
        writers.append(("synthetic_trace.csv", lambda path: write_trace_csv(trace, path)))
        click.echo(f"synthetic trace: noise={spec.noise:g}, seed={spec.seed}")

    free_names = tuple(name.strip() for name in free.split(",") if name.strip())
    initial = spec.params.model_copy(update={"delta2": spec.params.delta2 + guess_offset})
    result = fit_turnoff(trace, initial, Nuisance(), free=free_names)
    for name in result.free:
        click.echo(f"{name} = {result.value(name):.6g} +/- {result.stderr[name]:.2g}")
    writers.append(("fit.txt", lambda path: write_fit_report(result, path)))

    if envelope:
        rate = envelope_decay(trace)
        click.echo(f"envelope decay = {rate:.4f} MHz")
        writers.append(("envelope.txt", lambda path: path.write_text(f"envelope_decay_mhz = {rate!r}\n")))
    return writers


@cli.command(name="fit")
@_with_options(_PARAM_OPTIONS)
@click.option("--trace", "trace_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Trace CSV (t_us,transmission); omitted means a synthetic trace from the parameters")
@click.option("--free", default=",".join(DEFAULT_FREE), show_default=True, help="Comma-separated free parameters")
@click.option("--guess-offset", type=float, default=3.0, show_default=True, help="Initial Δ₂ offset from the parameters (MHz)")
@click.option("--envelope", is_flag=True, help="Also fit the exponential envelope of the ringing")
@click.option("--noise", type=float, default=None, help="Synthetic noise standard deviation (T units)")
@click.option("--seed", type=int, default=None, help="Synthetic noise seed")
@click.pass_context
def fit_command(ctx: click.Context, trace_path: str, free: str, guess_offset: float, envelope: bool, **overrides: Any) -> None:
    """Fit a turn-off trace with the closed-form model."""
    _execute(ctx, "fit", overrides, lambda spec: _fit_writers(spec, trace_path, free, guess_offset, envelope))


# ============================================================================
# Vector model
# ============================================================================


def _vector3_writers(spec: RunSpec) -> List[Writer]:
    times = _time_axis(spec)
    omega1, omega2 = spec.params.omega1, spec.params.omega2
    omega_vec = RabiVector(omega1, omega2)
    from_b = im_rbc_of(trajectory(StateVector3(0.0, 1.0, 0.0), omega_vec, times))
    from_a = im_rbc_of(trajectory(StateVector3(1.0, 0.0, 0.0), omega_vec, times))
    average = averaged_fast_oscillation(omega1, omega2, times)
    first_order = im_rbc_first_order("average", omega1, omega2, times)
    click.echo(
        f"averaged amplitude {np.max(np.abs(average)):.4e} vs Ω₂/(4Ω₁) = {omega2 / (4.0 * omega1):.4e}"
    )
    table = np.column_stack([times, from_b, from_a, average, first_order])

    def write(path: Path) -> None:
        header = "t_us,im_rho_bc_from_b,im_rho_bc_from_a,im_rho_bc_average,im_rho_bc_average_first_order"
        np.savetxt(path, table, delimiter=",", header=header, comments="", fmt="%.17g")

    return [("vector3.csv", write)]


@cli.command(name="vector3")
@_with_options(_PARAM_OPTIONS)
@click.pass_context
def vector3_command(ctx: click.Context, **overrides: Any) -> None:
    """Decay-free vector-model traces from |a⟩, |b⟩ and their average."""
    _execute(ctx, "vector3", overrides, _vector3_writers)


# ============================================================================
# Cross-engine comparison
# ============================================================================


def _compare_writers(spec: RunSpec, run_id: str, logs_dir: str, grid_points: int) -> List[Writer]:
    samples = draw_samples(spec.samples, spec.seed, gamma=spec.params.gamma)
    app = create_compare_graph()
    final = app.invoke(
        initial_state(run_id, samples, spec.seed, grid_points=grid_points, logs_dir=logs_dir)
    )
    report = CompareReport(**final["report"])
    click.echo(report.to_text(), nl=False)
    if not report.all_passed:
        # Keep the table on disk for failed runs too
        report_path = ensure_out_dir(spec) / "compare.txt"
        report_path.write_text(report.to_text(), encoding="utf-8")
        raise ComparisonFailed(f"compare run has failures; table written to {report_path}")
    return [("compare.txt", lambda path: path.write_text(report.to_text(), encoding="utf-8"))]


@cli.command(name="compare")
@_with_options(_PARAM_OPTIONS)
@click.option("--samples", type=int, default=None, help="Random parameter sets")
@click.option("--seed", type=int, default=None, help="Sampler seed")
@click.option("--grid-points", type=int, default=200, show_default=True, help="Time samples per trace")
@click.pass_context
def compare_command(ctx: click.Context, grid_points: int, **overrides: Any) -> None:
    """ODE vs Laplace (turn-on) and closed form vs ODE (turn-off) residual table."""
    _execute(
        ctx,
        "compare",
        overrides,
        lambda spec: _compare_writers(spec, ctx.obj["run_id"], ctx.obj["logs_dir"], grid_points),
    )
