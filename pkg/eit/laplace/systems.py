"""
Laplace-domain systems of the Λ atom.

`turnon_system` solves the four coupled optical-coherence equations by
evaluation–interpolation: the 4×4 system is solved on a circle in the
p-plane enclosing every pole, each solution is multiplied by the
characteristic polynomial Q(p) = det(pI − L), and the numerator
coefficients are recovered by FFT. All transforms share the denominator Q.
"""

import logging
from typing import Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np
from tenacity import Retrying, before_sleep_log, retry_if_exception_type, stop_after_attempt

from eit.laplace.config import DEFAULT_CONFIG, LaplaceConfig
from eit.laplace.polynomial import ComplexPolynomial, poly_roots
from eit.laplace.rational import RationalFunction
from eit.model.density import DensityMatrix
from eit.model.params import AngularParams, LambdaParams
from eit.ode.equations import liouvillian
from eit.shared.errors import SimulationError, UsageError


logger = logging.getLogger(__name__)

COHERENCES = ("ac", "ca", "bc", "cb")
REMAINING = ("ab", "ba", "aa", "bb", "cc")


class Unsupported(UsageError):
    """Raised when a closed form is requested outside its stated preconditions."""

    pass


class SingularSystem(SimulationError):
    """Raised when a sample point makes the coherence system singular."""

    pass


class InterpolationMismatch(SimulationError):
    """Raised when interpolated numerators fail the aliasing or residual check."""

    pass


# ============================================================================
# Characteristic polynomial
# ============================================================================


def _liouvillian(params: LambdaParams) -> np.ndarray:
    return liouvillian(params, params.omega1, params.omega2)


def characteristic_polynomial(params: LambdaParams) -> ComplexPolynomial:
    """
    Q(p) = det(pI − L) for constant fields, degree 9.

    Trace conservation puts one root exactly at p = 0; the numerically
    smallest eigenvalue is snapped there.
    """
    eigenvalues = np.linalg.eigvals(_liouvillian(params))
    eigenvalues[np.argmin(np.abs(eigenvalues))] = 0.0
    return ComplexPolynomial.from_roots(eigenvalues)


def sampling_radius(params: LambdaParams, config: Optional[LaplaceConfig] = None) -> float:
    """Radius of the sampling circle: a multiple of the Gershgorin bound of L."""
    config = config or DEFAULT_CONFIG
    bound = float(np.max(np.sum(np.abs(_liouvillian(params)), axis=1)))
    return config.radius_factor * max(bound, 1.0)


# ============================================================================
# Coherence system
# ============================================================================


def coherence_system(p: complex, ang: AngularParams, rho0: DensityMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """
    4×4 system M(p)·[r_ac, r_ca, r_bc, r_cb] = v(p).

    The r_ac row follows from eliminating r_ab, r_aa, r_bb and r_cc; the other
    three rows follow by conjugation (holding p real) and by interchanging
    the labels a ↔ b together with the field indices 1 ↔ 2.
    """
    h1, h2 = ang.h1, ang.h2
    g = 0.5 * ang.g_total
    e_ab = p - 1j * ang.d21 + ang.g_ba  # denominator of r_ab
    e_ba = p + 1j * ang.d21 + ang.g_ba  # denominator of r_ba
    s_a = (ang.g_ca - p) / (p + ang.g_total)
    s_b = (ang.g_cb - p) / (p + ang.g_total)
    k11 = h1 * h1 / p
    k22 = h2 * h2 / p
    k12 = h1 * h2 / p

    aa0, bb0, cc0 = rho0.aa, rho0.bb, rho0.cc
    ab0, ba0 = complex(rho0.ab), rho0.ba

    M = np.empty((4, 4), dtype=complex)
    v = np.empty(4, dtype=complex)

    # r_ac
    M[0] = [
        p + 1j * ang.d1 + g + k11 * (1 - s_a) + h2 * h2 / e_ab,
        k11 * (s_a - 1),
        -k12 * s_a,
        k12 * s_a - h1 * h2 / e_ab,
    ]
    v[0] = complex(rho0.ac) - 1j * (h1 / p) * (aa0 + s_a * cc0) - 1j * h2 * ab0 / e_ab

    # r_ca
    M[1] = [
        k11 * (s_a - 1),
        p - 1j * ang.d1 + g + k11 * (1 - s_a) + h2 * h2 / e_ba,
        k12 * s_a - h1 * h2 / e_ba,
        -k12 * s_a,
    ]
    v[1] = rho0.ca + 1j * (h1 / p) * (aa0 + s_a * cc0) + 1j * h2 * ba0 / e_ba

    # r_bc
    M[2] = [
        -k12 * s_b,
        k12 * s_b - h1 * h2 / e_ba,
        p + 1j * ang.d2 + g + k22 * (1 - s_b) + h1 * h1 / e_ba,
        k22 * (s_b - 1),
    ]
    v[2] = complex(rho0.bc) - 1j * (h2 / p) * (bb0 + s_b * cc0) - 1j * h1 * ba0 / e_ba

    # r_cb
    M[3] = [
        k12 * s_b - h1 * h2 / e_ab,
        -k12 * s_b,
        k22 * (s_b - 1),
        p - 1j * ang.d2 + g + k22 * (1 - s_b) + h1 * h1 / e_ab,
    ]
    v[3] = rho0.cb + 1j * (h2 / p) * (bb0 + s_b * cc0) + 1j * h1 * ab0 / e_ab

    return M, v


def _solve_coherences(p: complex, ang: AngularParams, rho0: DensityMatrix) -> np.ndarray:
    M, v = coherence_system(p, ang, rho0)
    if not (np.all(np.isfinite(M)) and np.all(np.isfinite(v))):
        raise SingularSystem(f"Coherence system not finite at p = {p}")
    try:
        x = np.linalg.solve(M, v)
    except np.linalg.LinAlgError as e:
        raise SingularSystem(f"Coherence system singular at p = {p}") from e
    if not np.all(np.isfinite(x)):
        raise SingularSystem(f"Coherence solution not finite at p = {p}")
    return x


def _remaining_at(
    p: complex, x: Mapping[str, complex], ang: AngularParams, rho0: DensityMatrix
) -> np.ndarray:
    """Transforms of ρ_ab, ρ_ba, ρ_aa, ρ_bb, ρ_cc from the four coherences at one p."""
    h1, h2 = ang.h1, ang.h2
    r_ac, r_ca, r_bc, r_cb = x["ac"], x["ca"], x["bc"], x["cb"]
    r_ab = (complex(rho0.ab) + 1j * h1 * r_cb - 1j * h2 * r_ac) / (p - 1j * ang.d21 + ang.g_ba)
    r_ba = (rho0.ba + 1j * h2 * r_ca - 1j * h1 * r_bc) / (p + 1j * ang.d21 + ang.g_ba)
    r_cc = (rho0.cc + 1j * h1 * (r_ac - r_ca) + 1j * h2 * (r_bc - r_cb)) / (p + ang.g_total)
    r_aa = (rho0.aa + ang.g_ca * r_cc + 1j * h1 * (r_ca - r_ac)) / p
    r_bb = (rho0.bb + ang.g_cb * r_cc + 1j * h2 * (r_cb - r_bc)) / p
    return np.array([r_ab, r_ba, r_aa, r_bb, r_cc])


# ============================================================================
# Evaluation–interpolation
# ============================================================================


def _interpolate_numerators(
    evaluate: Callable[[complex], np.ndarray],
    Q: ComplexPolynomial,
    radius: float,
    offset: float,
    config: LaplaceConfig,
) -> List[ComplexPolynomial]:
    """
    Numerators N with N(p) = Q(p)·r(p), from samples p_k = R·e^{2πi(k+offset)/K}.
    """
    K = config.sample_count
    angles = 2.0 * np.pi * (np.arange(K) + offset) / K
    points = radius * np.exp(1j * angles)
    values = np.array([Q(pk) * evaluate(pk) for pk in points])  # (K, n_out)

    j = np.arange(K)
    scaled = np.fft.fft(values, axis=0) / K * np.exp(-1j * angles[0] * j)[:, None]
    numerators = []
    for column in scaled.T:
        size = float(np.max(np.abs(column)))
        alias = float(np.max(np.abs(column[config.degree_bound + 1 :]))) if size > 0 else 0.0
        if alias > config.alias_tol * size:
            raise InterpolationMismatch(
                f"Coefficients above degree {config.degree_bound} reach {alias / size:.3e} "
                f"of the largest; numerator degree bound violated"
            )
        coefficients = column[: config.degree_bound + 1] / radius ** j[: config.degree_bound + 1]
        numerators.append(ComplexPolynomial(coefficients, scale=radius))
    return numerators


def _with_resampling(build: Callable[[float, float], Dict[str, RationalFunction]], radius: float, config: LaplaceConfig):
    """Run `build(radius, offset)`, moving the sampling circle after a singular sample."""
    for attempt in Retrying(
        stop=stop_after_attempt(config.resample_attempts),
        retry=retry_if_exception_type(SingularSystem),
        before_sleep=before_sleep_log(logger, logging.WARNING),
        reraise=True,
    ):
        with attempt:
            n = attempt.retry_state.attempt_number
            return build(radius * (1.0 + 0.1 * (n - 1)), 0.5 + 0.37 * (n - 1))


def _probe_points(radius: float, config: LaplaceConfig) -> np.ndarray:
    rng = np.random.default_rng(config.seed)
    magnitude = radius * rng.uniform(0.8, 1.5, size=config.probe_count)
    return magnitude * np.exp(2j * np.pi * rng.uniform(size=config.probe_count))


def system_residual(
    coherences: Mapping[str, RationalFunction],
    params: LambdaParams,
    rho0: DensityMatrix,
    points: np.ndarray,
) -> float:
    """Largest relative residual ‖M·x − v‖/(‖M‖·‖x‖ + ‖v‖) of the coherence system."""
    ang = params.angular()
    worst = 0.0
    for p in points:
        M, v = coherence_system(p, ang, rho0)
        x = np.array([coherences[label](p) for label in COHERENCES])
        scale = np.linalg.norm(M) * np.linalg.norm(x) + np.linalg.norm(v)
        worst = max(worst, float(np.linalg.norm(M @ x - v) / scale))
    return worst


def turnon_system(
    params: LambdaParams, rho0: DensityMatrix, config: Optional[LaplaceConfig] = None
) -> Dict[str, RationalFunction]:
    """
    Transforms r_ac, r_ca, r_bc, r_cb for constant fields from t = 0.

    Args:
        params: Field and atom parameters (Ω₁ = params.omega1 after the switch)
        rho0: State at t = 0

    Returns:
        Map from "ac", "ca", "bc", "cb" to RationalFunction over the shared Q(p)

    Raises:
        SingularSystem: every sampling attempt hit a singular point
        InterpolationMismatch: aliasing or residual check failed
    """
    config = config or DEFAULT_CONFIG
    _log = "[module=laplace] [op=turnon_system] "
    ang = params.angular()
    Q = characteristic_polynomial(params)
    radius = sampling_radius(params, config)

    def build(r: float, offset: float) -> Dict[str, RationalFunction]:
        numerators = _interpolate_numerators(
            lambda p: _solve_coherences(p, ang, rho0), Q, r, offset, config
        )
        return {label: RationalFunction(n, Q) for label, n in zip(COHERENCES, numerators)}

    coherences = _with_resampling(build, radius, config)

    residual = system_residual(coherences, params, rho0, _probe_points(radius, config))
    if residual > config.residual_tol:
        logger.error(f"{_log}Residual {residual:.3e} exceeds {config.residual_tol:g}")
        raise InterpolationMismatch(f"Coherence system residual {residual:.3e} at probe points")

    logger.debug(f"{_log}Built coherence transforms | radius={radius:.3g}, residual={residual:.2e}")
    return coherences


def reconstruct_remaining(
    coherences: Mapping[str, RationalFunction],
    rho0: DensityMatrix,
    params: LambdaParams,
    config: Optional[LaplaceConfig] = None,
) -> Dict[str, RationalFunction]:
    """
    Transforms r_ab, r_ba, r_aa, r_bb, r_cc from the four coherence transforms.

    The elimination formulas are evaluated pointwise on the sampling circle
    and interpolated onto the shared denominator Q(p).
    """
    config = config or DEFAULT_CONFIG
    ang = params.angular()
    Q = coherences["bc"].denominator
    radius = sampling_radius(params, config)

    def evaluate(p: complex) -> np.ndarray:
        x = {label: coherences[label](p) for label in COHERENCES}
        return _remaining_at(p, x, ang, rho0)

    def build(r: float, offset: float) -> Dict[str, RationalFunction]:
        numerators = _interpolate_numerators(evaluate, Q, r, offset, config)
        return {label: RationalFunction(n, Q) for label, n in zip(REMAINING, numerators)}

    return _with_resampling(build, radius, config)


# ============================================================================
# Probe pumping with the coupling field off
# ============================================================================


def _check_pump_preconditions(params: LambdaParams, rho0: Optional[DensityMatrix] = None) -> None:
    if params.omega1 != 0.0:
        raise Unsupported(f"pump closed forms need omega1 = 0, got {params.omega1}")
    if not params.equal_decay:
        raise Unsupported("pump closed forms need gamma_ca = gamma_cb")
    if rho0 is not None and not rho0.is_diagonal:
        raise Unsupported("pump closed forms need a diagonal initial state")


def pump_denominator(params: LambdaParams) -> ComplexPolynomial:
    """D(p) = p(p+2Γ)[Δ₂² + (p+Γ)²] + 2(p+Γ)(2p+Γ)(Ω₂/2)² in rad/μs."""
    ang = params.angular()
    gam, d2, h2 = ang.g_ca, ang.d2, ang.h2
    p = ComplexPolynomial.p(scale=2.0 * gam)
    lorentz = d2 * d2 + (p + gam) * (p + gam)
    return p * (p + 2.0 * gam) * lorentz + 2.0 * h2 * h2 * (p + gam) * (2.0 * p + gam)


def pump_system(params: LambdaParams, rho0: DensityMatrix) -> Dict[str, RationalFunction]:
    """
    Closed-form transforms for optical pumping by the probe alone.

    Raises:
        Unsupported: Ω₁ ≠ 0, Γ_ca ≠ Γ_cb, or rho0 has coherences
    """
    _check_pump_preconditions(params, rho0)
    ang = params.angular()
    gam, d2, h2 = ang.g_ca, ang.d2, ang.h2
    aa0, bb0 = rho0.aa, rho0.bb

    p = ComplexPolynomial.p(scale=2.0 * gam)
    D = pump_denominator(params)
    lorentz = d2 * d2 + (p + gam) * (p + gam)

    bc_num = -h2 * (gam * (1 - aa0 + bb0) + (2 * bb0 + aa0 - 1) * p) * (1j * (p + gam) + d2)
    aa_num = p * (gam + aa0 * (gam + p) - bb0 * gam) * lorentz + 2.0 * h2 * h2 * (p + gam) * (
        gam + 2.0 * aa0 * p
    )
    bb_num = (gam * (1 - aa0 + bb0) + bb0 * p) * lorentz + 2.0 * h2 * h2 * (p + gam) * (aa0 - 1)

    r_bc = RationalFunction(bc_num, D)
    return {
        "bc": r_bc,
        "cb": r_bc.conjugate(),
        "aa": RationalFunction(aa_num, p * D),
        "bb": RationalFunction(bb_num, D),
    }


def p4_approx(params: LambdaParams) -> complex:
    """
    Approximate slow pumping root −(Ω₂/2)²Γ/(Δ₂² + Γ²), in rad/μs.

    Intended for Ω₂ < Γ; outside that range a warning is logged.
    """
    if params.omega2 >= params.gamma:
        logger.warning(
            f"[module=laplace] [op=p4_approx] Approximation assumes omega2 < gamma "
            f"(omega2={params.omega2}, gamma={params.gamma})"
        )
    ang = params.angular()
    return complex(-ang.h2 ** 2 * ang.gamma / (ang.d2 ** 2 + ang.gamma ** 2))


def p4_exact(params: LambdaParams, config: Optional[LaplaceConfig] = None) -> complex:
    """
    Slow pumping root of the pump denominator: the nonzero root with the
    largest real part, in rad/μs.
    """
    config = config or DEFAULT_CONFIG
    roots = poly_roots(pump_denominator(params), config)
    tol = config.origin_tol * max(1.0, float(np.max(np.abs(roots))))
    nonzero = roots[np.abs(roots) > tol]
    return complex(nonzero[np.argmax(nonzero.real)])


def pump_epochs(params: LambdaParams) -> Tuple[float, float]:
    """
    Boundaries (μs) of the intermediate pumping epoch: 1/(2Γ) and 1/|p₄|.
    """
    ang = params.angular()
    slow = abs(p4_approx(params))
    return 1.0 / (2.0 * ang.gamma), (np.inf if slow == 0.0 else 1.0 / slow)


# ============================================================================
# Turn-off to first order in the probe
# ============================================================================


def turnoff_first_order(params: LambdaParams, rho0: DensityMatrix) -> RationalFunction:
    """
    r_bc(p) after the coupling field is switched off, first order in Ω₂:

        [ρ_bc⁰ + i(Ω₂/2)((p−Γ)(1−ρ_aa⁰) − ρ_bb⁰(2p+Γ))/(p(p+2Γ))] / (p + Γ + iΔ₂)

    Raises:
        Unsupported: Γ_ca ≠ Γ_cb
    """
    if not params.equal_decay:
        raise Unsupported("turn-off transform needs gamma_ca = gamma_cb")
    ang = params.angular()
    gam, h2 = ang.g_ca, ang.h2
    p = ComplexPolynomial.p(scale=2.0 * gam)
    aa0, bb0 = rho0.aa, rho0.bb
    numerator = complex(rho0.bc) * p * (p + 2.0 * gam) + 1j * h2 * (
        (p - gam) * (1.0 - aa0) - bb0 * (2.0 * p + gam)
    )
    denominator = p * (p + 2.0 * gam) * (p + gam + 1j * ang.d2)
    return RationalFunction(numerator, denominator)
