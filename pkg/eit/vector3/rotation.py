"""
Decay-free three-state dynamics as rotation of a real unit vector.

The state |ψ⟩ = v_a|a⟩ + v_b|b⟩ − i v_c|c⟩ is the vector (v_a, v_b, v_c);
resonant fields rotate it about the Rabi vector (−Ω₂/2, Ω₁/2, 0) with
dv/dt = Ω × v.
"""

import logging
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from eit.model.density import DensityMatrix, StateInvariantError
from eit.model.units import angular


logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

NORM_TOL = 1e-12


@dataclass(frozen=True)
class StateVector3:
    """Real unit vector (v_a, v_b, v_c)."""

    v_a: float
    v_b: float
    v_c: float

    def __post_init__(self) -> None:
        norm = float(np.sqrt(self.v_a ** 2 + self.v_b ** 2 + self.v_c ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise StateInvariantError(f"State vector must have unit norm, got {norm!r}")

    @classmethod
    def from_array(cls, values) -> "StateVector3":
        v_a, v_b, v_c = (float(x) for x in values)
        return cls(v_a, v_b, v_c)

    def as_array(self) -> np.ndarray:
        return np.array([self.v_a, self.v_b, self.v_c])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


@dataclass(frozen=True)
class RabiVector:
    """
    Rotation axis for resonant probe and coupling fields.

    Attributes:
        omega1: Coupling Rabi frequency (MHz)
        omega2: Probe Rabi frequency (MHz)
    """

    omega1: float
    omega2: float

    @property
    def components(self) -> np.ndarray:
        """(−Ω₂/2, Ω₁/2, 0) in rad/μs."""
        return np.array([-angular(self.omega2) / 2.0, angular(self.omega1) / 2.0, 0.0])

    @property
    def magnitude(self) -> float:
        """Precession rate Ω = √(Ω₁² + Ω₂²)/2 in rad/μs."""
        return float(np.linalg.norm(self.components))

    @property
    def theta(self) -> float:
        """Angle between the Rabi vector and the b axis."""
        return float(np.arctan2(self.omega2, self.omega1))


def _rotate(v0: np.ndarray, axis: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Rodrigues rotation of v0 about a unit axis; one row per angle."""
    cos = np.cos(angles)[:, None]
    sin = np.sin(angles)[:, None]
    return (
        v0[None, :] * cos
        + np.cross(axis, v0)[None, :] * sin
        + axis[None, :] * np.dot(axis, v0) * (1.0 - cos)
    )


def trajectory(v0: StateVector3, omega_vec: RabiVector, t: ArrayLike) -> np.ndarray:
    """Rows (v_a, v_b, v_c) of v0 precessed to each time in t (μs)."""
    times = np.atleast_1d(np.asarray(t, dtype=float))
    rate = omega_vec.magnitude
    if rate == 0.0:
        return np.tile(v0.as_array(), (times.size, 1))
    return _rotate(v0.as_array(), omega_vec.components / rate, rate * times)


def precess(v0: StateVector3, omega_vec: RabiVector, t: float) -> StateVector3:
    """Exact rotation of v0 about omega_vec by the angle Ω·t."""
    return StateVector3.from_array(trajectory(v0, omega_vec, t)[0])


def case_b(theta: float, rate: float, t: ArrayLike) -> np.ndarray:
    """
    Closed-form precession from v(0) = (0, 1, 0).

    Args:
        theta: atan(Ω₂/Ω₁)
        rate: Precession rate Ω (rad/μs)
        t: Time(s) (μs)

    Returns:
        Array of shape (3,) or (len(t), 3)
    """
    phase = rate * np.asarray(t, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    result = np.stack(
        [
            c * s * (np.cos(phase) - 1.0),
            c ** 2 + s ** 2 * np.cos(phase),
            -s * np.sin(phase),
        ],
        axis=-1,
    )
    return result


def case_a(theta: float, rate: float, t: ArrayLike) -> np.ndarray:
    """Closed-form precession from v(0) = (1, 0, 0); same conventions as `case_b`."""
    phase = rate * np.asarray(t, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    result = np.stack(
        [
            1.0 + (np.cos(phase) - 1.0) * c ** 2,
            c * s * (np.cos(phase) - 1.0),
            -c * np.sin(phase),
        ],
        axis=-1,
    )
    return result


def im_rbc_of(v: Union[StateVector3, np.ndarray]) -> ArrayLike:
    """Im ρ_bc = v_b·v_c; negative means absorption."""
    if isinstance(v, StateVector3):
        return v.v_b * v.v_c
    v = np.asarray(v, dtype=float)
    return v[..., 1] * v[..., 2]


def averaged_fast_oscillation(omega1: float, omega2: float, t: ArrayLike) -> ArrayLike:
    """
    Mean Im ρ_bc of two equal ensembles starting in |a⟩ and |b⟩.

    Uses the exact rotated vectors, so the first-order estimate
    −(Ω₂/Ω₁)·¼·sin(Ω₁t) can be checked against it.
    """
    omega_vec = RabiVector(omega1, omega2)
    from_a = trajectory(StateVector3(1.0, 0.0, 0.0), omega_vec, t)
    from_b = trajectory(StateVector3(0.0, 1.0, 0.0), omega_vec, t)
    mean = 0.5 * (im_rbc_of(from_a) + im_rbc_of(from_b))
    return mean if np.ndim(t) else float(mean[0])


def im_rbc_first_order(
    case: Literal["a", "b", "average"], omega1: float, omega2: float, t: ArrayLike
) -> ArrayLike:
    """First order in Ω₂/Ω₁ Im ρ_bc for the |a⟩ start, the |b⟩ start, or their mean."""
    omega_vec = RabiVector(omega1, omega2)
    phase = omega_vec.magnitude * np.asarray(t, dtype=float)
    ratio = omega2 / omega1
    if case == "b":
        return -ratio * np.sin(phase)
    if case == "a":
        return -ratio * (0.5 * np.sin(2.0 * phase) - np.sin(phase))
    if case == "average":
        return -ratio * 0.25 * np.sin(2.0 * phase)
    raise ValueError(f"case must be 'a', 'b' or 'average', got {case!r}")


def to_density_matrix(v: StateVector3) -> DensityMatrix:
    """Pure-state density matrix of |ψ⟩ = v_a|a⟩ + v_b|b⟩ − i v_c|c⟩."""
    return DensityMatrix.pure(v.v_a, v.v_b, v.v_c)
