"""
Rotating-frame equations of motion of the Λ atom.

All rates are angular (rad/μs) internally; public functions take a
LambdaParams record and cyclic Rabi frequencies in MHz.
"""

from typing import Tuple

import numpy as np

from eit.model.density import DensityMatrix
from eit.model.params import LambdaParams
from eit.model.units import angular

# Index order of vec(ρ) used by the Liouvillian
_INDEX = {"a": 0, "b": 1, "c": 2}


def _derivative(m: np.ndarray, params: LambdaParams, omega1: float, omega2: float) -> np.ndarray:
    """
    dρ/dt for a general 3×3 array, treating all nine entries as independent.

    Linear in `m`; the Liouvillian is read off from it column by column.
    """
    ang = params.angular()
    h1 = angular(omega1) / 2.0
    h2 = angular(omega2) / 2.0
    g = 0.5 * ang.g_total

    aa, ab, ac = m[0, 0], m[0, 1], m[0, 2]
    ba, bb, bc = m[1, 0], m[1, 1], m[1, 2]
    ca, cb, cc = m[2, 0], m[2, 1], m[2, 2]

    d = np.empty((3, 3), dtype=complex)
    d[0, 0] = ang.g_ca * cc + 1j * h1 * (ca - ac)
    d[1, 1] = ang.g_cb * cc + 1j * h2 * (cb - bc)
    d[2, 2] = -ang.g_total * cc + 1j * (h1 * (ac - ca) + h2 * (bc - cb))
    d[0, 1] = (1j * ang.d21 - ang.g_ba) * ab + 1j * (h1 * cb - h2 * ac)
    d[0, 2] = (-1j * ang.d1 - g) * ac + 1j * ((cc - aa) * h1 - h2 * ab)
    d[1, 2] = (-1j * ang.d2 - g) * bc + 1j * ((cc - bb) * h2 - h1 * ba)
    d[1, 0] = (-1j * ang.d21 - ang.g_ba) * ba - 1j * (h1 * bc - h2 * ca)
    d[2, 0] = (1j * ang.d1 - g) * ca - 1j * ((cc - aa) * h1 - h2 * ba)
    d[2, 1] = (1j * ang.d2 - g) * cb - 1j * ((cc - bb) * h2 - h1 * ab)
    return d


def rhs(
    rho: DensityMatrix, params: LambdaParams, omega1_now: float, omega2_now: float = None
) -> np.ndarray:
    """
    Time derivative of ρ (3×3, Hermitian, zero trace).

    Args:
        rho: Current state
        params: Atom and probe parameters
        omega1_now: Coupling Rabi frequency in effect (MHz)
        omega2_now: Probe Rabi frequency in effect (MHz); defaults to params.omega2

    Returns:
        Derivative array in 1/μs
    """
    omega2 = params.omega2 if omega2_now is None else omega2_now
    return _derivative(rho.matrix(), params, omega1_now, omega2)


def liouvillian(params: LambdaParams, omega1: float, omega2: float) -> np.ndarray:
    """
    9×9 matrix L with d vec(ρ)/dt = L vec(ρ), vec in row-major (aa, ab, ac, ba, ..., cc) order.
    """
    L = np.empty((9, 9), dtype=complex)
    for k in range(9):
        basis = np.zeros(9, dtype=complex)
        basis[k] = 1.0
        L[:, k] = _derivative(basis.reshape(3, 3), params, omega1, omega2).reshape(9)
    return L


def rhs_matrix(params: LambdaParams, omega1: float, omega2: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Affine form dy/dt = A·y + b over the eight real degrees of freedom.

    ρ_cc is eliminated through the trace, so `b` collects its source terms.
    """
    def _f(y: np.ndarray) -> np.ndarray:
        m = np.array(
            [
                [y[0], y[2] + 1j * y[3], y[4] + 1j * y[5]],
                [y[2] - 1j * y[3], y[1], y[6] + 1j * y[7]],
                [y[4] - 1j * y[5], y[6] - 1j * y[7], 1.0 - y[0] - y[1]],
            ],
            dtype=complex,
        )
        d = _derivative(m, params, omega1, omega2)
        return np.array(
            [
                d[0, 0].real,
                d[1, 1].real,
                d[0, 1].real,
                d[0, 1].imag,
                d[0, 2].real,
                d[0, 2].imag,
                d[1, 2].real,
                d[1, 2].imag,
            ]
        )

    b = _f(np.zeros(8))
    A = np.column_stack([_f(e) - b for e in np.eye(8)])
    return A, b
