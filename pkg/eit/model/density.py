"""
Density matrix of the three-level Λ atom.

Only the diagonal and the upper-triangle coherences are stored; the
remaining entries are their complex conjugates, so Hermiticity holds
by construction.
"""

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from eit.shared.errors import UsageError

TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-9

LEVELS = ("a", "b", "c")


class StateInvariantError(UsageError):
    """Raised when a density matrix violates unit trace or diagonal positivity."""

    pass


@dataclass(frozen=True)
class DensityMatrix:
    """
    Hermitian unit-trace 3×3 state.

    Attributes:
        aa, bb, cc: Real populations
        ab, ac, bc: Upper-triangle coherences ρ_ab, ρ_ac, ρ_bc
    """

    aa: float
    bb: float
    cc: float
    ab: complex = 0j
    ac: complex = 0j
    bc: complex = 0j

    def __post_init__(self) -> None:
        trace = self.aa + self.bb + self.cc
        if abs(trace - 1.0) > TRACE_TOL:
            raise StateInvariantError(f"Trace must be 1 within {TRACE_TOL}, got {trace!r}")
        for label in ("aa", "bb", "cc"):
            value = getattr(self, label)
            if value < -POSITIVITY_TOL:
                raise StateInvariantError(f"Population rho_{label} = {value!r} is negative")

    # ------------------------------------------------------------------
    # Conjugate entries
    # ------------------------------------------------------------------
    @property
    def ba(self) -> complex:
        return complex(self.ab).conjugate()

    @property
    def ca(self) -> complex:
        return complex(self.ac).conjugate()

    @property
    def cb(self) -> complex:
        return complex(self.bc).conjugate()

    def entry(self, label: str) -> complex:
        """Return ρ_αβ by two-letter label, e.g. "bc" or "cb"."""
        if label not in _ENTRY_LABELS:
            raise KeyError(f"Unknown density-matrix entry '{label}'")
        return complex(getattr(self, label))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def populations(cls, rho_aa: float, rho_bb: float) -> "DensityMatrix":
        """Diagonal state with ρ_cc = 1 − ρ_aa − ρ_bb."""
        return cls(aa=rho_aa, bb=rho_bb, cc=1.0 - rho_aa - rho_bb)

    @classmethod
    def pure(cls, v_a: float, v_b: float, v_c: float) -> "DensityMatrix":
        """
        Pure state |ψ⟩ = v_a|a⟩ + v_b|b⟩ − i v_c|c⟩ for a real unit vector v.

        With this mapping Im ρ_bc = v_b·v_c.
        """
        psi = np.array([v_a, v_b, -1j * v_c], dtype=complex)
        norm = float(np.vdot(psi, psi).real)
        return cls.from_matrix(np.outer(psi, psi.conj()) / norm)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "DensityMatrix":
        """Build from a 3×3 array, reading the diagonal and upper triangle."""
        m = np.asarray(m, dtype=complex)
        return cls(
            aa=float(m[0, 0].real),
            bb=float(m[1, 1].real),
            cc=float(m[2, 2].real),
            ab=complex(m[0, 1]),
            ac=complex(m[0, 2]),
            bc=complex(m[1, 2]),
        )

    @classmethod
    def from_vector(cls, y: Sequence[float]) -> "DensityMatrix":
        """Inverse of `to_vector`; ρ_cc is restored from the trace."""
        return cls(
            aa=float(y[0]),
            bb=float(y[1]),
            cc=1.0 - float(y[0]) - float(y[1]),
            ab=complex(y[2], y[3]),
            ac=complex(y[4], y[5]),
            bc=complex(y[6], y[7]),
        )

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------
    def to_vector(self) -> np.ndarray:
        """Eight real degrees of freedom [aa, bb, Re ab, Im ab, Re ac, Im ac, Re bc, Im bc]."""
        ab, ac, bc = complex(self.ab), complex(self.ac), complex(self.bc)
        return np.array([self.aa, self.bb, ab.real, ab.imag, ac.real, ac.imag, bc.real, bc.imag])

    def matrix(self) -> np.ndarray:
        """Full 3×3 complex array."""
        return np.array(
            [
                [self.aa, self.ab, self.ac],
                [self.ba, self.bb, self.bc],
                [self.ca, self.cb, self.cc],
            ],
            dtype=complex,
        )

    @property
    def trace(self) -> float:
        return self.aa + self.bb + self.cc

    @property
    def is_diagonal(self) -> bool:
        return max(abs(self.ab), abs(self.ac), abs(self.bc)) <= 1e-12

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue; positivity is checked by callers, not enforced."""
        return float(np.linalg.eigvalsh(self.matrix()).min())

    def with_coherence(self, **entries: complex) -> "DensityMatrix":
        """Copy with replaced coherences (ab, ac, bc)."""
        return replace(self, **entries)


_ENTRY_LABELS = {"aa", "bb", "cc", "ab", "ac", "bc", "ba", "ca", "cb"}
