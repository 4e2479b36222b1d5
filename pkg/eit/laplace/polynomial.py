"""
Complex polynomials in the Laplace variable p.

Coefficients are stored in ascending degree order, matching
numpy.polynomial.polynomial.
"""

import logging
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as P

from eit.laplace.config import DEFAULT_CONFIG, LaplaceConfig
from eit.shared.errors import SimulationError


logger = logging.getLogger(__name__)

Number = Union[int, float, complex]


class NoConvergence(SimulationError):
    """Raised when polynomial roots fail the residual bound."""

    pass


def _trim(coefficients: np.ndarray, tol: float, scale: float) -> np.ndarray:
    if coefficients.size == 0:
        return np.zeros(1, dtype=complex)
    # Compare |c_k|·scale^k so polynomials in rad/μs keep their small leading terms
    weighted = np.abs(coefficients) * scale ** np.arange(coefficients.size)
    largest = np.max(weighted)
    if not np.isfinite(largest):
        return coefficients.copy()
    if largest == 0.0:
        return np.zeros(1, dtype=complex)
    keep = np.nonzero(weighted > tol * largest)[0]
    return coefficients[: keep[-1] + 1].copy()


class ComplexPolynomial:
    """
    Polynomial with complex coefficients, ascending degree.

    Trailing coefficients with |c_k|·scale^k below trim_tol times the largest
    such term are dropped, so the leading coefficient is nonzero unless the
    polynomial is zero. `scale` is a characteristic size of p (rad/μs).
    """

    __slots__ = ("coefficients", "scale")

    def __init__(
        self,
        coefficients: Iterable[Number],
        scale: float = 1.0,
        trim_tol: float = DEFAULT_CONFIG.trim_tol,
    ):
        self.scale = float(scale)
        self.coefficients = _trim(np.asarray(list(coefficients), dtype=complex), trim_tol, self.scale)

    @classmethod
    def from_roots(cls, roots: Sequence[Number], leading: Number = 1.0) -> "ComplexPolynomial":
        roots = np.asarray(roots, dtype=complex)
        scale = max(1.0, float(np.max(np.abs(roots)))) if roots.size else 1.0
        return cls(leading * P.polyfromroots(roots), scale=scale)

    @classmethod
    def constant(cls, value: Number) -> "ComplexPolynomial":
        return cls([value])

    @classmethod
    def p(cls, scale: float = 1.0) -> "ComplexPolynomial":
        """The monomial p."""
        return cls([0.0, 1.0], scale=scale)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    @property
    def is_zero(self) -> bool:
        return self.coefficients.size == 1 and self.coefficients[0] == 0

    def __call__(self, p):
        return P.polyval(p, self.coefficients)

    def deriv(self) -> "ComplexPolynomial":
        if self.degree == 0:
            return ComplexPolynomial([0.0], scale=self.scale)
        return ComplexPolynomial(P.polyder(self.coefficients), scale=self.scale)

    def conjugate(self) -> "ComplexPolynomial":
        """Conjugate every coefficient (conjugation holding p real)."""
        return ComplexPolynomial(self.coefficients.conj(), scale=self.scale)

    def _coerce(self, other) -> "ComplexPolynomial":
        if isinstance(other, ComplexPolynomial):
            return other
        return ComplexPolynomial([other], scale=self.scale)

    def __add__(self, other) -> "ComplexPolynomial":
        other = self._coerce(other)
        return ComplexPolynomial(
            P.polyadd(self.coefficients, other.coefficients), scale=max(self.scale, other.scale)
        )

    __radd__ = __add__

    def __neg__(self) -> "ComplexPolynomial":
        return ComplexPolynomial(-self.coefficients, scale=self.scale)

    def __sub__(self, other) -> "ComplexPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ComplexPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ComplexPolynomial":
        other = self._coerce(other)
        return ComplexPolynomial(
            P.polymul(self.coefficients, other.coefficients), scale=max(self.scale, other.scale)
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexPolynomial):
            return NotImplemented
        return np.array_equal(self.coefficients, other.coefficients)

    def __hash__(self) -> int:
        return hash(self.coefficients.tobytes())

    def __repr__(self) -> str:
        return f"ComplexPolynomial({self.to_text()})"

    def to_text(self) -> str:
        """Coefficients as space-separated `re+imj` tokens."""
        return " ".join(format_complex(c) for c in self.coefficients)


def format_complex(value: complex) -> str:
    return f"{float(value.real):.17g}{float(value.imag):+.17g}j"


def poly_roots(poly: ComplexPolynomial, config: Optional[LaplaceConfig] = None) -> np.ndarray:
    """
    All complex roots with multiplicity.

    Companion-matrix eigenvalues polished by a few Newton steps; every root
    must satisfy |poly(r)| <= tol·max|coeff|·max(1, |r|)^degree.

    Raises:
        NoConvergence: a root fails the residual bound
        ValueError: degree < 1
    """
    config = config or DEFAULT_CONFIG
    if poly.degree < 1:
        raise ValueError("poly_roots needs a polynomial of degree >= 1")

    roots = P.polyroots(poly.coefficients).astype(complex)
    dpoly = poly.deriv()
    for k, root in enumerate(roots):
        value = poly(root)
        for _ in range(config.newton_steps):
            slope = dpoly(root)
            if slope == 0:
                break
            candidate = root - value / slope
            candidate_value = poly(candidate)
            if abs(candidate_value) >= abs(value):
                break
            root, value = candidate, candidate_value
        roots[k] = root

    scale = np.max(np.abs(poly.coefficients))
    bounds = config.root_residual * scale * np.maximum(1.0, np.abs(roots)) ** poly.degree
    residuals = np.abs(poly(roots))
    bad = residuals > bounds
    if np.any(bad):
        worst = int(np.argmax(residuals / bounds))
        logger.error(
            f"[module=laplace] [op=poly_roots] Residual check failed | "
            f"degree={poly.degree}, root={roots[worst]}, residual={residuals[worst]:.3e}"
        )
        raise NoConvergence(
            f"{int(bad.sum())} of {poly.degree} roots fail the residual bound "
            f"(worst residual {residuals[worst]:.3e} at {roots[worst]})"
        )
    return roots
