"""
Rational functions r(p) = N(p)/D(p), their pole expansions and inversion.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from eit.laplace.config import DEFAULT_CONFIG, LaplaceConfig
from eit.laplace.polynomial import ComplexPolynomial, poly_roots
from eit.shared.errors import SimulationError


logger = logging.getLogger(__name__)


class DegeneratePoles(SimulationError):
    """Raised when two poles are closer than the separation tolerance."""

    pass


class UnstablePole(SimulationError):
    """Raised when a long-time limit does not exist (growing, undamped or repeated origin pole)."""

    pass


class ExpansionMismatch(SimulationError):
    """Raised when a pole expansion does not reproduce its rational function."""

    pass


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of two complex polynomials in p; no common factors are cancelled."""

    numerator: ComplexPolynomial
    denominator: ComplexPolynomial

    def __post_init__(self) -> None:
        if self.denominator.is_zero:
            raise ZeroDivisionError("RationalFunction denominator is identically zero")

    @classmethod
    def constant(cls, value: complex) -> "RationalFunction":
        return cls(ComplexPolynomial([value]), ComplexPolynomial([1.0]))

    def __call__(self, p):
        return self.numerator(p) / self.denominator(p)

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(ComplexPolynomial([other]), ComplexPolynomial([1.0]))

    def __add__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalFunction":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        return RationalFunction(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    __rmul__ = __mul__

    def conjugate(self) -> "RationalFunction":
        """Complex conjugation holding p real: conj(r(conj(p)))."""
        return RationalFunction(self.numerator.conjugate(), self.denominator.conjugate())

    def to_text(self) -> str:
        """Debug dump: `num: c0 c1 ...` / `den: c0 c1 ...` with `re+imj` tokens."""
        return f"num: {self.numerator.to_text()}\nden: {self.denominator.to_text()}\n"

    @classmethod
    def from_text(cls, text: str) -> "RationalFunction":
        """Parse the debug dump written by `to_text`."""
        parts = {}
        for line in text.strip().splitlines():
            key, _, values = line.partition(":")
            parts[key.strip()] = [complex(tok) for tok in values.split()]
        if set(parts) != {"num", "den"}:
            raise ValueError("Expected exactly one 'num:' and one 'den:' line")
        return cls(ComplexPolynomial(parts["num"]), ComplexPolynomial(parts["den"]))


@dataclass(frozen=True)
class PoleExpansion:
    """
    Σ residue/(p − pole) plus an optional polynomial part.

    Attributes:
        terms: (pole, residue) pairs with pairwise distinct poles
        polynomial_part: Quotient of N by D (zero for strictly proper functions)
    """

    terms: Tuple[Tuple[complex, complex], ...]
    polynomial_part: ComplexPolynomial = field(default_factory=lambda: ComplexPolynomial([0.0]))

    @property
    def poles(self) -> np.ndarray:
        return np.array([pole for pole, _ in self.terms], dtype=complex)

    @property
    def residues(self) -> np.ndarray:
        return np.array([res for _, res in self.terms], dtype=complex)

    def __call__(self, p):
        p = np.asarray(p, dtype=complex)
        total = self.polynomial_part(p)
        for pole, residue in self.terms:
            total = total + residue / (p - pole)
        return total


def _probe_points(radius: float, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    magnitude = radius * rng.uniform(1.2, 2.0, size=count)
    return magnitude * np.exp(2j * np.pi * rng.uniform(size=count))


def partial_fractions(rf: RationalFunction, config: Optional[LaplaceConfig] = None) -> PoleExpansion:
    """
    Expand a rational function with simple poles.

    Residue at pole P is N(P)/D′(P) after removing any polynomial part.

    Raises:
        DegeneratePoles: two poles closer than the relative separation tolerance
        ExpansionMismatch: the expansion fails the reconstruction check
    """
    config = config or DEFAULT_CONFIG
    _log = "[module=laplace] [op=partial_fractions] "
    num, den = rf.numerator, rf.denominator

    if den.degree == 0:
        return PoleExpansion(terms=(), polynomial_part=ComplexPolynomial(num.coefficients / den.coefficients[0]))

    if num.degree >= den.degree:
        quotient, remainder = P.polydiv(num.coefficients, den.coefficients)
        poly_part = ComplexPolynomial(quotient, scale=num.scale)
        num = ComplexPolynomial(remainder, scale=num.scale)
    else:
        poly_part = ComplexPolynomial([0.0])

    poles = poly_roots(den, config)
    pole_scale = float(np.max(np.abs(poles)))
    if poles.size > 1:
        gaps = np.abs(poles[:, None] - poles[None, :])
        gaps[np.diag_indices_from(gaps)] = np.inf
        smallest = float(gaps.min())
        if smallest < config.pole_separation * max(pole_scale, np.finfo(float).tiny):
            i, j = np.unravel_index(np.argmin(gaps), gaps.shape)
            logger.warning(f"{_log}Degenerate poles {poles[i]} and {poles[j]} (gap {smallest:.3e})")
            raise DegeneratePoles(
                f"Poles {poles[i]} and {poles[j]} are separated by {smallest:.3e}, "
                f"below {config.pole_separation:g} x {pole_scale:.3e}"
            )

    dden = den.deriv()
    residues = num(poles) / dden(poles)
    expansion = PoleExpansion(
        terms=tuple((complex(pl), complex(rs)) for pl, rs in zip(poles, residues)),
        polynomial_part=poly_part,
    )

    probes = _probe_points(max(1.0, pole_scale), config.probe_count, config.seed)
    direct = rf(probes)
    expanded = expansion(probes)
    error = np.max(np.abs(direct - expanded) / np.maximum(np.abs(direct), np.finfo(float).tiny))
    if error > config.expansion_tol:
        logger.error(f"{_log}Reconstruction error {error:.3e} exceeds {config.expansion_tol:g}")
        raise ExpansionMismatch(f"Pole expansion reproduces r(p) only to {error:.3e} relative")

    logger.debug(f"{_log}Expanded degree-{den.degree} denominator | reconstruction error={error:.2e}")
    return expansion


def invert(pe: PoleExpansion, t):
    """
    Inverse Laplace transform Σ residue·e^{pole·t} for t >= 0 (μs).

    The polynomial part only contributes impulses at t = 0 and is omitted.
    """
    t = np.asarray(t, dtype=float)
    if not pe.terms:
        return np.zeros_like(t, dtype=complex) if t.ndim else 0j
    poles = pe.poles
    residues = pe.residues
    values = np.exp(np.multiply.outer(t, poles)) @ residues
    return values if t.ndim else complex(values)


def long_time_limit(rf: RationalFunction, config: Optional[LaplaceConfig] = None) -> complex:
    """
    lim_{p→0} p·r(p), i.e. the t → ∞ value of the inverse transform.

    Zero when there is no pole at the origin.

    Raises:
        UnstablePole: a pole with non-negative real part other than a simple pole at 0
    """
    config = config or DEFAULT_CONFIG
    den = rf.denominator
    if den.degree == 0:
        return 0j
    roots = poly_roots(den, config)
    tol = config.origin_tol * max(1.0, float(np.max(np.abs(roots))))
    at_origin = np.abs(roots) <= tol
    if int(at_origin.sum()) > 1:
        raise UnstablePole(f"Pole at p = 0 has multiplicity {int(at_origin.sum())}")
    others = roots[~at_origin]
    if np.any(others.real >= -tol):
        worst = others[np.argmax(others.real)]
        raise UnstablePole(f"Pole {worst} has non-negative real part; no long-time limit")
    if not at_origin.any():
        return 0j
    return complex(rf.numerator(0.0) / den.deriv()(0.0))

