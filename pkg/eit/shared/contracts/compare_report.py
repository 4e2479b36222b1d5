"""
Cross-oracle comparison contract.

Defines the residual table produced by the compare pipeline: each row pairs
one parameter sample with one pair of engines.
"""

from typing import List

from pydantic import BaseModel, Field


class OracleResidual(BaseModel):
    """Largest deviation between two engines on one parameter sample."""

    sample: int = Field(ge=0, description="Index of the parameter sample")
    check: str = Field(description="Engine pair, e.g. 'turnon laplace-vs-ode'")
    max_abs: float = Field(ge=0, description="max_t |a(t) − b(t)| of Im ρ_bc")
    tolerance: float = Field(gt=0, description="Acceptance threshold for max_abs")

    @property
    def passed(self) -> bool:
        return self.max_abs <= self.tolerance


class CompareReport(BaseModel):
    """Residual table of one compare run."""

    run_id: str = Field(description="Run identifier")
    seed: int = Field(description="Seed of the parameter sampler")
    rows: List[OracleResidual] = Field(default_factory=list, description="One row per sample and check")
    errors: List[str] = Field(default_factory=list, description="Engine failures, one message each")

    @property
    def all_passed(self) -> bool:
        return not self.errors and all(row.passed for row in self.rows)

    def to_text(self) -> str:
        """Fixed-width table with a PASS/FAIL column."""
        lines = [f"{'sample':>6}  {'check':<26}  {'max_abs':>12}  {'tolerance':>12}  result"]
        for row in self.rows:
            lines.append(
                f"{row.sample:>6}  {row.check:<26}  {row.max_abs:>12.4e}  {row.tolerance:>12.4e}  "
                f"{'PASS' if row.passed else 'FAIL'}"
            )
        lines.extend(f"error: {message}" for message in self.errors)
        return "\n".join(lines) + "\n"
