"""Contracts shared between the compare pipeline and the CLI."""

from eit.shared.contracts.compare_report import CompareReport, OracleResidual

__all__ = ["CompareReport", "OracleResidual"]
