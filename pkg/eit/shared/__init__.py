"""Shared infrastructure for all simulator modules."""

from eit.shared.errors import SimulationError, UsageError
from eit.shared.logging import RunLogger, get_or_create_logger, remove_logger

__all__ = [
    "SimulationError",
    "UsageError",
    "RunLogger",
    "get_or_create_logger",
    "remove_logger",
]
