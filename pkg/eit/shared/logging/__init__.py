"""Logging utilities."""

from eit.shared.logging.run_logger import (
    find_logger,
    RunLogger,
    get_or_create_logger,
    remove_logger,
    write_run_meta,
)

__all__ = [
    "RunLogger",
    "find_logger",
    "get_or_create_logger",
    "remove_logger",
    "write_run_meta",
]
