"""
Root exception classes.

Every module-specific error derives from one of these two roots so the
command-line front end can map failures to exit codes without knowing
about individual modules.
"""


class UsageError(Exception):
    """Raised when caller-supplied input is invalid (exit code 1)."""

    exit_code = 1


class SimulationError(Exception):
    """Raised when a numerical computation fails (exit code 2)."""

    exit_code = 2
