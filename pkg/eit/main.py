"""
Process entry point for the `eit` command.

Configures logging once and maps exceptions to exit codes:
0 success, 1 usage error, 2 numerical failure.
"""

import logging
import sys
import uuid
from typing import List, Optional

import click

from eit.cli.commands import cli
from eit.shared.errors import SimulationError, UsageError
from eit.shared.logging import find_logger, remove_logger


# ============================================================================
# Logging configuration (single source of truth for all modules)
# ============================================================================
LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)-35s | %(message)s"


def configure_logging(level: int = logging.INFO) -> None:
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,  # Override any prior basicConfig calls
    )
    # Quiet noisy third-party loggers
    logging.getLogger("langgraph").setLevel(logging.WARNING)
    logging.getLogger("matplotlib").setLevel(logging.WARNING)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI and return the process exit code.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])
    """
    configure_logging()
    run_id = f"run-{uuid.uuid4().hex[:12]}"
    command = "eit"
    exit_code = 0
    try:
        ctx_args = list(sys.argv[1:] if argv is None else argv)
        command = next((arg for arg in ctx_args if arg in cli.commands), command)
        result = cli.main(args=ctx_args, prog_name="eit", standalone_mode=False, obj={"run_id": run_id})
        exit_code = result if isinstance(result, int) else 0
    except click.exceptions.Exit as e:
        exit_code = e.exit_code
    except click.ClickException as e:
        e.show()
        exit_code = 1
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        exit_code = 1
    except UsageError as e:
        click.echo(f"Error: {e}", err=True)
        exit_code = UsageError.exit_code
    except SimulationError as e:
        logging.getLogger(__name__).error(f"[run={run_id}] [command={command}] Numerical failure: {e}")
        click.echo(f"Numerical error: {e}", err=True)
        exit_code = SimulationError.exit_code

    run_logger = find_logger(run_id)
    if run_logger is not None:
        run_logger.log_run_summary(command, exit_code)
        remove_logger(run_id)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
