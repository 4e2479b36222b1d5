"""
Run logger for tracking solver operations, timing and provenance.

Writes per-run JSON Lines files to the logs/ directory and the
`run.meta` sidecar next to command outputs.
"""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union


# Run-based logger registry to ensure same instance is reused
_logger_registry: Dict[str, "RunLogger"] = {}


def get_or_create_logger(run_id: str, logs_dir: str = "logs") -> "RunLogger":
    """
    Get an existing logger for the run or create a new one.

    The same RunLogger instance is shared by the CLI command and every
    pipeline node of a run, so operation counts and compute time
    accumulate in one place.

    Args:
        run_id: Unique run identifier
        logs_dir: Directory to store log files (default: "logs")

    Returns:
        RunLogger instance for this run
    """
    if run_id not in _logger_registry:
        _logger_registry[run_id] = RunLogger(run_id, logs_dir)
    return _logger_registry[run_id]


def find_logger(run_id: str) -> Optional["RunLogger"]:
    """Return the registered logger for a run without creating one."""
    return _logger_registry.get(run_id)


def remove_logger(run_id: str) -> None:
    """
    Remove a logger from the registry (e.g., after the run ends).

    Args:
        run_id: Run ID to remove
    """
    _logger_registry.pop(run_id, None)


def write_run_meta(path: Union[str, Path], values: Mapping[str, Any]) -> Path:
    """
    Write resolved run values as sorted `key = value` lines.

    Args:
        path: Destination file (conventionally `<out_dir>/run.meta`)
        values: Resolved parameter values

    Returns:
        Path of the written file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{key} = {_format_meta_value(values[key])}" for key in sorted(values)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _format_meta_value(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_format_meta_value(v) for v in value)
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


class RunLogger:
    """
    Run logger that writes per-run JSON log files.

    Tracks solver operations, their wall-clock cost and right-hand-side
    evaluation counts. Log files are written in JSON Lines format (one
    JSON object per line); each run gets its own folder.
    """

    def __init__(self, run_id: str, logs_dir: str = "logs"):
        self.run_id = run_id
        self.base_logs_dir = Path(logs_dir)
        self.run_dir = self.base_logs_dir / run_id
        self.log_file = self.run_dir / "run_log.jsonl"

        self.run_dir.mkdir(parents=True, exist_ok=True)

        # Run accumulators for summary
        self._operation_count = 0
        self._failure_count = 0
        self._total_compute_ms = 0.0
        self._total_rhs_evaluations = 0

    def _get_timestamp(self) -> str:
        """Get current UTC timestamp in ISO format."""
        return datetime.now(timezone.utc).isoformat()

    def _append_to_log(self, entry: Dict[str, Any]) -> None:
        with open(self.log_file, "a", encoding="utf-8") as f:
            f.write(json.dumps(entry, ensure_ascii=True) + "\n")

    def log_operation(
        self,
        name: str,
        duration_ms: float,
        rhs_evaluations: int = 0,
        success: bool = True,
        details: Optional[Dict[str, Any]] = None,
        error: Optional[str] = None,
    ) -> None:
        """
        Log one solver operation with timing.

        Args:
            name: Operation name (e.g., "ode.evolve", "laplace.turnon_system")
            duration_ms: Wall-clock time in milliseconds
            rhs_evaluations: Right-hand-side evaluations spent by an integrator
            success: Whether the operation succeeded
            details: Extra JSON-serializable fields
            error: Error message if the operation failed
        """
        self._operation_count += 1
        self._total_compute_ms += duration_ms
        self._total_rhs_evaluations += rhs_evaluations
        if not success:
            self._failure_count += 1

        entry = {
            "type": "operation",
            "timestamp": self._get_timestamp(),
            "run_id": self.run_id,
            "operation": name,
            "duration_ms": round(duration_ms, 2),
            "rhs_evaluations": rhs_evaluations,
            "success": success,
        }
        if details:
            entry["details"] = details
        if error:
            entry["error"] = error

        self._append_to_log(entry)

    def log_run_summary(self, command: str, exit_code: int) -> Dict[str, Any]:
        """
        Log and return a run summary with totals.

        Args:
            command: CLI subcommand that was executed
            exit_code: Process exit code

        Returns:
            Summary dictionary with all totals
        """
        summary = {
            "type": "run_summary",
            "timestamp": self._get_timestamp(),
            "run_id": self.run_id,
            "command": command,
            "exit_code": exit_code,
            **self.get_accumulated_stats(),
        }

        self._append_to_log(summary)
        return summary

    def get_accumulated_stats(self) -> Dict[str, Any]:
        """Get current accumulated statistics without logging."""
        return {
            "operation_count": self._operation_count,
            "failure_count": self._failure_count,
            "total_compute_ms": round(self._total_compute_ms, 2),
            "total_rhs_evaluations": self._total_rhs_evaluations,
        }
