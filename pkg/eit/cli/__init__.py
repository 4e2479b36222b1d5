"""
Command-line front end: click commands, config files and figure presets.
"""

from eit.cli.commands import ComparisonFailed, cli
from eit.cli.config_loader import ParseError, RunSpec, load_config, parse_config_text
from eit.cli.presets import PRESETS, Preset

__all__ = [
    "ComparisonFailed",
    "cli",
    "ParseError",
    "RunSpec",
    "load_config",
    "parse_config_text",
    "PRESETS",
    "Preset",
]
