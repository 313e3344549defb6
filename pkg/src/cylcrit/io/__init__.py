"""Configuration files and run reports."""

from .config_file import (
    ConfigFile,
    ConfigParseError,
    LineSpec,
    dump_config,
    format_float,
    from_configuration,
    load_config,
    parse_config,
    save_config,
    to_configuration,
)
from .report import Report, input_digest, read_reports, write_report

__all__ = [
    "ConfigFile",
    "ConfigParseError",
    "LineSpec",
    "Report",
    "dump_config",
    "format_float",
    "from_configuration",
    "input_digest",
    "load_config",
    "parse_config",
    "read_reports",
    "save_config",
    "to_configuration",
    "write_report",
]
