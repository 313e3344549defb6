import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from rich.console import Console

from cylcrit.io import Report, write_report
from cylcrit.utils.console import create_console


@dataclass
class RunOptions:
    """Global options of one CLI invocation, shared by every command."""

    seed: int
    budget: int
    precision: str
    workers: int
    out: Path | None = None
    console: Console = field(default_factory=create_console)
    err_console: Console = field(default_factory=lambda: create_console(stderr=True))
    started: float = field(default_factory=time.perf_counter)

    @property
    def dtype(self) -> type[np.floating]:
        return np.longdouble if self.precision == "extended" else np.float64

    def report(self, command: str, results: dict[str, Any], inputs_digest: str | None = None) -> Report:
        """Build the report of a command and write it when --out was given."""
        report = Report(
            command=command,
            inputs_digest=inputs_digest,
            seed=self.seed,
            budget=self.budget,
            precision=self.precision,
            results=results,
            timing_seconds=time.perf_counter() - self.started,
        )
        if self.out is not None:
            write_report(report, self.out)
        return report
