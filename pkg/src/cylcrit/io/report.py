"""Run reports written as pretty JSON or appended as JSON lines."""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)


class Report(BaseModel):
    """The result of one command, with everything needed to reproduce it."""

    command: str
    inputs_digest: str | None = Field(default=None, description="SHA-256 of the input file text")
    seed: int
    budget: int
    precision: str
    results: dict[str, Any] = Field(default_factory=dict)
    timing_seconds: float = 0.0


def input_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def write_report(report: Report, path: Path) -> None:
    """Append one line to ``.jsonl`` paths; replace any other path atomically."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = report.model_dump(mode="json")
    if path.suffix == ".jsonl":
        with open(path, "a", encoding="utf-8") as f:
            f.write(json.dumps(data, ensure_ascii=False, separators=(",", ":")) + "\n")
            f.flush()
        logger.debug(f"Appended {report.command} report to {path}")
        return

    temp_file = path.with_suffix(path.suffix + ".tmp")
    try:
        with open(temp_file, "w", encoding="utf-8") as f:
            f.write(json.dumps(data, ensure_ascii=False, indent=2) + "\n")
        temp_file.replace(path)
    except Exception:
        if temp_file.exists():
            temp_file.unlink()
        raise
    logger.debug(f"Wrote {report.command} report to {path}")


def read_reports(path: Path) -> list[Report]:
    """Every report in a ``.jsonl`` file, or the single report of a ``.json`` file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix != ".jsonl":
        return [Report.model_validate_json(text)]
    return [Report.model_validate_json(line) for line in text.splitlines() if line.strip()]
