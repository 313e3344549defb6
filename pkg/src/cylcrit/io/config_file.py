"""The configuration file format: JSON with floats written at 17 significant digits."""

import json
import logging
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from cylcrit.canon import ConfigurationError, LineConfiguration
from cylcrit.geom import GeometryError, TangentLine
from cylcrit.settings import settings

logger = logging.getLogger(__name__)


class ConfigParseError(ValueError):
    """Raised when a configuration file cannot be parsed; ``location`` is line:column or a field path."""

    def __init__(self, message: str, location: str) -> None:
        super().__init__(f"{location}: {message}")
        self.location = location


class LineSpec(BaseModel):
    """One line: its label, touch point and unit direction."""

    model_config = ConfigDict(extra="forbid")

    label: str = Field(min_length=1)
    point: tuple[float, float, float]
    direction: tuple[float, float, float]


class ConfigFile(BaseModel):
    """A serialized line configuration."""

    model_config = ConfigDict(extra="forbid")

    schema_version: str = Field(default="1", description="Version of this file format")
    lines: list[LineSpec] = Field(default_factory=list)
    parallel_pairs: list[tuple[str, str]] = Field(default_factory=list)

    @field_validator("schema_version")
    @classmethod
    def validate_schema_version(cls, v: str) -> str:
        if v != settings.schema_version:
            raise ValueError(f"unsupported schema_version {v!r}, expected {settings.schema_version!r}")
        return v

    @model_validator(mode="after")
    def validate_labels(self) -> "ConfigFile":
        labels = [line.label for line in self.lines]
        if len(set(labels)) != len(labels):
            raise ValueError("line labels must be unique")
        for u, v in self.parallel_pairs:
            if u not in labels or v not in labels:
                raise ValueError(f"parallel pair ({u}, {v}) names an unknown line")
        return self


def parse_config(text: str) -> ConfigFile:
    """Parse and validate configuration text. Integers are read as floats.

    Raises:
        ConfigParseError: On invalid JSON or a schema violation
    """
    try:
        data = json.loads(text, parse_int=float)
    except json.JSONDecodeError as e:
        raise ConfigParseError(e.msg, f"{e.lineno}:{e.colno}") from e
    try:
        return ConfigFile.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        location = ".".join(str(part) for part in error["loc"]) or "<root>"
        raise ConfigParseError(error["msg"], location) from e


def to_configuration(config: ConfigFile) -> LineConfiguration:
    """Build the validated LineConfiguration.

    Raises:
        ConfigParseError: If a line is not tangent to the unit sphere
    """
    lines = []
    for k, spec in enumerate(config.lines):
        try:
            lines.append(TangentLine(touch_point=spec.point, direction=spec.direction))
        except GeometryError as e:
            raise ConfigParseError(str(e), f"lines.{k}") from e
    labels = tuple(spec.label for spec in config.lines)
    pairs = tuple((labels.index(u), labels.index(v)) for u, v in config.parallel_pairs)
    try:
        return LineConfiguration(lines=tuple(lines), labels=labels, parallel_pairs=pairs)
    except ConfigurationError as e:
        raise ConfigParseError(str(e), "parallel_pairs") from e


def from_configuration(cfg: LineConfiguration) -> ConfigFile:
    return ConfigFile(
        schema_version=settings.schema_version,
        lines=[
            LineSpec(label=label, point=line.touch_point, direction=line.direction)
            for label, line in zip(cfg.labels, cfg.lines, strict=True)
        ],
        parallel_pairs=[(cfg.labels[i], cfg.labels[j]) for i, j in cfg.parallel_pairs],
    )


def format_float(x: float) -> str:
    return f"{x:.17g}"


def _vector(values: tuple[float, float, float]) -> str:
    return "[" + ", ".join(format_float(v) for v in values) + "]"


def dump_config(config: ConfigFile) -> str:
    """Canonical text of a configuration file; parse and dump reproduce it byte for byte."""
    def quoted(s: str) -> str:
        return json.dumps(s, ensure_ascii=False)

    rows = [
        f'    {{"label": {quoted(s.label)}, "point": {_vector(s.point)}, "direction": {_vector(s.direction)}}}'
        for s in config.lines
    ]
    lines = "[\n" + ",\n".join(rows) + "\n  ]" if rows else "[]"
    pairs = ", ".join(f"[{quoted(u)}, {quoted(v)}]" for u, v in config.parallel_pairs)
    return (
        "{\n"
        f'  "schema_version": {quoted(config.schema_version)},\n'
        f'  "lines": {lines},\n'
        f'  "parallel_pairs": [{pairs}]\n'
        "}\n"
    )


def load_config(path: Path) -> LineConfiguration:
    return to_configuration(parse_config(Path(path).read_text(encoding="utf-8")))


def save_config(cfg: LineConfiguration, path: Path) -> str:
    """Write the canonical file and return its text."""
    text = dump_config(from_configuration(cfg))
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    logger.debug(f"Wrote {len(cfg)} lines to {path}")
    return text
