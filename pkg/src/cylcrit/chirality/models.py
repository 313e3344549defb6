"""Triples of oriented lines for chirality analysis."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from cylcrit.geom import OrientedLine, TangentLine
from cylcrit.settings import settings


class ChiralityError(ValueError):
    """Raised for pairs or triples whose sign is undefined.

    ``condition`` names the failing check: parallel, intersecting or generic_position.
    """

    def __init__(self, message: str, condition: str) -> None:
        super().__init__(message)
        self.condition = condition


def degeneracy_tolerance() -> float:
    return settings.geometry.parallel_threshold


def as_oriented(line: TangentLine | OrientedLine) -> OrientedLine:
    if isinstance(line, OrientedLine):
        return line
    return line.oriented()


@dataclass(frozen=True)
class LineTriple:
    """Three pairwise non-parallel oriented lines."""

    lines: tuple[OrientedLine, OrientedLine, OrientedLine]

    def __post_init__(self) -> None:
        lines = tuple(as_oriented(line) for line in self.lines)
        if len(lines) != 3:
            raise ValueError(f"a triple needs 3 lines, got {len(lines)}")
        tol = degeneracy_tolerance()
        for a, b in ((0, 1), (0, 2), (1, 2)):
            if abs(float(lines[a].xi @ lines[b].xi)) >= 1 - tol:
                raise ChiralityError(f"lines {a} and {b} are parallel", "parallel")
        object.__setattr__(self, "lines", lines)

    @classmethod
    def of(cls, lines: Sequence[TangentLine | OrientedLine]) -> "LineTriple":
        return cls(lines=tuple(lines))  # type: ignore[arg-type]

    def direction_determinant(self) -> float:
        return float(np.linalg.det(np.column_stack([line.xi for line in self.lines])))

    def is_generic(self, tol: float | None = None) -> bool:
        """No plane is parallel to all three lines."""
        if tol is None:
            tol = degeneracy_tolerance()
        return abs(self.direction_determinant()) >= tol

    def reoriented(self, index: int) -> "LineTriple":
        """The triple with the orientation of one line reversed."""
        lines = list(self.lines)
        lines[index] = lines[index].reversed()
        return LineTriple.of(lines)
