"""Configuration and symmetry value types."""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from cylcrit.geom import TangentLine, config_norm_distance, transform_line
from cylcrit.settings import settings

O6_LABELS: tuple[str, ...] = ("l1+", "l2+", "l3+", "l1-", "l2-", "l3-")
O6_PARALLEL_PAIRS: tuple[tuple[int, int], ...] = ((0, 3), (1, 4), (2, 5))
# Touch points and directions of O6 in label order.
O6_LINES: tuple[TangentLine, ...] = tuple(
    TangentLine(touch_point=x, direction=xi)
    for x, xi in (
        ((1.0, 0.0, 0.0), (0.0, 0.0, 1.0)),
        ((0.0, 1.0, 0.0), (1.0, 0.0, 0.0)),
        ((0.0, 0.0, 1.0), (0.0, 1.0, 0.0)),
        ((-1.0, 0.0, 0.0), (0.0, 0.0, 1.0)),
        ((0.0, -1.0, 0.0), (1.0, 0.0, 0.0)),
        ((0.0, 0.0, -1.0), (0.0, 1.0, 0.0)),
    )
)


class ConfigurationError(ValueError):
    """Raised when a line configuration is inconsistent."""

    pass


@dataclass(frozen=True)
class LineConfiguration:
    """An ordered tuple of tangent lines with labels and declared parallel pairs.

    ``parallel_pairs`` is metadata of the base configuration. It is carried
    unchanged through deformations so that the same pairs stay excluded.
    """

    lines: tuple[TangentLine, ...]
    labels: tuple[str, ...]
    parallel_pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        lines = tuple(self.lines)
        labels = tuple(self.labels)
        if len(labels) != len(lines):
            raise ConfigurationError(f"{len(lines)} lines but {len(labels)} labels")
        if len(set(labels)) != len(labels):
            raise ConfigurationError("labels must be unique")
        pairs: list[tuple[int, int]] = []
        for i, j in self.parallel_pairs:
            i, j = int(i), int(j)
            if i == j or not (0 <= i < len(lines) and 0 <= j < len(lines)):
                raise ConfigurationError(f"invalid parallel pair ({i}, {j})")
            pairs.append((min(i, j), max(i, j)))
        if len(set(pairs)) != len(pairs):
            raise ConfigurationError("duplicate parallel pair")
        object.__setattr__(self, "lines", lines)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "parallel_pairs", tuple(pairs))

    def __len__(self) -> int:
        return len(self.lines)

    @property
    def is_octahedral(self) -> bool:
        """Whether this is the canonical O6: its labels, parallel pairs and lines, in order.

        Lines are compared in the configuration norm within the symmetry tolerance.
        """
        if self.labels != O6_LABELS or self.parallel_pairs != O6_PARALLEL_PAIRS:
            return False
        tol = settings.geometry.symmetry_tolerance
        return all(config_norm_distance(a, b) < tol for a, b in zip(self.lines, O6_LINES, strict=True))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as e:
            raise ConfigurationError(f"unknown line label {label!r}") from e

    def points(self, dtype: type[np.floating] = np.float64) -> np.ndarray:
        return np.array([line.touch_point for line in self.lines], dtype=dtype).reshape(-1, 3)

    def directions(self, dtype: type[np.floating] = np.float64) -> np.ndarray:
        return np.array([line.direction for line in self.lines], dtype=dtype).reshape(-1, 3)

    def pair_mask(self, skip_parallel: bool) -> np.ndarray:
        """Boolean (n, n) mask of the unordered pairs i < j entering the minimum."""
        n = len(self.lines)
        mask = np.triu(np.ones((n, n), dtype=bool), 1)
        if skip_parallel:
            for i, j in self.parallel_pairs:
                mask[i, j] = False
        return mask

    def parallel_pairs_hold(self, tol: float = 1e-12) -> bool:
        """Whether every declared parallel pair has |xi' . xi''| = 1 within tol."""
        for i, j in self.parallel_pairs:
            cos = abs(float(self.lines[i].xi @ self.lines[j].xi))
            if abs(cos - 1.0) > tol:
                return False
        return True

    def with_lines(self, lines: Sequence[TangentLine]) -> "LineConfiguration":
        """Same labels and parallel pairs, new lines."""
        return LineConfiguration(lines=tuple(lines), labels=self.labels, parallel_pairs=self.parallel_pairs)

    def transformed(self, matrix: np.ndarray) -> "LineConfiguration":
        """Image under an orthogonal map, keeping labels."""
        return self.with_lines([transform_line(matrix, line) for line in self.lines])

    @classmethod
    def from_arrays(
        cls,
        points: np.ndarray,
        directions: np.ndarray,
        labels: Sequence[str],
        parallel_pairs: Sequence[tuple[int, int]] = (),
    ) -> "LineConfiguration":
        lines = tuple(TangentLine.from_arrays(p, d) for p, d in zip(points, directions, strict=True))
        return cls(lines=lines, labels=tuple(labels), parallel_pairs=tuple(parallel_pairs))


@dataclass(frozen=True)
class SymmetryElement:
    """An orthogonal 3x3 map acting on configurations; parity is the determinant sign."""

    matrix: tuple[tuple[float, float, float], ...]
    name: str = ""
    parity: int = field(init=False)

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise ConfigurationError("symmetry matrix must be 3x3")
        if not np.allclose(m.T @ m, np.eye(3), atol=1e-12, rtol=0):
            raise ConfigurationError("symmetry matrix must be orthogonal")
        object.__setattr__(self, "matrix", tuple(tuple(float(v) for v in row) for row in m))
        object.__setattr__(self, "parity", 1 if np.linalg.det(m) > 0 else -1)

    @classmethod
    def of(cls, matrix: np.ndarray, name: str = "") -> "SymmetryElement":
        return cls(matrix=tuple(tuple(float(v) for v in row) for row in np.asarray(matrix)), name=name)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.matrix)

    def __matmul__(self, other: "SymmetryElement") -> "SymmetryElement":
        name = f"{self.name}*{other.name}" if self.name and other.name else ""
        return SymmetryElement.of(self.array @ other.array, name=name)
