"""Random lines and configurations shared by the geometry tests."""

import numpy as np

from cylcrit.canon import LineConfiguration
from cylcrit.geom import OrientedLine, TangentLine


def random_unit(rng: np.random.Generator, dim: int = 3) -> np.ndarray:
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_tangent_line(rng: np.random.Generator) -> TangentLine:
    """A tangent line with a uniformly random touch point and tangent direction."""
    x = random_unit(rng)
    xi = rng.standard_normal(3)
    xi -= (xi @ x) * x
    return TangentLine.from_arrays(x, xi)


def random_oriented_line(rng: np.random.Generator, spread: float = 2.0) -> OrientedLine:
    point = rng.uniform(-spread, spread, 3)
    return OrientedLine(point=tuple(point), direction=tuple(random_unit(rng)))


def random_configuration(rng: np.random.Generator, n: int = 6) -> LineConfiguration:
    lines = tuple(random_tangent_line(rng) for _ in range(n))
    return LineConfiguration(lines=lines, labels=tuple(f"r{k}" for k in range(n)))
