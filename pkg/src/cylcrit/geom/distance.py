"""Distances between lines and the configuration-space norm."""

import numpy as np

from cylcrit.settings import settings

from .models import OrientedLine, Rotation, TangentLine

Line = TangentLine | OrientedLine


def _point_direction(line: Line) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(line, TangentLine):
        return line.x, line.xi
    return line.p, line.xi


def pair_distance_sq(
    p1: np.ndarray,
    xi1: np.ndarray,
    p2: np.ndarray,
    xi2: np.ndarray,
    parallel_threshold: float | None = None,
) -> np.ndarray:
    """Squared distance between lines (p1, xi1) and (p2, xi2), broadcast over leading axes.

    Skew pairs use det^2[xi1, xi2, p2 - p1] / |xi1 x xi2|^2; the denominator equals
    1 - (xi1 . xi2)^2 for unit directions but keeps its relative precision near parallel.
    Pairs with |xi1 . xi2| >= 1 - parallel_threshold get the squared distance of p2
    from the first line.
    """
    if parallel_threshold is None:
        parallel_threshold = settings.geometry.parallel_threshold
    w = p2 - p1
    cos = np.sum(xi1 * xi2, axis=-1)
    n = np.cross(xi1, xi2)
    nn = np.sum(n * n, axis=-1)
    det = np.sum(n * w, axis=-1)
    parallel = np.abs(cos) >= 1 - parallel_threshold
    safe_nn = np.where(parallel, 1, nn)
    skew = det * det / safe_nn
    w_perp = w - np.sum(w * xi1, axis=-1)[..., None] * xi1
    par = np.sum(w_perp * w_perp, axis=-1)
    return np.where(parallel, par, skew)


def pairwise_distance_sq(
    points: np.ndarray, directions: np.ndarray, parallel_threshold: float | None = None
) -> np.ndarray:
    """Symmetric matrix of squared distances for lines stacked as (n, 3) arrays."""
    full = pair_distance_sq(
        points[:, None, :], directions[:, None, :], points[None, :, :], directions[None, :, :], parallel_threshold
    )
    upper = np.triu(full, 1)
    return upper + upper.T


def line_distance_sq(u: Line, v: Line) -> float:
    """Squared distance between two lines, exactly symmetric in its arguments.

    Examples:
        >>> line_distance_sq(TangentLine((1, 0, 0), (0, 0, 1)), TangentLine((0, 1, 0), (1, 0, 0)))
        1.0
    """
    if v.sort_key() < u.sort_key():
        u, v = v, u
    p1, xi1 = _point_direction(u)
    p2, xi2 = _point_direction(v)
    return float(pair_distance_sq(p1, xi1, p2, xi2))


def line_distance(u: Line, v: Line) -> float:
    return float(np.sqrt(line_distance_sq(u, v)))


def config_norm_distance(u: TangentLine, v: TangentLine) -> float:
    """|x' - x''| + min(|xi' - xi''|, |xi' + xi''|), the norm on unoriented tangent lines."""
    dx = float(np.linalg.norm(u.x - v.x))
    return dx + float(min(np.linalg.norm(u.xi - v.xi), np.linalg.norm(u.xi + v.xi)))


def rotate_line(rotation: Rotation, line: TangentLine) -> TangentLine:
    """Rotate touch point and direction, then re-canonicalize."""
    return TangentLine.from_arrays(rotation.apply(line.x), rotation.apply(line.xi))


def transform_line(matrix: np.ndarray, line: TangentLine) -> TangentLine:
    """Apply any orthogonal map (proper or improper) to a tangent line."""
    matrix = np.asarray(matrix, dtype=float)
    return TangentLine.from_arrays(matrix @ line.x, matrix @ line.xi)
