"""Exact first- and second-order jets by truncated power-series arithmetic.

Every rotation is expanded as I + t theta K + t^2 theta^2 K^2 / 2, the
composite rotation to second order, and the squared distance
det^2 / |xi' x xi''|^2 is divided as a series. The result carries no
step-size error, unlike finite differences.
"""

import itertools
import logging

import numpy as np

from cylcrit.canon import O6_PAIRS, LineConfiguration
from cylcrit.geom import skew_matrix
from cylcrit.settings import settings

from .models import JetSource, JetTable, Pair
from .perturbation import RotationChart, octahedral_model

logger = logging.getLogger(__name__)


def _rotation_series(chart: RotationChart, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    theta = chart.angles(x)
    k = skew_matrix(chart.axes)
    ka, kb, kc = k[:, 0], k[:, 1], k[:, 2]
    ta, tb, tc = (theta[..., r, None, None] for r in range(3))
    first = ta * ka + tb * kb + tc * kc
    second = (
        0.5 * (ta**2 * (ka @ ka) + tb**2 * (kb @ kb) + tc**2 * (kc @ kc))
        + ta * tb * (ka @ kb)
        + ta * tc * (ka @ kc)
        + tb * tc * (kb @ kc)
    )
    return first, second


def _dot(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.sum(u * v, axis=-1)


def series_coefficients(
    chart: RotationChart,
    points: np.ndarray,
    directions: np.ndarray,
    x: np.ndarray,
    pair_index: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Coefficients (f0, f1, f2) of t^0, t^1, t^2 of the squared distances along t -> x t.

    Args:
        chart: Deformation model
        points: Base touch points, shape (n, 3)
        directions: Base directions, shape (n, 3)
        x: Chart coordinates, shape (..., dimension)
        pair_index: Pairs of line indices, shape (P, 2), all non-parallel at the base

    Returns:
        Three arrays of shape (..., P)

    Raises:
        ValueError: If a pair is parallel at the base configuration
    """
    first, second = _rotation_series(chart, np.asarray(x, dtype=float))
    p = [points, np.einsum("...nij,nj->...ni", first, points), np.einsum("...nij,nj->...ni", second, points)]
    d = [
        directions,
        np.einsum("...nij,nj->...ni", first, directions),
        np.einsum("...nij,nj->...ni", second, directions),
    ]
    i, j = pair_index[:, 0], pair_index[:, 1]
    xi1 = [s[..., i, :] for s in d]
    xi2 = [s[..., j, :] for s in d]
    w = [q[..., j, :] - q[..., i, :] for q in p]

    n0 = np.cross(xi1[0], xi2[0])
    n1 = np.cross(xi1[1], xi2[0]) + np.cross(xi1[0], xi2[1])
    n2 = np.cross(xi1[2], xi2[0]) + np.cross(xi1[1], xi2[1]) + np.cross(xi1[0], xi2[2])

    d0 = _dot(n0, w[0])
    d1 = _dot(n1, w[0]) + _dot(n0, w[1])
    d2 = _dot(n2, w[0]) + _dot(n1, w[1]) + _dot(n0, w[2])
    num0, num1, num2 = d0 * d0, 2 * d0 * d1, d1 * d1 + 2 * d0 * d2

    g0 = _dot(n0, n0)
    if np.any(g0 < 1e-20):
        raise ValueError("series jets need pairs that are not parallel at the base configuration")
    g1 = 2 * _dot(n0, n1)
    g2 = _dot(n1, n1) + 2 * _dot(n0, n2)

    f0 = num0 / g0
    f1 = (num1 - f0 * g1) / g0
    f2 = (num2 - f0 * g2 - f1 * g1) / g0
    return np.broadcast_to(f0, f1.shape), f1, f2


def pair_indices(cfg: LineConfiguration, pairs: tuple[Pair, ...]) -> np.ndarray:
    return np.array([(cfg.index(u), cfg.index(v)) for u, v in pairs], dtype=int).reshape(-1, 2)


def non_parallel_pairs(cfg: LineConfiguration) -> tuple[Pair, ...]:
    """Pairs with smooth squared distances at the base configuration.

    O6 uses its fixed order of the 12 pairs. Other configurations list every pair i < j
    that is neither declared parallel nor parallel within the geometry threshold.
    """
    if cfg.is_octahedral:
        return O6_PAIRS
    declared = set(cfg.parallel_pairs)
    limit = 1 - settings.geometry.parallel_threshold
    dirs = cfg.directions()
    return tuple(
        (cfg.labels[i], cfg.labels[j])
        for i, j in itertools.combinations(range(len(cfg)), 2)
        if (i, j) not in declared and abs(float(dirs[i] @ dirs[j])) < limit
    )


def series_jets(
    cfg: LineConfiguration,
    x: np.ndarray,
    chart: RotationChart | None = None,
    pairs: tuple[Pair, ...] | None = None,
) -> JetTable:
    """Exact order-1 and order-2 coefficients along the path t -> x t."""
    chart = chart or octahedral_model()
    pairs = pairs if pairs is not None else non_parallel_pairs(cfg)
    _, f1, f2 = series_coefficients(chart, cfg.points(), cfg.directions(), x, pair_indices(cfg, pairs))
    return JetTable(
        pairs=pairs,
        order1={pair: float(v) for pair, v in zip(pairs, f1, strict=True)},
        order2={pair: float(v) for pair, v in zip(pairs, f2, strict=True)},
        source=JetSource.SERIES,
    )


def polarized_parts(
    cfg: LineConfiguration, chart: RotationChart, pairs: tuple[Pair, ...]
) -> tuple[np.ndarray, np.ndarray]:
    """Linear parts (P, dim) and symmetric quadratic parts (P, dim, dim) of the squared distances.

    The quadratic part of pair u satisfies x^T Q_u x = [d^2_u]_2 along t -> x t,
    recovered from the series by polarization.
    """
    dim = chart.dimension
    index = pair_indices(cfg, pairs)
    points, dirs = cfg.points(), cfg.directions()
    eye = np.eye(dim)
    _, f1, diag = series_coefficients(chart, points, dirs, eye, index)
    quad = np.zeros((len(pairs), dim, dim))
    quad[:, np.arange(dim), np.arange(dim)] = diag.T
    combos = list(itertools.combinations(range(dim), 2))
    if combos:
        rows, cols = np.array(combos).T
        _, _, mixed = series_coefficients(chart, points, dirs, eye[rows] + eye[cols], index)
        off = 0.5 * (mixed - diag[rows] - diag[cols])
        quad[:, rows, cols] = off.T
        quad[:, cols, rows] = off.T
    logger.debug(f"Polarized {len(pairs)} pair jets in {dim} coordinates")
    return f1.T.copy(), quad
