"""Finite-difference jets, the numerical cross-check of the closed forms."""

import logging
from collections.abc import Callable

import numpy as np

from cylcrit.canon import LineConfiguration
from cylcrit.geom import pair_distance_sq
from cylcrit.settings import settings

from .models import JetSource, JetTable, Pair, PerturbationParams
from .perturbation import RotationChart, octahedral_model
from .series import non_parallel_pairs, pair_indices

logger = logging.getLogger(__name__)

Path = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


def _pair_values(path: Path, t: np.ndarray, index: np.ndarray) -> np.ndarray:
    points, dirs = path(t)
    i, j = index[:, 0], index[:, 1]
    return pair_distance_sq(points[..., i, :], dirs[..., i, :], points[..., j, :], dirs[..., j, :])


def path_jets(
    path: Path,
    index: np.ndarray,
    order: int,
    first_step: float | None = None,
    second_step: float | None = None,
    dtype: type[np.floating] | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray | None, np.ndarray | None]:
    """Taylor coefficients of squared pair distances along a path t -> (points, directions).

    The path receives a 1-d array of parameters and returns arrays of shape
    (len(t), n, 3). Order 1 uses the central difference at h and 2h; order 2
    uses the 5-point second difference at h and 2h and one Richardson step.

    Returns:
        (order1, error1, order2, error2), the order-2 entries None when order == 1
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    h1 = first_step or settings.jets.first_order_step
    h2 = second_step or settings.jets.second_order_step
    dtype = dtype or settings.dtype

    ts = np.array([-2 * h1, -h1, h1, 2 * h1], dtype=dtype)
    f = _pair_values(path, ts, index)
    d_h = (f[2] - f[1]) / (2 * ts[2])
    d_2h = (f[3] - f[0]) / (2 * ts[3])
    order1 = d_h
    error1 = np.abs(d_2h - d_h) / 3
    if order == 1:
        return order1.astype(float), error1.astype(float), None, None

    h = dtype(h2)
    ts = np.array([-4 * h, -2 * h, -h, 0, h, 2 * h, 4 * h], dtype=dtype)
    f = _pair_values(path, ts, index)
    fm4, fm2, fm1, f0, fp1, fp2, fp4 = f

    def stencil(am2, am1, a0, ap1, ap2, step):
        return (-ap2 + 16 * ap1 - 30 * a0 + 16 * am1 - am2) / (12 * step * step)

    s_h = stencil(fm2, fm1, f0, fp1, fp2, h)
    s_2h = stencil(fm4, fm2, f0, fp2, fp4, 2 * h)
    richardson = (16 * s_h - s_2h) / 15
    order2 = richardson / 2
    error2 = np.abs(richardson - s_h) / 2
    return order1.astype(float), error1.astype(float), order2.astype(float), error2.astype(float)


def finite_difference_jets(
    cfg: LineConfiguration,
    p: PerturbationParams | np.ndarray,
    order: int = 1,
    chart: RotationChart | None = None,
    pairs: tuple[Pair, ...] | None = None,
    first_step: float | None = None,
    second_step: float | None = None,
    dtype: type[np.floating] | None = None,
) -> JetTable:
    """Jet table of the non-parallel pairs along t -> p t by finite differences.

    Entries whose truncation estimate exceeds the configured threshold are flagged.
    """
    chart = chart or octahedral_model()
    pairs = pairs if pairs is not None else non_parallel_pairs(cfg)
    dtype = dtype or settings.dtype
    x = p.vector() if isinstance(p, PerturbationParams) else np.asarray(p, dtype=float)
    x = x.astype(dtype)
    points, dirs = cfg.points(dtype), cfg.directions(dtype)

    def path(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return chart.deform_arrays(points, dirs, t[:, None] * x)

    o1, e1, o2, e2 = path_jets(path, pair_indices(cfg, pairs), order, first_step, second_step, dtype)
    threshold = settings.jets.flag_threshold
    worst = e1 if e2 is None else np.maximum(e1, e2)
    flagged = tuple(pair for pair, err in zip(pairs, worst, strict=True) if err > threshold)
    if flagged:
        logger.warning(f"{len(flagged)} finite-difference entries exceed the truncation threshold {threshold}")

    def as_dict(values: np.ndarray | None) -> dict[Pair, float] | None:
        if values is None:
            return None
        return {pair: float(v) for pair, v in zip(pairs, values, strict=True)}

    return JetTable(
        pairs=pairs,
        order1=as_dict(o1) or {},
        order2=as_dict(o2),
        error1=as_dict(e1),
        error2=as_dict(e2),
        source=JetSource.FINITE_DIFFERENCE,
        flagged=flagged,
    )
