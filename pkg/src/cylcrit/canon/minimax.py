"""The minimax distance functions D and D~."""

from dataclasses import dataclass

import numpy as np

from cylcrit.geom import pairwise_distance_sq
from cylcrit.settings import settings

from .models import ConfigurationError, LineConfiguration


@dataclass(frozen=True)
class MinDistance:
    """Minimum pairwise distance and every pair attaining it within the tie tolerance."""

    value: float
    pairs: tuple[tuple[int, int], ...]


def pairwise_distance_matrix(cfg: LineConfiguration) -> np.ndarray:
    """Symmetric (n, n) matrix of line distances."""
    return np.sqrt(pairwise_distance_sq(cfg.points(), cfg.directions()))


def min_distance_arrays(points: np.ndarray, directions: np.ndarray, mask: np.ndarray) -> float:
    """Minimum of the distances selected by an (n, n) upper-triangular mask."""
    d2 = pairwise_distance_sq(points, directions)
    return float(np.sqrt(d2[mask].min()))


def min_distance(
    cfg: LineConfiguration, skip_parallel: bool = False, tie_tolerance: float | None = None
) -> MinDistance:
    """D (all pairs) or, with skip_parallel, D~ (declared parallel pairs excluded).

    Raises:
        ConfigurationError: If fewer than two lines remain to compare
    """
    if len(cfg) < 2:
        raise ConfigurationError("min_distance needs at least 2 lines")
    if tie_tolerance is None:
        tie_tolerance = settings.geometry.tie_tolerance
    mask = cfg.pair_mask(skip_parallel)
    if not mask.any():
        raise ConfigurationError("no pairs left after excluding parallel pairs")
    d = pairwise_distance_matrix(cfg)
    value = float(d[mask].min())
    rows, cols = np.nonzero(mask & (d <= value + tie_tolerance))
    pairs = tuple((int(i), int(j)) for i, j in zip(rows, cols, strict=True))
    return MinDistance(value=value, pairs=pairs)
