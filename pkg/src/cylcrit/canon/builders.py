"""Builders for the canonical configurations and the radius correspondence."""

import logging

import numpy as np

from cylcrit.geom import TangentLine

from .models import O6_LABELS, O6_PARALLEL_PAIRS, ConfigurationError, LineConfiguration

logger = logging.getLogger(__name__)

# Cyclic permutation e1 -> e2 -> e3 -> e1 of the coordinate axes.
RHO = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
# Rotation by pi about the first axis.
HALF_TURN_X = np.diag([1.0, -1.0, -1.0])
CENTRAL_REFLECTION = -np.eye(3)


# The 12 non-parallel pairs of O6 in three groups of four, as (label, label).
O6_PAIR_GROUPS: tuple[tuple[tuple[str, str], ...], ...] = (
    (("l1+", "l2-"), ("l1+", "l2+"), ("l1-", "l2-"), ("l1-", "l2+")),
    (("l1+", "l3-"), ("l1+", "l3+"), ("l1-", "l3-"), ("l1-", "l3+")),
    (("l3-", "l2-"), ("l3-", "l2+"), ("l3+", "l2-"), ("l3+", "l2+")),
)
O6_PAIRS: tuple[tuple[str, str], ...] = tuple(pair for group in O6_PAIR_GROUPS for pair in group)

C6_LABELS: tuple[str, ...] = tuple(f"c{k}" for k in range(6))


class RadiusDomainError(ConfigurationError):
    """Raised when a distance or radius lies outside the domain of the radius map."""

    pass


def build_O6() -> LineConfiguration:
    """The octahedral configuration.

    l1+ touches the sphere at e1 in direction e3, l2+ and l3+ are its images
    under RHO and RHO^2, and lj- is the central reflection of lj+.
    """
    base_x = np.array([1.0, 0.0, 0.0])
    base_xi = np.array([0.0, 0.0, 1.0])
    plus = []
    for power in range(3):
        g = np.linalg.matrix_power(RHO, power)
        plus.append(TangentLine.from_arrays(g @ base_x, g @ base_xi))
    minus = [TangentLine.from_arrays(CENTRAL_REFLECTION @ line.x, CENTRAL_REFLECTION @ line.xi) for line in plus]
    cfg = LineConfiguration(lines=(*plus, *minus), labels=O6_LABELS, parallel_pairs=O6_PARALLEL_PAIRS)
    if not cfg.parallel_pairs_hold():
        raise ConfigurationError("octahedral parallel pairs are not parallel")
    return cfg


def build_C6() -> LineConfiguration:
    """Six vertical lines touching the equator at longitudes k * 60 degrees.

    Opposite lines are declared as the parallel pairs.
    """
    lines = []
    for k in range(6):
        angle = k * np.pi / 3
        lines.append(TangentLine.from_arrays(np.array([np.cos(angle), np.sin(angle), 0.0]), np.array([0.0, 0.0, 1.0])))
    return LineConfiguration(lines=tuple(lines), labels=C6_LABELS, parallel_pairs=((0, 3), (1, 4), (2, 5)))


def coordinate_rotation(axis: int, angle: float) -> np.ndarray:
    """Matrix of the counterclockwise rotation about coordinate axis 0, 1 or 2."""
    if axis not in (0, 1, 2):
        raise ConfigurationError(f"axis must be 0, 1 or 2, got {axis}")
    c, s = np.cos(angle), np.sin(angle)
    i, j = [k for k in range(3) if k != axis]
    m = np.eye(3)
    m[i, i], m[i, j], m[j, i], m[j, j] = c, -s, s, c
    return m


def alternative_O6(axis: int = 2) -> LineConfiguration:
    """O6 turned by a quarter turn about a coordinate axis."""
    return build_O6().transformed(coordinate_rotation(axis, np.pi / 2))


BUILDERS = {
    "o6": build_O6,
    "c6": build_C6,
}


def build_named(name: str) -> LineConfiguration:
    """Build a canonical configuration by its short name."""
    try:
        builder = BUILDERS[name.lower()]
    except KeyError as e:
        raise ConfigurationError(f"unknown configuration {name!r} (known: {', '.join(BUILDERS)})") from e
    logger.debug(f"Building canonical configuration {name}")
    return builder()


def radius_from_distance(d: float) -> float:
    """Radius r = d / (2 - d) of the equal cylinders matching tangent lines at mutual distance d.

    Raises:
        RadiusDomainError: If d is outside [0, 2)
    """
    if not 0.0 <= d < 2.0:
        raise RadiusDomainError(f"distance must lie in [0, 2), got {d}")
    return d / (2.0 - d)


def distance_from_radius(r: float) -> float:
    """Inverse of radius_from_distance: d = 2r / (1 + r).

    Raises:
        RadiusDomainError: If r is negative
    """
    if r < 0.0:
        raise RadiusDomainError(f"radius must be nonnegative, got {r}")
    return 2.0 * r / (1.0 + r)
