"""Rotation charts: deformations of a configuration by three rotations per line."""

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from cylcrit.canon import RHO, ConfigurationError, LineConfiguration
from cylcrit.geom import rotation_matrices

from .models import FREE_VARIABLES, ROLES, PerturbationParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RotationChart:
    """Deformation model l_k(x) = R_{a-axis}^{x_a} R_{b-axis}^{x_b} R_{c-axis}^{x_c} l_k.

    ``axes[k, r]`` is the axis of role r (a, b, c) for line k. Rotations are
    applied right to left, the c-rotation first. ``free_slots`` lists the
    flattened (line, role) slots that carry a free coordinate; the others are
    pinned to zero.
    """

    name: str
    axes: np.ndarray
    free_slots: tuple[int, ...]
    var_names: tuple[str, ...]

    def __post_init__(self) -> None:
        axes = np.array(self.axes, dtype=float)
        axes.setflags(write=False)
        object.__setattr__(self, "axes", axes)
        if len(self.var_names) != len(self.free_slots):
            raise ValueError("one variable name per free slot")

    @property
    def n_lines(self) -> int:
        return self.axes.shape[0]

    @property
    def dimension(self) -> int:
        return len(self.free_slots)

    def embedding(self) -> np.ndarray:
        """The (3 n_lines, dimension) matrix placing free coordinates into their slots."""
        emb = np.zeros((3 * self.n_lines, self.dimension))
        emb[list(self.free_slots), np.arange(self.dimension)] = 1.0
        return emb

    def angles(self, x: np.ndarray) -> np.ndarray:
        """Rotation angles of shape (..., n_lines, 3) for coordinates of shape (..., dimension)."""
        x = np.asarray(x)
        full = np.zeros((*x.shape[:-1], 3 * self.n_lines), dtype=x.dtype)
        full[..., list(self.free_slots)] = x
        return full.reshape(*x.shape[:-1], self.n_lines, 3)

    def rotations(self, x: np.ndarray, t: float = 1.0) -> np.ndarray:
        """Composite rotation matrices of shape (..., n_lines, 3, 3)."""
        x = np.asarray(x)
        theta = self.angles(x) * x.dtype.type(t)
        axes = self.axes.astype(x.dtype)
        ra = rotation_matrices(axes[:, 0], theta[..., 0])
        rb = rotation_matrices(axes[:, 1], theta[..., 1])
        rc = rotation_matrices(axes[:, 2], theta[..., 2])
        return ra @ rb @ rc

    def deform_arrays(
        self, points: np.ndarray, directions: np.ndarray, x: np.ndarray, t: float = 1.0
    ) -> tuple[np.ndarray, np.ndarray]:
        """Deformed touch points and directions, batched over the leading axes of x."""
        m = self.rotations(x, t)
        dtype = m.dtype
        new_points = np.einsum("...nij,nj->...ni", m, points.astype(dtype))
        new_dirs = np.einsum("...nij,nj->...ni", m, directions.astype(dtype))
        return new_points, new_dirs

    def deform(self, cfg: LineConfiguration, x: np.ndarray, t: float = 1.0) -> LineConfiguration:
        """The configuration deformed along coordinates x by the amount t."""
        if len(cfg) != self.n_lines:
            raise ConfigurationError(f"chart {self.name} is for {self.n_lines} lines, got {len(cfg)}")
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise ValueError(f"chart {self.name} expects {self.dimension} coordinates, got shape {x.shape}")
        points, dirs = self.deform_arrays(cfg.points(), cfg.directions(), x, t)
        return LineConfiguration.from_arrays(points, dirs, cfg.labels, cfg.parallel_pairs)

    def slot_patterns(self) -> list[np.ndarray]:
        """Unit directions moving every line by the same role, with uniform or alternating signs."""
        patterns = []
        for role in range(3):
            for alternating in (False, True):
                full = np.zeros((self.n_lines, 3))
                signs = (-1.0) ** np.arange(self.n_lines) if alternating else np.ones(self.n_lines)
                full[:, role] = signs
                x = full.reshape(-1)[list(self.free_slots)]
                norm = np.linalg.norm(x)
                if norm > 0:
                    patterns.append(x / norm)
        return patterns

    def role_mixtures(self) -> list[np.ndarray]:
        """Unit directions combining the slot patterns of two different roles, with both relative signs."""
        alternating = (-1.0) ** np.arange(self.n_lines)
        patterns = []
        for (first, second), alt_first, alt_second, sign in itertools.product(
            itertools.combinations(range(3), 2), (False, True), (False, True), (1.0, -1.0)
        ):
            full = np.zeros((self.n_lines, 3))
            full[:, first] = alternating if alt_first else 1.0
            full[:, second] = sign * (alternating if alt_second else 1.0)
            x = full.reshape(-1)[list(self.free_slots)]
            norm = np.linalg.norm(x)
            if norm > 0:
                patterns.append(x / norm)
        return patterns


def octahedral_model() -> RotationChart:
    """The 15-parameter model of O6: for l_j^eps the axes are RHO^2 e_j, RHO e_j, e_j, with l1+ pinned."""
    axes = np.zeros((6, 3, 3))
    for k in range(6):
        e = np.eye(3)[k % 3]
        axes[k] = [RHO @ RHO @ e, RHO @ e, e]
    return RotationChart(name="octahedral", axes=axes, free_slots=tuple(range(3, 18)), var_names=FREE_VARIABLES)


def local_frame_chart(cfg: LineConfiguration, gauge_fixed: bool = False) -> RotationChart:
    """Generic chart rotating each line about its own frame (xi, x x xi, x).

    The b-rotation tilts the touch point towards the line direction, the
    c-rotation spins the line about its touch point. With ``gauge_fixed`` the
    first line is pinned, which removes the global rotations.
    """
    axes = np.zeros((len(cfg), 3, 3))
    for k, line in enumerate(cfg.lines):
        axes[k] = [line.xi, np.cross(line.x, line.xi), line.x]
    start = 3 if gauge_fixed else 0
    slots = tuple(range(start, 3 * len(cfg)))
    names = tuple(f"{ROLES[s % 3]}[{cfg.labels[s // 3]}]" for s in slots)
    logger.debug(f"Local frame chart with {len(slots)} coordinates (gauge_fixed={gauge_fixed})")
    return RotationChart(name="local_frame", axes=axes, free_slots=slots, var_names=names)


def deform(cfg: LineConfiguration, p: PerturbationParams, t: float) -> LineConfiguration:
    """Deform the canonical O6 by the octahedral model.

    Raises:
        ConfigurationError: If cfg does not carry the O6 labels
    """
    if not cfg.is_octahedral:
        raise ConfigurationError("deform expects the canonical O6 configuration")
    return octahedral_model().deform(cfg, p.vector(), t)
