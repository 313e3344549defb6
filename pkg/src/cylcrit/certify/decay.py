"""Decay exponents of the min distance along straight deformation paths."""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from cylcrit.canon import LineConfiguration, build_O6
from cylcrit.jets import RotationChart, octahedral_model
from cylcrit.settings import settings

from .families import o6_jet_family
from .linear import kernel_subspace
from .search import batched_min_distance

logger = logging.getLogger(__name__)


class ScaleGridError(ValueError):
    """Raised when the t-grid is too short for an exponent fit."""

    pass


@dataclass(frozen=True, eq=False)
class DecayProbe:
    """Decays D(0) - D(t l) of K directions l over a t-grid, with per-direction log-log slopes.

    ``exponents`` is nan for directions that do not decay at every scale.
    c_d and c_u bound decay / t^2 over the whole probe.
    """

    directions: np.ndarray
    t_grid: np.ndarray
    decays: np.ndarray
    exponents: np.ndarray

    @property
    def c_d(self) -> float:
        return float((self.decays / self.t_grid**2).min())

    @property
    def c_u(self) -> float:
        return float((self.decays / self.t_grid**2).max())

    def summary(self) -> dict:
        finite = self.exponents[np.isfinite(self.exponents)]
        return {
            "directions": len(self.exponents),
            "fitted": int(finite.size),
            "exponent_min": float(finite.min()) if finite.size else None,
            "exponent_max": float(finite.max()) if finite.size else None,
            "exponent_median": float(np.median(finite)) if finite.size else None,
            "c_d": self.c_d,
            "c_u": self.c_u,
        }


def default_t_grid() -> np.ndarray:
    probe = settings.probe
    return np.geomspace(probe.t_min, probe.t_max, probe.scales)


def decay_probe(
    cfg: LineConfiguration,
    chart: RotationChart,
    directions: np.ndarray,
    t_grid: np.ndarray | None = None,
    skip_parallel: bool = False,
) -> DecayProbe:
    """Fit the exponent of D(0) - D(t l) ~ c t^delta for every direction l.

    Raises:
        ScaleGridError: If the grid has fewer than three scales
    """
    t_grid = default_t_grid() if t_grid is None else np.asarray(t_grid, dtype=float)
    if t_grid.size < 3:
        raise ScaleGridError("need ≥ 3 scales")
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    base = float(batched_min_distance(chart, cfg, np.zeros(chart.dimension), skip_parallel))
    x = directions[:, None, :] * t_grid[None, :, None]
    decays = base - batched_min_distance(chart, cfg, x, skip_parallel)

    log_t = np.log(t_grid)
    exponents = np.full(len(directions), np.nan)
    for k, row in enumerate(decays):
        if np.all(row > 0):
            exponents[k] = np.polyfit(log_t, np.log(row), 1)[0]
    logger.debug(f"Decay probe: {np.isfinite(exponents).sum()} of {len(directions)} directions decay")
    return DecayProbe(directions=directions, t_grid=t_grid, decays=decays, exponents=exponents)


def random_directions(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal((count, dim))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def o6_decay_probe(
    count: int | None = None, seed: int | None = None, t_grid: np.ndarray | None = None
) -> tuple[DecayProbe, DecayProbe]:
    """Probes of D~(O6) along random unit directions in E and with a component off E."""
    count = count or settings.probe.directions
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    basis = kernel_subspace(o6_jet_family())
    on_e = random_directions(basis.shape[1], count, rng) @ basis.T
    off_e = random_directions(basis.shape[0], count, rng)
    # keep a clear component outside E
    off_norm = np.linalg.norm(off_e - (off_e @ basis) @ basis.T, axis=1)
    while np.any(off_norm < 0.1):
        redraw = off_norm < 0.1
        off_e[redraw] = random_directions(basis.shape[0], int(redraw.sum()), rng)
        off_norm = np.linalg.norm(off_e - (off_e @ basis) @ basis.T, axis=1)
    cfg, chart = build_O6(), octahedral_model()
    return (
        decay_probe(cfg, chart, on_e, t_grid, skip_parallel=True),
        decay_probe(cfg, chart, off_e, t_grid, skip_parallel=True),
    )


def write_decay_csv(path: Path, probes: dict[str, DecayProbe]) -> None:
    """One row per (set, direction, t) for external plotting."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["set", "direction", "t", "decay", "exponent"])
        for name, probe in probes.items():
            for k, row in enumerate(probe.decays):
                for t, decay in zip(probe.t_grid, row, strict=True):
                    writer.writerow([name, k, f"{t:.17g}", f"{decay:.17g}", f"{probe.exponents[k]:.17g}"])
