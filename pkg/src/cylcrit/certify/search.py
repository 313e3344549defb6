"""Derivative-free search for unlocking deformations."""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from cylcrit.canon import LineConfiguration
from cylcrit.geom import pair_distance_sq
from cylcrit.jets import RotationChart, local_frame_chart, octahedral_model
from cylcrit.settings import settings

logger = logging.getLogger(__name__)

_JACOBIAN_STEP = 1e-7


def pair_distances(
    chart: RotationChart,
    cfg: LineConfiguration,
    x: np.ndarray,
    skip_parallel: bool,
) -> np.ndarray:
    """Distances of every counted pair after deforming by each row of x, shape (..., pairs)."""
    rows, cols = np.nonzero(cfg.pair_mask(skip_parallel))
    points, dirs = chart.deform_arrays(cfg.points(), cfg.directions(), np.asarray(x, dtype=float))
    d2 = pair_distance_sq(points[..., rows, :], dirs[..., rows, :], points[..., cols, :], dirs[..., cols, :])
    return np.sqrt(d2)


def batched_min_distance(
    chart: RotationChart,
    cfg: LineConfiguration,
    x: np.ndarray,
    skip_parallel: bool,
) -> np.ndarray:
    """min distance of the configuration deformed by every row of x (shape (..., dimension))."""
    return pair_distances(chart, cfg, x, skip_parallel).min(axis=-1)


@dataclass(frozen=True, eq=False)
class UnlockResult:
    """Best min-distance gain over the base configuration, per start and overall."""

    best_gain: float
    best_direction: np.ndarray
    best_t: float
    base_value: float
    gains: np.ndarray

    def to_dict(self) -> dict:
        return {
            "best_min_distance_gain": self.best_gain,
            "best_direction": self.best_direction.tolist(),
            "best_t": self.best_t,
            "base_value": self.base_value,
            "starts": len(self.gains),
        }


def default_chart(cfg: LineConfiguration) -> RotationChart:
    """The octahedral model for O6, the gauge-fixed local frame chart otherwise."""
    return octahedral_model() if cfg.is_octahedral else local_frame_chart(cfg, gauge_fixed=True)


def _starts(
    chart: RotationChart, seeds: int, rng: np.random.Generator, initial_directions: np.ndarray | None
) -> np.ndarray:
    if initial_directions is not None:
        directions = np.atleast_2d(np.asarray(initial_directions, dtype=float))
        norms = np.linalg.norm(directions, axis=1)
        if directions.shape[1] != chart.dimension:
            raise ValueError(f"directions must have {chart.dimension} coordinates")
        if np.any(norms == 0):
            raise ValueError("zero direction is not a deformation")
        return directions / norms[:, None]
    random = rng.standard_normal((seeds, chart.dimension))
    random /= np.linalg.norm(random, axis=1, keepdims=True)
    return np.vstack([random, *chart.slot_patterns(), *chart.role_mixtures()])


def _polish(
    chart: RotationChart,
    cfg: LineConfiguration,
    x0: np.ndarray,
    t_max: float,
    skip_parallel: bool,
    maxiter: int,
) -> np.ndarray:
    """Maximize the min distance from x0 inside the ball |x| <= t_max through its epigraph form.

    The variables are (x, s); SLSQP maximizes s subject to every pair
    distance staying above s.
    """
    n = len(x0)
    z0 = np.append(x0, batched_min_distance(chart, cfg, x0, skip_parallel))
    objective_grad = np.zeros(n + 1)
    objective_grad[-1] = -1.0
    offsets = _JACOBIAN_STEP * np.eye(n)

    def epigraph(z: np.ndarray) -> np.ndarray:
        return pair_distances(chart, cfg, z[:-1], skip_parallel) - z[-1]

    def epigraph_jac(z: np.ndarray) -> np.ndarray:
        shifted = pair_distances(chart, cfg, np.vstack([z[:-1] + offsets, z[:-1] - offsets]), skip_parallel)
        jac = np.empty((shifted.shape[1], n + 1))
        jac[:, :-1] = ((shifted[:n] - shifted[n:]) / (2 * _JACOBIAN_STEP)).T
        jac[:, -1] = -1.0
        return jac

    def ball(z: np.ndarray) -> np.ndarray:
        return np.array([t_max**2 - z[:-1] @ z[:-1]])

    def ball_jac(z: np.ndarray) -> np.ndarray:
        return np.append(-2 * z[:-1], 0.0)[None, :]

    result = minimize(
        lambda z: -z[-1],
        z0,
        jac=lambda z: objective_grad,
        method="SLSQP",
        constraints=[
            {"type": "ineq", "fun": epigraph, "jac": epigraph_jac},
            {"type": "ineq", "fun": ball, "jac": ball_jac},
        ],
        options={"ftol": 1e-14, "maxiter": maxiter},
    )
    x = result.x[:-1]
    norm = np.linalg.norm(x)
    if not np.isfinite(norm):
        return x0
    return x * (t_max / norm) if norm > t_max else x


def unlock_search(
    cfg: LineConfiguration,
    chart: RotationChart | None = None,
    seeds: int | None = None,
    iterations: int | None = None,
    t_max: float | None = None,
    t_min: float | None = None,
    contraction: float | None = None,
    skip_parallel: bool | None = None,
    seed: int | None = None,
    initial_directions: np.ndarray | None = None,
    polish_iterations: int | None = None,
) -> UnlockResult:
    """Maximize the min distance over deformations with t_min <= |x| <= t_max.

    Every start runs a compass search along a fresh random orthonormal basis
    each iteration: all 2n moves +-s q_i are polled at once, the best
    improving one is taken, and the step contracts when none improves. The
    end points are then polished by SLSQP on the epigraph of the minimum,
    which follows the ridges where several pair distances tie. Starts are
    random unit directions, the chart's slot patterns and their two-role
    mixtures, scaled to t_max.
    """
    search = settings.search
    chart = chart or default_chart(cfg)
    seeds = seeds or search.seeds
    iterations = iterations or search.iterations
    t_max = t_max or (search.t_max if cfg.is_octahedral else search.chart_t_max)
    t_min = t_min or search.t_min
    contraction = contraction or search.contraction
    polish_iterations = polish_iterations or search.polish_iterations
    skip_parallel = cfg.is_octahedral if skip_parallel is None else skip_parallel
    rng = np.random.default_rng(settings.seed if seed is None else seed)

    base = float(batched_min_distance(chart, cfg, np.zeros(chart.dimension), skip_parallel))
    x = _starts(chart, seeds, rng, initial_directions) * t_max
    value = batched_min_distance(chart, cfg, x, skip_parallel)
    step = np.full(len(x), t_max / 2)
    rows = np.arange(len(x))

    for iteration in range(iterations):
        basis, _ = np.linalg.qr(rng.standard_normal((chart.dimension, chart.dimension)))
        moves = np.vstack([basis.T, -basis.T])
        trial = x[:, None, :] + step[:, None, None] * moves[None, :, :]
        norms = np.linalg.norm(trial, axis=-1, keepdims=True)
        trial = np.where(norms > t_max, trial * (t_max / norms), trial)
        trial_value = batched_min_distance(chart, cfg, trial, skip_parallel)
        trial_value = np.where(norms[..., 0] < t_min, -np.inf, trial_value)
        best_move = trial_value.argmax(axis=1)
        improved = trial_value[rows, best_move] > value
        x[improved] = trial[rows, best_move][improved]
        value[improved] = trial_value[rows, best_move][improved]
        step[~improved] *= contraction
        if np.all(step < t_min * 1e-3):
            logger.debug(f"Steps collapsed after {iteration + 1} iterations")
            break

    polished = 0
    for k in range(len(x)):
        candidate = _polish(chart, cfg, x[k], t_max, skip_parallel, polish_iterations)
        if np.linalg.norm(candidate) < t_min:
            continue
        candidate_value = float(batched_min_distance(chart, cfg, candidate, skip_parallel))
        if candidate_value > value[k]:
            x[k], value[k] = candidate, candidate_value
            polished += 1
    logger.debug(f"Polish improved {polished} of {len(x)} end points")

    gains = value - base
    best = int(np.argmax(gains))
    best_t = float(np.linalg.norm(x[best]))
    logger.info(f"Unlock search over {len(x)} starts: best gain {gains[best]:.3e} at t={best_t:.3e}")
    return UnlockResult(
        best_gain=float(gains[best]),
        best_direction=x[best] / best_t,
        best_t=best_t,
        base_value=base,
        gains=gains,
    )
