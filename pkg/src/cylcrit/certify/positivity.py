"""Certification of positively defined families of quadratic forms.

A family {Q_a} is positively defined when min over the unit sphere of
max_a Q_a is positive. Since the forms are even it suffices to cover the
faces y_f = +1 of the cube [-1, 1]^k. Each face is subdivided into boxes,
and a box is discharged once some convex blend F = sum_a w_a Q_a satisfies
F(y) >= t |y|^2 on the whole box for a t > 0, checked with the centered
(mean-value) form of F - t |.|^2. Blends let the linear error terms of the
individual forms cancel where the forms cross.
"""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from cylcrit.settings import settings

from .models import PositivityCertificate, PositivityVerdict, WorkLog

logger = logging.getLogger(__name__)

_CHUNK = 1024
_BLEND_RESOLUTION = {2: 64, 3: 16, 4: 8, 5: 6}
_BISECTION_STEPS = 12


def blend_weights(n_forms: int, use_blends: bool = True) -> np.ndarray:
    """Convex weights tried on every cell: the vertices first, then a simplex lattice."""
    vertices = np.eye(n_forms)
    if n_forms == 1 or not use_blends:
        return vertices
    m = _BLEND_RESOLUTION.get(n_forms, 2)
    lattice = []
    for bars in itertools.combinations(range(m + n_forms - 1), n_forms - 1):
        edges = (-1, *bars, m + n_forms - 1)
        counts = [edges[i + 1] - edges[i] - 1 for i in range(n_forms)]
        if max(counts) < m:
            lattice.append(np.array(counts, dtype=float) / m)
    return np.vstack([vertices, *lattice]) if lattice else vertices


def _stack_forms(forms) -> np.ndarray:
    stacked = np.array([np.asarray(f, dtype=float) for f in forms])
    if stacked.ndim != 3 or stacked.shape[1] != stacked.shape[2]:
        raise ValueError("forms must be square matrices of one size")
    if len(stacked) == 0:
        raise ValueError("at least one form is required")
    if not np.allclose(stacked, np.swapaxes(stacked, 1, 2), atol=1e-12, rtol=0):
        raise ValueError("forms must be symmetric")
    return 0.5 * (stacked + np.swapaxes(stacked, 1, 2))


def family_maximum(forms: np.ndarray, x: np.ndarray) -> np.ndarray:
    """max_a x^T Q_a x for points x of shape (..., k)."""
    return np.einsum("...i,aij,...j->...a", x, forms, x).max(axis=-1)


def _local_minimum(forms: np.ndarray, x0: np.ndarray) -> tuple[np.ndarray, float]:
    """Minimize max_a Q_a on the unit sphere from x0 through its epigraph form."""
    k = forms.shape[1]
    x0 = x0 / np.linalg.norm(x0)
    z0 = np.append(x0, family_maximum(forms, x0))
    objective_grad = np.zeros(k + 1)
    objective_grad[-1] = 1.0

    def epigraph(z: np.ndarray) -> np.ndarray:
        x = z[:-1]
        return z[-1] - np.einsum("i,aij,j->a", x, forms, x)

    def epigraph_jac(z: np.ndarray) -> np.ndarray:
        jac = np.empty((len(forms), k + 1))
        jac[:, :-1] = -2 * forms @ z[:-1]
        jac[:, -1] = 1.0
        return jac

    def sphere(z: np.ndarray) -> np.ndarray:
        return np.array([z[:-1] @ z[:-1] - 1.0])

    def sphere_jac(z: np.ndarray) -> np.ndarray:
        return np.append(2 * z[:-1], 0.0)[None, :]

    result = minimize(
        lambda z: z[-1],
        z0,
        jac=lambda z: objective_grad,
        method="SLSQP",
        constraints=[
            {"type": "ineq", "fun": epigraph, "jac": epigraph_jac},
            {"type": "eq", "fun": sphere, "jac": sphere_jac},
        ],
        options={"ftol": 1e-15, "maxiter": 300},
    )
    x = result.x[:-1]
    norm = np.linalg.norm(x)
    if not np.isfinite(norm) or norm == 0:
        return x0, float(family_maximum(forms, x0))
    x = x / norm
    return x, float(family_maximum(forms, x))


def witness_search(forms: np.ndarray, starts: int, rng: np.random.Generator) -> tuple[np.ndarray, float]:
    """Best unit point found by multistart local minimization of max_a Q_a."""
    k = forms.shape[1]
    best_x, best_value = np.eye(k)[0], math.inf
    for _ in range(starts):
        x, value = _local_minimum(forms, rng.standard_normal(k))
        if value < best_value:
            best_x, best_value = x, value
    logger.debug(f"Witness search over {starts} starts: best max_a Q_a = {best_value:.3e}")
    return best_x, best_value


@dataclass
class _Cells:
    center: np.ndarray
    radius: np.ndarray
    depth: np.ndarray

    def __len__(self) -> int:
        return len(self.depth)

    def take(self, index) -> "_Cells":
        return _Cells(self.center[index], self.radius[index], self.depth[index])

    @staticmethod
    def concat(parts: list["_Cells"]) -> "_Cells":
        return _Cells(
            np.concatenate([p.center for p in parts]),
            np.concatenate([p.radius for p in parts]),
            np.concatenate([p.depth for p in parts]),
        )


def _initial_cells(k: int, dtype) -> _Cells:
    center = np.eye(k, dtype=dtype)
    radius = np.ones((k, k), dtype=dtype) - np.eye(k, dtype=dtype)
    return _Cells(center, radius, np.zeros(k, dtype=int))


def _split(cells: _Cells) -> _Cells:
    axis = np.argmax(cells.radius, axis=1)
    rows = np.arange(len(cells))
    half = cells.radius[rows, axis] / 2
    radius = cells.radius.copy()
    radius[rows, axis] = half
    lower = cells.center.copy()
    lower[rows, axis] -= half
    upper = cells.center.copy()
    upper[rows, axis] += half
    # children of a parent stay adjacent: lower, upper, lower, upper, ...
    center = np.stack([lower, upper], axis=1).reshape(-1, cells.center.shape[1])
    radius = np.repeat(radius, 2, axis=0)
    depth = np.repeat(cells.depth + 1, 2)
    return _Cells(center, radius, depth)


class _Evaluator:
    """Vectorized cell bounds for a fixed set of blended forms."""

    def __init__(self, forms: np.ndarray, weights: np.ndarray, dtype) -> None:
        self.n_forms = len(forms)
        blended = np.einsum("pf,fij->pij", weights, forms).astype(dtype)
        self.blended = blended
        self.diag = np.einsum("pii->pi", blended)
        off = np.abs(blended)
        off[:, np.arange(blended.shape[1]), np.arange(blended.shape[1])] = 0
        self.abs_off = off

    def _lower(self, t, qc, cc, g, c, r, r2, off_term):
        lin = np.einsum("npi,ni->np", np.abs(g - 2 * t[..., None] * c[:, None, :]), r)
        quad = np.einsum("npi,ni->np", np.minimum(0, self.diag[None, :, :] - t[..., None]), r2)
        return qc - t * cc[:, None] - lin + quad - off_term

    def _lower_one(self, t, index, qc, cc, g, c, r, r2, off_term):
        """The bound of _lower for a single blend per cell, given by index."""
        rows = np.arange(len(index))
        lin = np.einsum("ni,ni->n", np.abs(g[rows, index] - 2 * t[:, None] * c), r)
        quad = np.einsum("ni,ni->n", np.minimum(0, self.diag[index] - t[:, None]), r2)
        return qc[rows, index] - t * cc - lin + quad - off_term[rows, index]

    def __call__(self, cells: _Cells) -> tuple[np.ndarray, np.ndarray]:
        """Best certified t per cell (0 when none) and max_a Q_a(c) / |c|^2 at the centers.

        The bound of a blend is concave in t, so its certified values form an
        interval; the best blend's interval end is located by bisection.
        """
        c, r = cells.center, cells.radius
        r2 = r * r
        cc = np.einsum("ni,ni->n", c, c)
        qc = np.einsum("ni,pij,nj->np", c, self.blended, c)
        g = 2 * np.einsum("pij,nj->npi", self.blended, c)
        off_term = np.einsum("ni,pij,nj->np", r, self.abs_off, r)
        nmax = np.einsum("ni,ni->n", np.abs(c) + r, np.abs(c) + r)

        zero = np.zeros_like(qc)
        lb0 = self._lower(zero, qc, cc, g, c, r, r2, off_term)
        t_safe = np.where(lb0 > 0, lb0 / nmax[:, None], 0)
        ratio = qc / cc[:, None]
        certified = np.zeros_like(qc)
        for fraction in (1.0, 0.9, 0.5):
            t = np.where(ratio > 0, fraction * ratio, 0)
            ok = (t > 0) & (self._lower(t, qc, cc, g, c, r, r2, off_term) >= 0)
            certified = np.maximum(certified, np.where(ok, t, 0))

        index = certified.argmax(axis=1)
        rows = np.arange(len(cells))
        lo = certified[rows, index]
        hi = np.maximum(ratio[rows, index], lo)
        active = lo > 0
        for _ in range(_BISECTION_STEPS):
            mid = (lo + hi) / 2
            ok = active & (self._lower_one(mid, index, qc, cc, g, c, r, r2, off_term) >= 0)
            lo = np.where(ok, mid, lo)
            hi = np.where(active & ~ok, mid, hi)

        best = np.maximum(np.maximum(t_safe.max(axis=1), lo), 0)
        center_ratio = ratio[:, : self.n_forms].max(axis=1)
        return best, center_ratio


def certify_family_positivity(
    forms,
    budget: int | None = None,
    seed: int | None = None,
    workers: int | None = None,
    dtype: type[np.floating] | None = None,
    use_blends: bool | None = None,
    refine_fraction: float | None = None,
) -> PositivityCertificate:
    """Decide whether max_a Q_a(x) > 0 for every x != 0.

    A multistart witness search runs first. The sphere is then covered by
    subdivided cells until every cell is discharged (positive verdict), a
    cell center is a witness (negative verdict), or the cell budget runs out
    (inconclusive). Cells that shrink below the minimal width without being
    discharged are searched locally for a witness and otherwise also make the
    verdict inconclusive.

    A cell counts as discharged once its certified bound reaches
    ``refine_fraction`` times max_a Q_a / |c|^2 at its center. Cells certified
    below that are split again until they reach it or the minimal width, and
    the returned v is the least bound over discharged cells.
    """
    cfg = settings.certifier
    budget = budget if budget is not None else cfg.budget
    seed = seed if seed is not None else settings.seed
    workers = workers or cfg.workers
    dtype = dtype or settings.dtype
    use_blends = cfg.blend_forms if use_blends is None else use_blends
    refine_fraction = cfg.refine_fraction if refine_fraction is None else refine_fraction

    stacked = _stack_forms(forms)
    k = stacked.shape[1]
    log = WorkLog(budget=budget)
    if k == 0:
        return PositivityCertificate(verdict=PositivityVerdict.POSITIVELY_DEFINED, v_constant=math.inf, work_log=log)

    scale = float(max(np.linalg.norm(f, 2) for f in stacked))
    tolerance = cfg.witness_tolerance * scale
    if scale == 0.0:
        return PositivityCertificate(
            verdict=PositivityVerdict.NOT_POSITIVELY_DEFINED, witness=np.eye(k)[0], work_log=log
        )

    rng = np.random.default_rng(seed)
    log.witness_starts = cfg.witness_starts
    x, value = witness_search(stacked, cfg.witness_starts, rng)
    if value <= tolerance:
        logger.info(f"Witness found before subdivision: max_a Q_a = {value:.3e}")
        return PositivityCertificate(verdict=PositivityVerdict.NOT_POSITIVELY_DEFINED, witness=x, work_log=log)

    weights = blend_weights(len(stacked), use_blends)
    log.blend_weights = len(weights)
    evaluate = _Evaluator(stacked, weights, dtype)
    cells = _initial_cells(k, dtype)
    v_constant = math.inf

    with ThreadPoolExecutor(max_workers=workers) as pool:
        while len(cells):
            if log.cells_processed >= budget:
                logger.info(f"Budget of {budget} cells exhausted with {len(cells)} cells open")
                return PositivityCertificate(verdict=PositivityVerdict.INCONCLUSIVE, work_log=log)
            take = min(len(cells), budget - log.cells_processed)
            batch, rest = cells.take(slice(0, take)), cells.take(slice(take, None))
            chunks = [batch.take(slice(s, s + _CHUNK)) for s in range(0, take, _CHUNK)]
            results = list(pool.map(evaluate, chunks))
            best = np.concatenate([res[0] for res in results])
            center_ratio = np.concatenate([res[1] for res in results])
            log.cells_processed += take
            log.generations += 1
            log.max_depth = max(log.max_depth, int(batch.depth.max()))

            hits = np.flatnonzero(center_ratio * np.einsum("ni,ni->n", batch.center, batch.center) <= tolerance)
            if hits.size:
                c = batch.center[hits[0]].astype(float)
                return PositivityCertificate(
                    verdict=PositivityVerdict.NOT_POSITIVELY_DEFINED, witness=c / np.linalg.norm(c), work_log=log
                )

            narrow = 2 * batch.radius.max(axis=1) < cfg.min_cell_width
            discharged = (best > 0) & ((best >= refine_fraction * center_ratio) | narrow)
            log.cells_discharged += int(discharged.sum())
            if discharged.any():
                v_constant = min(v_constant, float(best[discharged].min()))
            open_cells = batch.take(~discharged)
            too_small = 2 * open_cells.radius.max(axis=1) < cfg.min_cell_width
            if too_small.any():
                stalled = open_cells.take(too_small)
                for center in stalled.center[:8]:
                    x, value = _local_minimum(stacked, center.astype(float))
                    if value <= tolerance:
                        return PositivityCertificate(
                            verdict=PositivityVerdict.NOT_POSITIVELY_DEFINED, witness=x, work_log=log
                        )
                log.stalled_cells += len(stalled)
                open_cells = open_cells.take(~too_small)
            cells = _Cells.concat([rest, _split(open_cells)]) if len(open_cells) else rest
            logger.debug(
                f"Generation {log.generations}: {take} cells, {int(discharged.sum())} discharged, {len(cells)} open"
            )

    if log.stalled_cells:
        return PositivityCertificate(verdict=PositivityVerdict.INCONCLUSIVE, work_log=log)
    logger.info(f"Family certified after {log.cells_processed} cells with v = {v_constant:.6g}")
    return PositivityCertificate(verdict=PositivityVerdict.POSITIVELY_DEFINED, v_constant=v_constant, work_log=log)


def revalidate(
    certificate: PositivityCertificate, forms, samples: int | None = None, seed: int | None = None
) -> bool:
    """Check max_a Q_a >= v (1 - 1e-6) on fresh random unit vectors."""
    if certificate.verdict != PositivityVerdict.POSITIVELY_DEFINED or certificate.v_constant is None:
        return False
    stacked = _stack_forms(forms)
    k = stacked.shape[1]
    if k == 0:
        return True
    samples = samples or settings.certifier.revalidation_samples
    rng = np.random.default_rng(settings.seed + 1 if seed is None else seed)
    bound = certificate.v_constant * (1 - 1e-6)
    for start in range(0, samples, 10_000):
        x = rng.standard_normal((min(10_000, samples - start), k))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        if np.any(family_maximum(stacked, x) < bound):
            return False
    return True
