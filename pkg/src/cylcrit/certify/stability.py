"""Stability of positively defined families under small perturbations of the forms."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from cylcrit.settings import settings

from .models import PositivityVerdict
from .positivity import certify_family_positivity

logger = logging.getLogger(__name__)

SAFETY_FACTOR = 0.9


class StabilityError(ValueError):
    """Raised when the unperturbed family is not certified positively defined."""

    pass


@dataclass(frozen=True)
class StabilityRow:
    trial: int
    epsilon: float
    verdict: PositivityVerdict
    v_constant: float | None


@dataclass(frozen=True)
class StabilityReport:
    """Re-certification results for Q_a + eps P_a with |P_a(x)| <= w |x|^2."""

    v_constant: float
    w_bound: float
    rows: tuple[StabilityRow, ...]

    @property
    def safe_threshold(self) -> float:
        if self.w_bound == 0:
            return math.inf
        return SAFETY_FACTOR * self.v_constant / self.w_bound

    @property
    def first_failure(self) -> float | None:
        """Smallest epsilon at which some trial was not certified."""
        failed = [row.epsilon for row in self.rows if row.verdict != PositivityVerdict.POSITIVELY_DEFINED]
        return min(failed) if failed else None

    @property
    def consistent(self) -> bool:
        """Every epsilon below the safe threshold was certified."""
        below = [row for row in self.rows if row.epsilon < self.safe_threshold]
        return all(row.verdict == PositivityVerdict.POSITIVELY_DEFINED for row in below)

    def to_dict(self) -> dict:
        return {
            "v_constant": self.v_constant,
            "w_bound": self.w_bound,
            "safe_threshold": self.safe_threshold,
            "first_failure": self.first_failure,
            "consistent": self.consistent,
            "rows": [
                {"trial": r.trial, "epsilon": r.epsilon, "verdict": r.verdict.value, "v_constant": r.v_constant}
                for r in self.rows
            ],
        }


def random_perturbations(n_forms: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random symmetric P_a scaled so that max_a |P_a|_2 = 1."""
    p = rng.standard_normal((n_forms, dim, dim))
    p = 0.5 * (p + np.swapaxes(p, 1, 2))
    scale = max(np.linalg.norm(m, 2) for m in p)
    return p / scale if scale > 0 else p


def perturbation_stability_probe(
    forms: Sequence[np.ndarray],
    epsilons: Sequence[float],
    trials: int = 3,
    seed: int | None = None,
    perturbations: np.ndarray | None = None,
    budget: int | None = None,
) -> StabilityReport:
    """Re-certify the perturbed family for every epsilon and trial.

    With explicit ``perturbations`` a single trial is run on them.

    Raises:
        StabilityError: If the unperturbed forms are not certified
    """
    stacked = np.array([np.asarray(f, dtype=float) for f in forms])
    base = certify_family_positivity(stacked, budget=budget, seed=seed)
    if base.verdict != PositivityVerdict.POSITIVELY_DEFINED or base.v_constant is None:
        raise StabilityError(f"unperturbed family is {base.verdict.value}")

    rng = np.random.default_rng(settings.seed if seed is None else seed)
    if perturbations is not None:
        candidates = [np.asarray(perturbations, dtype=float).reshape(stacked.shape)]
    else:
        candidates = [random_perturbations(len(stacked), stacked.shape[1], rng) for _ in range(trials)]
    w_bound = max(float(max(np.linalg.norm(m, 2) for m in p)) for p in candidates)

    rows = []
    for trial, p in enumerate(candidates):
        for eps in epsilons:
            cert = certify_family_positivity(stacked + eps * p, budget=budget, seed=seed)
            rows.append(StabilityRow(trial=trial, epsilon=float(eps), verdict=cert.verdict, v_constant=cert.v_constant))
            logger.debug(f"Trial {trial}, eps={eps:.3g}: {cert.verdict.value}")
    report = StabilityReport(v_constant=base.v_constant, w_bound=w_bound, rows=tuple(rows))
    if not report.consistent:
        logger.warning(f"Certification failed below the safe threshold {report.safe_threshold:.3g}")
    return report
