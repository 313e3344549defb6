"""Second-order analysis specific to O6: the three group forms on E and the convex-combination scan."""

import logging
from dataclasses import dataclass

import numpy as np

from cylcrit.jets import EPointParams, reduced_gram_matrices, second_order_combinations, upsilon_gram_matrices
from cylcrit.settings import settings

from .models import PositivityCertificate
from .positivity import certify_family_positivity

logger = logging.getLogger(__name__)


def upsilon_forms() -> list[np.ndarray]:
    """Gram matrices of -U_1, -U_2, -U_3 in E coordinates; this family is positively defined."""
    return [-g for g in upsilon_gram_matrices()]


def upsilon_values(points: np.ndarray) -> np.ndarray:
    """(U_1, U_2, U_3) at points of shape (N, 6) in E coordinates."""
    grams = np.stack(upsilon_gram_matrices())
    return np.einsum("ni,aij,nj->na", points, grams, points)


def upsilon_system_holds(e: EPointParams, tol: float = 0.0) -> bool:
    """Whether U_1 >= 0, U_2 >= 0 and U_3 >= 0 all hold at e."""
    return all(u >= -tol for u in second_order_combinations(e))


def upsilon_ranks(rank_threshold: float | None = None) -> tuple[int, int, int]:
    if rank_threshold is None:
        rank_threshold = settings.certifier.rank_threshold
    ranks = []
    for g in upsilon_gram_matrices():
        s = np.linalg.svd(g, compute_uv=False)
        ranks.append(int((s > rank_threshold * s[0]).sum()))
    return ranks[0], ranks[1], ranks[2]


def sample_unit_sphere(n: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal((n, dim))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def elimination_oracle_O6(points: np.ndarray, tol: float = 1e-9, radius: float = 1e-6) -> bool:
    """True if no sampled point away from the origin satisfies all three inequalities.

    A point x with |x| > radius counts as a solution when every U_a(x) >= -tol |x|^2.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 6)
    for start in range(0, len(points), 100_000):
        chunk = points[start : start + 100_000]
        norm_sq = np.einsum("ni,ni->n", chunk, chunk)
        holds = (upsilon_values(chunk) >= -tol * norm_sq[:, None]).all(axis=1)
        if np.any(holds & (norm_sq > radius**2)):
            logger.warning(f"Sampled solution of the second-order system near chunk {start}")
            return False
    return True


def upsilon_family_certificate(
    budget: int | None = None,
    seed: int | None = None,
    workers: int | None = None,
    dtype: type[np.floating] | None = None,
) -> PositivityCertificate:
    return certify_family_positivity(upsilon_forms(), budget=budget, seed=seed, workers=workers, dtype=dtype)


def gram_of_reduced_form(alpha: float, beta: float) -> np.ndarray:
    """Gram matrix of -(U~_1 + alpha U_2 + beta U_3) on (c1-, c2+, c2-, c3+, c3-).

    U~_1 is U_1 maximized over omega.
    """
    r1, g2, g3 = reduced_gram_matrices()
    return -(r1 + alpha * g2 + beta * g3)


def _leading_minors(doubled: np.ndarray) -> np.ndarray:
    """Leading principal minors of orders 2..5, batched over leading axes."""
    return np.stack([np.linalg.det(doubled[..., :k, :k]) for k in range(2, 6)], axis=-1)


def no_positive_convex_combination(alpha: float, beta: float) -> tuple[tuple[float, float, float, float], bool]:
    """Sylvester minors of orders 2..5 of twice the reduced Gram matrix, and whether all are positive.

    Examples:
        >>> minors, positive = no_positive_convex_combination(1.0, 2.0)
        >>> positive
        False
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    minors = _leading_minors(2 * gram_of_reduced_form(alpha, beta))
    values = (float(minors[0]), float(minors[1]), float(minors[2]), float(minors[3]))
    return values, all(m > 0 for m in values)


def m_polynomial(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """m = alpha - 3 alpha beta + alpha^2 beta + beta^2; the order-5 minor is -16 alpha beta m."""
    return alpha - 3 * alpha * beta + alpha**2 * beta + beta**2


def m_discriminant(beta: np.ndarray) -> np.ndarray:
    """Discriminant of m as a quadratic in alpha, equal to -(beta - 1)^2 (4 beta - 1)."""
    beta = np.asarray(beta, dtype=float)
    return (1 - 3 * beta) ** 2 - 4 * beta**3


@dataclass(frozen=True)
class SylvesterScan:
    """Summary of the minor conditions over an (alpha, beta) grid."""

    n_points: int
    n_positive: int
    failures_by_minor: tuple[int, int, int, int]
    last_minor_nonpositive_for_beta_above_one: bool
    discriminant_negative_for_beta_above_one: bool

    def to_dict(self) -> dict:
        return {
            "n_points": self.n_points,
            "n_positive": self.n_positive,
            "failures_by_minor": list(self.failures_by_minor),
            "last_minor_nonpositive_for_beta_above_one": self.last_minor_nonpositive_for_beta_above_one,
            "discriminant_negative_for_beta_above_one": self.discriminant_negative_for_beta_above_one,
        }


def default_scan_grid(n: int = 500) -> np.ndarray:
    return np.geomspace(0.01, 10.0, n)


def sylvester_scan(alphas: np.ndarray | None = None, betas: np.ndarray | None = None) -> SylvesterScan:
    """Evaluate the four minor conditions on the product grid alphas x betas."""
    alphas = default_scan_grid() if alphas is None else np.asarray(alphas, dtype=float)
    betas = default_scan_grid() if betas is None else np.asarray(betas, dtype=float)
    r1, g2, g3 = reduced_gram_matrices()
    a, b = np.meshgrid(alphas, betas, indexing="ij")
    doubled = -2 * (r1 + a[..., None, None] * g2 + b[..., None, None] * g3)
    minors = _leading_minors(doubled)
    positive = (minors > 0).all(axis=-1)
    failures = (minors <= 0).reshape(-1, 4).sum(axis=0)
    above = b > 1
    scan = SylvesterScan(
        n_points=int(a.size),
        n_positive=int(positive.sum()),
        failures_by_minor=(int(failures[0]), int(failures[1]), int(failures[2]), int(failures[3])),
        last_minor_nonpositive_for_beta_above_one=bool((minors[..., 3][above] <= 0).all()),
        discriminant_negative_for_beta_above_one=bool((m_discriminant(betas[betas > 1]) < 0).all()),
    )
    logger.debug(f"Sylvester scan over {scan.n_points} points: {scan.n_positive} positive")
    return scan
