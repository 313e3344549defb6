"""Kernels, convex dependencies and restricted quadratic forms."""

import logging

import numpy as np
from scipy.linalg import null_space, orth
from scipy.optimize import linprog
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from cylcrit.settings import settings

from .models import DependencyVector, FunctionJetFamily, RestrictedForm

logger = logging.getLogger(__name__)


def support_tolerance(linear: np.ndarray, rank_threshold: float | None = None) -> float:
    """Entries of the linear parts below this are treated as structural zeros."""
    if rank_threshold is None:
        rank_threshold = settings.certifier.rank_threshold
    scale = float(np.abs(linear).max()) if linear.size else 0.0
    return rank_threshold * scale


def support_blocks(linear: np.ndarray, tol: float) -> list[list[int]]:
    """Group rows that are coupled through shared variables (connected components)."""
    if linear.shape[0] == 0:
        return []
    nonzero = (np.abs(linear) > tol).astype(int)
    n_blocks, labels = connected_components(csr_matrix(nonzero @ nonzero.T), directed=False)
    return [np.flatnonzero(labels == block).tolist() for block in range(n_blocks)]


def kernel_subspace(fam: FunctionJetFamily, rank_threshold: float | None = None) -> np.ndarray:
    """Orthonormal basis (n, k) of E, the common kernel of the linear parts."""
    if rank_threshold is None:
        rank_threshold = settings.certifier.rank_threshold
    if fam.linear.shape[0] == 0:
        return np.eye(fam.n_vars)
    basis = null_space(fam.linear, rcond=rank_threshold)
    logger.debug(f"Kernel of {fam.linear.shape[0]} linear forms in {fam.n_vars} variables: dim {basis.shape[1]}")
    return basis


def convex_representative(kernel: np.ndarray) -> np.ndarray | None:
    """A nonnegative vector summing to one in the column span of kernel, if any."""
    if kernel.shape[1] == 1:
        v = kernel[:, 0]
        total = v.sum()
        if total == 0:
            return None
        v = v / total
        return v if np.all(v >= -1e-12) else None
    result = linprog(
        c=np.zeros(kernel.shape[1]),
        A_ub=-kernel,
        b_ub=np.zeros(kernel.shape[0]),
        A_eq=kernel.sum(axis=0)[None, :],
        b_eq=np.array([1.0]),
        bounds=[(None, None)] * kernel.shape[1],
        method="highs",
    )
    if not result.success:
        return None
    return kernel @ result.x


def _normalized(v: np.ndarray) -> tuple[np.ndarray, bool]:
    total = v.sum()
    if total != 0:
        candidate = v / total
        if np.all(candidate >= -1e-12):
            return candidate, True
    return v / np.linalg.norm(v), False


def convex_dependencies(fam: FunctionJetFamily, rank_threshold: float | None = None) -> list[DependencyVector]:
    """Basis of the left kernel of the linear parts, split along row blocks.

    Rows coupled through shared variables form a block; every block
    contributes its own left-kernel vectors. When a block admits a convex
    dependency it comes first, normalized to sum one; the remaining vectors
    of the block are orthonormal and flagged convex only if they happen to
    be sign-definite.
    """
    if rank_threshold is None:
        rank_threshold = settings.certifier.rank_threshold
    linear = fam.linear
    m = linear.shape[0]
    if m == 0:
        return []
    deps: list[DependencyVector] = []
    for block in support_blocks(linear, support_tolerance(linear, rank_threshold)):
        kernel = null_space(linear[block].T, rcond=rank_threshold)
        if kernel.shape[1] == 0:
            continue
        vectors: list[tuple[np.ndarray, bool]] = []
        rep = convex_representative(kernel)
        if rep is not None:
            vectors.append((rep, True))
            if kernel.shape[1] > 1:
                rest = kernel - np.outer(rep, rep @ kernel) / (rep @ rep)
                vectors.extend(_normalized(v) for v in orth(rest, rcond=rank_threshold).T)
        else:
            vectors.extend(_normalized(v) for v in kernel.T)
        for v, convex in vectors:
            mu = np.zeros(m)
            mu[block] = v
            deps.append(DependencyVector(mu=mu, convex=convex))
    logger.debug(f"Found {len(deps)} dependencies, {sum(d.convex for d in deps)} convex")
    return deps


def restrict_form(
    fam: FunctionJetFamily, mu: DependencyVector | np.ndarray, basis: np.ndarray
) -> RestrictedForm:
    """The form sum_u mu^u q_u restricted to the span of the basis columns."""
    weights = mu.mu if isinstance(mu, DependencyVector) else np.asarray(mu, dtype=float)
    combined = np.einsum("u,ujk->jk", weights, fam.quad)
    gram = basis.T @ combined @ basis
    return RestrictedForm(basis=basis, gram=0.5 * (gram + gram.T))


def change_variables(fam: FunctionJetFamily, transform: np.ndarray) -> FunctionJetFamily:
    """The family in new coordinates z with x = transform @ z."""
    transform = np.asarray(transform, dtype=float)
    linear = fam.linear @ transform
    quad = np.einsum("ji,ujk,kl->uil", transform, fam.quad, transform)
    quad = 0.5 * (quad + np.swapaxes(quad, 1, 2))
    return FunctionJetFamily(
        var_names=fam.var_names, labels=fam.labels, linear=linear, quad=quad, group_of=dict(fam.group_of)
    )
