"""Sufficient conditions for a strict local maximum of a minimum of smooth functions.

(A) every subfamily has exactly one linear dependency among its
differentials and that dependency is convex; (B) the subfamilies depend on
pairwise disjoint sets of variables through their linear parts; (C) the
quadratic forms of the dependencies, restricted to the common kernel E, form
a negatively defined family. Together they make the origin a strict local
maximum of min_u F_u.
"""

import logging

import numpy as np
from scipy.linalg import null_space

from cylcrit.settings import settings

from .linear import convex_representative, kernel_subspace, restrict_form, support_tolerance
from .models import DependencyVector, FunctionJetFamily, LQ2BReport, LQ2BVerdict, PositivityVerdict
from .positivity import certify_family_positivity

logger = logging.getLogger(__name__)


def _group_dependency(fam: FunctionJetFamily, group: list[int], tol: float) -> tuple[DependencyVector | None, str]:
    linear = fam.linear[group]
    if linear.size == 0 or np.abs(linear).max() <= tol:
        return None, "zero linear parts"
    kernel = null_space(linear.T, rcond=settings.certifier.rank_threshold)
    if kernel.shape[1] != 1:
        return None, f"left kernel dimension {kernel.shape[1]}"
    rep = convex_representative(kernel)
    if rep is None:
        return None, "dependency is not convex"
    mu = np.zeros(len(fam.labels))
    mu[group] = rep
    return DependencyVector(mu=mu, convex=True), "ok"


def check_lq2b_conditions(
    fam: FunctionJetFamily,
    budget: int | None = None,
    seed: int | None = None,
    workers: int | None = None,
    dtype: type[np.floating] | None = None,
) -> LQ2BReport:
    """Check (A), (B) and (C) for the subfamilies given by ``fam.group_of``.

    The verdict is strict_local_max only if all three hold. A failure of (A)
    or (B) withholds the verdict; an inconclusive certificate for (C) makes
    it inconclusive.
    """
    groups = fam.groups()
    tol = support_tolerance(fam.linear)

    details: list[str] = []
    deps: list[DependencyVector | None] = []
    for g, group in enumerate(groups):
        dep, detail = _group_dependency(fam, group, tol)
        deps.append(dep)
        details.append(f"group {g}: {detail}")
    a_pass = bool(groups) and all(dep is not None for dep in deps)
    if not groups:
        details.append("no subfamilies")

    supports = [set(np.flatnonzero((np.abs(fam.linear[group]) > tol).any(axis=0)).tolist()) for group in groups]
    b_pass = all(supports[a].isdisjoint(supports[b]) for a in range(len(groups)) for b in range(a + 1, len(groups)))
    used = set().union(*supports) if supports else set()
    partition = tuple(tuple(fam.var_names[j] for j in sorted(s)) for s in supports)
    free = tuple(name for j, name in enumerate(fam.var_names) if j not in used)

    basis = kernel_subspace(fam)
    certificate = None
    if a_pass:
        forms = [-restrict_form(fam, dep, basis).gram for dep in deps if dep is not None]
        certificate = certify_family_positivity(forms, budget=budget, seed=seed, workers=workers, dtype=dtype)

    if not (a_pass and b_pass):
        verdict = LQ2BVerdict.WITHHELD
    elif certificate is None or certificate.verdict == PositivityVerdict.INCONCLUSIVE:
        verdict = LQ2BVerdict.INCONCLUSIVE
    elif certificate.verdict == PositivityVerdict.POSITIVELY_DEFINED:
        verdict = LQ2BVerdict.STRICT_LOCAL_MAX
    else:
        verdict = LQ2BVerdict.WITHHELD
    logger.info(f"Conditions A={a_pass} B={b_pass} on dim E={basis.shape[1]}: {verdict.value}")
    return LQ2BReport(
        a_pass=a_pass,
        a_details=tuple(details),
        dependencies=tuple(deps),
        b_pass=b_pass,
        partition=partition,
        free_variables=free,
        e_dimension=basis.shape[1],
        c_certificate=certificate,
        verdict=verdict,
    )
