"""Symmetry group action on line configurations."""

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from cylcrit.geom import config_norm_distance, transform_line
from cylcrit.settings import settings

from .builders import CENTRAL_REFLECTION, HALF_TURN_X, RHO
from .models import LineConfiguration, SymmetryElement

logger = logging.getLogger(__name__)


def octahedral_generators() -> list[SymmetryElement]:
    """The cyclic axis permutation, the half turn about e1 and the central reflection."""
    return [
        SymmetryElement.of(RHO, name="rho"),
        SymmetryElement.of(HALF_TURN_X, name="r"),
        SymmetryElement.of(CENTRAL_REFLECTION, name="I"),
    ]


def _key(element: SymmetryElement) -> tuple[float, ...]:
    return tuple(np.round(element.array, 9).ravel() + 0.0)


def generate_group(generators: Sequence[SymmetryElement], max_order: int = 1000) -> list[SymmetryElement]:
    """Close a set of orthogonal maps under composition.

    The identity comes first; the remaining elements appear in breadth-first order.
    """
    identity = SymmetryElement.of(np.eye(3), name="e")
    elements = [identity]
    seen = {_key(identity)}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for element in frontier:
            for gen in generators:
                product = gen @ element
                key = _key(product)
                if key in seen:
                    continue
                seen.add(key)
                elements.append(product)
                next_frontier.append(product)
                if len(elements) > max_order:
                    raise ValueError(f"group generated by {len(generators)} elements exceeds order {max_order}")
        frontier = next_frontier
    logger.debug(f"Generated group of order {len(elements)}")
    return elements


def signed_permutation_matrices() -> list[SymmetryElement]:
    """All 48 signed permutation matrices."""
    elements = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1.0, -1.0), repeat=3):
            m = np.zeros((3, 3))
            for row, (col, sign) in enumerate(zip(perm, signs, strict=True)):
                m[row, col] = sign
            elements.append(SymmetryElement.of(m))
    return elements


def congruence_permutation(
    source: LineConfiguration,
    target: LineConfiguration,
    g: SymmetryElement,
    tol: float | None = None,
) -> tuple[int, ...] | None:
    """Index map i -> j with g(source[i]) = target[j], or None when g does not match the line sets."""
    if tol is None:
        tol = settings.geometry.symmetry_tolerance
    if len(source) != len(target):
        return None
    matrix = g.array
    image: list[int] = []
    used: set[int] = set()
    for line in source.lines:
        moved = transform_line(matrix, line)
        match = None
        for j, candidate in enumerate(target.lines):
            if j not in used and config_norm_distance(moved, candidate) < tol:
                match = j
                break
        if match is None:
            return None
        used.add(match)
        image.append(match)
    return tuple(image)


def symmetry_orbit_check(cfg: LineConfiguration, g: SymmetryElement) -> tuple[int, ...] | None:
    """Permutation of line indices induced by g, or None if g does not stabilize the line set."""
    return congruence_permutation(cfg, cfg, g)


def stabilizer(
    cfg: LineConfiguration, candidates: Iterable[SymmetryElement]
) -> list[tuple[SymmetryElement, tuple[int, ...]]]:
    """Candidates mapping the configuration onto itself, with their permutations."""
    result = []
    for g in candidates:
        perm = symmetry_orbit_check(cfg, g)
        if perm is not None:
            result.append((g, perm))
    return result


@dataclass(frozen=True)
class PermutationRepresentation:
    """Permutations induced by group elements and the elements acting trivially."""

    permutations: tuple[tuple[int, ...], ...]
    kernel: tuple[int, ...]
    stabilizes: bool

    @property
    def is_faithful(self) -> bool:
        return self.stabilizes and len(self.kernel) == 1

    @property
    def image_order(self) -> int:
        return len(set(self.permutations))


def permutation_representation(
    cfg: LineConfiguration, elements: Sequence[SymmetryElement]
) -> PermutationRepresentation:
    """Induced permutation of each element; elements that fail to stabilize get an empty tuple."""
    identity = tuple(range(len(cfg)))
    perms: list[tuple[int, ...]] = []
    kernel: list[int] = []
    stabilizes = True
    for k, g in enumerate(elements):
        perm = symmetry_orbit_check(cfg, g)
        if perm is None:
            stabilizes = False
            perms.append(())
            continue
        perms.append(perm)
        if perm == identity:
            kernel.append(k)
    return PermutationRepresentation(permutations=tuple(perms), kernel=tuple(kernel), stabilizes=stabilizes)
