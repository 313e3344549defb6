"""Canonical configurations, their symmetries and the minimax distance."""

from .builders import (
    BUILDERS,
    C6_LABELS,
    CENTRAL_REFLECTION,
    HALF_TURN_X,
    O6_PAIR_GROUPS,
    O6_PAIRS,
    O6_PARALLEL_PAIRS,
    RHO,
    RadiusDomainError,
    alternative_O6,
    build_C6,
    build_named,
    build_O6,
    coordinate_rotation,
    distance_from_radius,
    radius_from_distance,
)
from .minimax import MinDistance, min_distance, min_distance_arrays, pairwise_distance_matrix
from .models import O6_LABELS, ConfigurationError, LineConfiguration, SymmetryElement
from .symmetry import (
    PermutationRepresentation,
    congruence_permutation,
    generate_group,
    octahedral_generators,
    permutation_representation,
    signed_permutation_matrices,
    stabilizer,
    symmetry_orbit_check,
)

__all__ = [
    "BUILDERS",
    "C6_LABELS",
    "CENTRAL_REFLECTION",
    "HALF_TURN_X",
    "O6_LABELS",
    "O6_PAIRS",
    "O6_PAIR_GROUPS",
    "O6_PARALLEL_PAIRS",
    "RHO",
    "ConfigurationError",
    "LineConfiguration",
    "MinDistance",
    "PermutationRepresentation",
    "RadiusDomainError",
    "SymmetryElement",
    "alternative_O6",
    "build_C6",
    "build_O6",
    "build_named",
    "congruence_permutation",
    "coordinate_rotation",
    "distance_from_radius",
    "generate_group",
    "min_distance",
    "min_distance_arrays",
    "octahedral_generators",
    "pairwise_distance_matrix",
    "permutation_representation",
    "radius_from_distance",
    "signed_permutation_matrices",
    "stabilizer",
    "symmetry_orbit_check",
]
