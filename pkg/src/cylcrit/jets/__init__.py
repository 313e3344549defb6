"""Perturbation models and Taylor jets of squared line distances."""

from .closed_form import (
    FIRST_ORDER_TABLE,
    eliminate_omega,
    first_order_closed_form,
    first_order_matrix,
    reduced_gram_matrices,
    second_order_combinations,
    upsilon_gram_matrices,
)
from .finite_difference import finite_difference_jets, path_jets
from .models import (
    E_C_KEYS,
    E_COORDINATES,
    FREE_VARIABLES,
    ROLES,
    EPointParams,
    GaugeError,
    JetSource,
    JetTable,
    PerturbationParams,
    e_lift_matrix,
    line_index,
)
from .perturbation import RotationChart, deform, local_frame_chart, octahedral_model
from .series import non_parallel_pairs, pair_indices, polarized_parts, series_coefficients, series_jets

__all__ = [
    "E_COORDINATES",
    "E_C_KEYS",
    "FIRST_ORDER_TABLE",
    "FREE_VARIABLES",
    "ROLES",
    "EPointParams",
    "GaugeError",
    "JetSource",
    "JetTable",
    "PerturbationParams",
    "RotationChart",
    "deform",
    "e_lift_matrix",
    "eliminate_omega",
    "finite_difference_jets",
    "first_order_closed_form",
    "first_order_matrix",
    "line_index",
    "local_frame_chart",
    "non_parallel_pairs",
    "octahedral_model",
    "pair_indices",
    "path_jets",
    "polarized_parts",
    "reduced_gram_matrices",
    "second_order_combinations",
    "series_coefficients",
    "series_jets",
    "upsilon_gram_matrices",
]
