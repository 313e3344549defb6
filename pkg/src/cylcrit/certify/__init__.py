"""Criticality and maximality certification for tangent line configurations."""

from .decay import DecayProbe, ScaleGridError, decay_probe, default_t_grid, o6_decay_probe, write_decay_csv
from .families import active_pairs, jet_family, o6_jet_family, pair_label
from .linear import (
    change_variables,
    convex_dependencies,
    convex_representative,
    kernel_subspace,
    restrict_form,
    support_blocks,
)
from .lq2b import check_lq2b_conditions
from .models import (
    DependencyVector,
    FunctionJetFamily,
    LQ2BReport,
    LQ2BVerdict,
    PositivityCertificate,
    PositivityVerdict,
    RestrictedForm,
    WorkLog,
)
from .o6 import (
    SylvesterScan,
    elimination_oracle_O6,
    gram_of_reduced_form,
    m_discriminant,
    m_polynomial,
    no_positive_convex_combination,
    sample_unit_sphere,
    sylvester_scan,
    upsilon_family_certificate,
    upsilon_forms,
    upsilon_ranks,
    upsilon_system_holds,
    upsilon_values,
)
from .positivity import blend_weights, certify_family_positivity, family_maximum, revalidate, witness_search
from .search import UnlockResult, batched_min_distance, default_chart, pair_distances, unlock_search
from .stability import StabilityError, StabilityReport, perturbation_stability_probe, random_perturbations

__all__ = [
    "DecayProbe",
    "DependencyVector",
    "FunctionJetFamily",
    "LQ2BReport",
    "LQ2BVerdict",
    "PositivityCertificate",
    "PositivityVerdict",
    "RestrictedForm",
    "ScaleGridError",
    "StabilityError",
    "StabilityReport",
    "SylvesterScan",
    "UnlockResult",
    "WorkLog",
    "active_pairs",
    "batched_min_distance",
    "blend_weights",
    "certify_family_positivity",
    "change_variables",
    "check_lq2b_conditions",
    "convex_dependencies",
    "convex_representative",
    "decay_probe",
    "default_chart",
    "default_t_grid",
    "elimination_oracle_O6",
    "family_maximum",
    "gram_of_reduced_form",
    "jet_family",
    "kernel_subspace",
    "m_discriminant",
    "m_polynomial",
    "no_positive_convex_combination",
    "o6_decay_probe",
    "o6_jet_family",
    "pair_distances",
    "pair_label",
    "perturbation_stability_probe",
    "random_perturbations",
    "restrict_form",
    "revalidate",
    "sample_unit_sphere",
    "support_blocks",
    "sylvester_scan",
    "unlock_search",
    "upsilon_family_certificate",
    "upsilon_forms",
    "upsilon_ranks",
    "upsilon_system_holds",
    "upsilon_values",
    "witness_search",
]
