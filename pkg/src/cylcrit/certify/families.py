"""Jet families of squared pair distances."""

import logging
from collections.abc import Sequence

from cylcrit.canon import O6_PAIR_GROUPS, LineConfiguration, build_O6
from cylcrit.jets import RotationChart, octahedral_model, polarized_parts

from .linear import support_blocks, support_tolerance
from .models import FunctionJetFamily

logger = logging.getLogger(__name__)

Pair = tuple[str, str]


def pair_label(pair: Pair) -> str:
    return f"{pair[0]},{pair[1]}"


def jet_family(
    cfg: LineConfiguration,
    chart: RotationChart,
    pairs: Sequence[Pair],
    group_of: dict[str, int] | None = None,
) -> FunctionJetFamily:
    """F_u(x) = d_u^2(deformed(x)) - d_u^2(base) for the given pairs, to second order.

    Without explicit groups, pairs coupled through shared variables of their
    linear parts form one subfamily each.
    """
    pairs = tuple(pairs)
    linear, quad = polarized_parts(cfg, chart, pairs)
    labels = tuple(pair_label(pair) for pair in pairs)
    if group_of is None:
        blocks = support_blocks(linear, support_tolerance(linear))
        group_of = {labels[k]: g for g, block in enumerate(blocks) for k in block}
    logger.debug(f"Jet family of {len(pairs)} pairs in {chart.dimension} variables")
    return FunctionJetFamily(var_names=chart.var_names, labels=labels, linear=linear, quad=quad, group_of=group_of)


def o6_jet_family() -> FunctionJetFamily:
    """The 12 non-parallel pair distances of O6 in the 15 free parameters, grouped by pair group."""
    group_of = {pair_label(pair): g for g, group in enumerate(O6_PAIR_GROUPS) for pair in group}
    pairs = tuple(pair for group in O6_PAIR_GROUPS for pair in group)
    return jet_family(build_O6(), octahedral_model(), pairs, group_of)


def active_pairs(cfg: LineConfiguration, pairs: Sequence[tuple[int, int]]) -> tuple[Pair, ...]:
    """Label pairs for index pairs."""
    return tuple((cfg.labels[i], cfg.labels[j]) for i, j in pairs)
