"""Closed-form jets of the octahedral model."""

import numpy as np

from cylcrit.canon import O6_PAIRS

from .models import E_COORDINATES, EPointParams, JetSource, JetTable, Pair, PerturbationParams

# [d^2]_1 of every non-parallel pair as a sum of coefficient * parameter.
FIRST_ORDER_TABLE: dict[Pair, tuple[tuple[float, str], ...]] = {
    ("l1+", "l2-"): ((-2.0, "b2-"),),
    ("l1+", "l2+"): ((2.0, "b2+"),),
    ("l1-", "l2-"): ((2.0, "b2-"), (-2.0, "a1-")),
    ("l1-", "l2+"): ((-2.0, "b2+"), (2.0, "a1-")),
    ("l1+", "l3-"): ((2.0, "a3-"),),
    ("l1+", "l3+"): ((-2.0, "a3+"),),
    ("l1-", "l3-"): ((2.0, "b1-"), (-2.0, "a3-")),
    ("l1-", "l3+"): ((2.0, "a3+"), (-2.0, "b1-")),
    ("l3-", "l2-"): ((2.0, "b3-"), (-2.0, "a2-")),
    ("l3-", "l2+"): ((-2.0, "b3-"), (2.0, "a2+")),
    ("l3+", "l2-"): ((-2.0, "b3+"), (2.0, "a2-")),
    ("l3+", "l2+"): ((2.0, "b3+"), (-2.0, "a2+")),
}


def first_order_closed_form(p: PerturbationParams) -> JetTable:
    """First-order coefficients of the 12 non-parallel squared distances.

    Examples:
        >>> first_order_closed_form(PerturbationParams.from_mapping({"b2-": 0.3})).order1[("l1+", "l2-")]
        -0.6
    """
    order1 = {pair: sum(coef * p[name] for coef, name in FIRST_ORDER_TABLE[pair]) for pair in O6_PAIRS}
    return JetTable(pairs=O6_PAIRS, order1=order1, source=JetSource.CLOSED_FORM)


def first_order_matrix() -> np.ndarray:
    """The 12 x 15 matrix of the first-order linear forms in free-parameter coordinates."""
    columns = [
        first_order_closed_form(PerturbationParams.from_vector(np.eye(15)[k])).first_order_vector() for k in range(15)
    ]
    return np.column_stack(columns)


def second_order_combinations(e: EPointParams) -> tuple[float, float, float]:
    """The three group combinations of second-order coefficients on E.

    Each value is one half of the sum of the four [d^2]_2 coefficients of a
    pair group along the lifted path.
    """
    w = e.omega
    c1m, c2p, c2m, c3p, c3m = e.c
    u1 = c1m * c2p - c1m**2 - c1m * c2m + 2 * c1m * w - 2 * w**2
    u2 = c1m * c3p - c3m**2 - c1m * c3m - c3p**2
    u3 = c2m * c3p + c2p * c3m - c2m * c3m - c2p * c3p - c2m**2 - c2p**2
    return (u1, u2, u3)


def eliminate_omega(e: EPointParams) -> float:
    """The first combination maximized over omega (attained at omega = c1- / 2)."""
    c1m, c2p, c2m, _, _ = e.c
    return c1m * c2p - 0.5 * c1m**2 - c1m * c2m


def _index(name: str) -> int:
    return E_COORDINATES.index(name)


def upsilon_gram_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Symmetric 6 x 6 matrices G_a with combination a equal to e^T G_a e in E coordinates."""
    terms: list[list[tuple[float, str, str]]] = [
        [(1, "c1-", "c2+"), (-1, "c1-", "c1-"), (-1, "c1-", "c2-"), (2, "c1-", "omega"), (-2, "omega", "omega")],
        [(1, "c1-", "c3+"), (-1, "c3-", "c3-"), (-1, "c1-", "c3-"), (-1, "c3+", "c3+")],
        [
            (1, "c2-", "c3+"),
            (1, "c2+", "c3-"),
            (-1, "c2-", "c3-"),
            (-1, "c2+", "c3+"),
            (-1, "c2-", "c2-"),
            (-1, "c2+", "c2+"),
        ],
    ]
    grams = []
    for monomials in terms:
        g = np.zeros((6, 6))
        for coef, u, v in monomials:
            i, j = _index(u), _index(v)
            g[i, j] += coef / 2
            g[j, i] += coef / 2
        grams.append(g)
    return grams[0], grams[1], grams[2]


def reduced_gram_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gram matrices on (c1-, c2+, c2-, c3+, c3-) of the omega-reduced first combination and the other two."""
    g1, g2, g3 = upsilon_gram_matrices()
    reduced = g1[1:, 1:].copy()
    reduced[0, 0] += 0.5
    return reduced, g2[1:, 1:], g3[1:, 1:]
