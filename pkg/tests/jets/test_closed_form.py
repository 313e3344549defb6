"""Tests for the closed-form jets of the octahedral model."""

import numpy as np
import pytest

from cylcrit.canon import O6_PAIR_GROUPS, O6_PAIRS, build_O6
from cylcrit.geom import line_distance_sq
from cylcrit.jets import (
    FIRST_ORDER_TABLE,
    EPointParams,
    PerturbationParams,
    deform,
    eliminate_omega,
    first_order_closed_form,
    first_order_matrix,
    reduced_gram_matrices,
    second_order_combinations,
    series_jets,
    upsilon_gram_matrices,
)


class TestFirstOrder:
    """Test the first-order table."""

    def test_single_parameter(self):
        """Test b2- = 0.3: only the two pairs involving b2- move."""
        table = first_order_closed_form(PerturbationParams.from_mapping({"b2-": 0.3}))
        assert table.order1[("l1+", "l2-")] == pytest.approx(-0.6)
        assert table.order1[("l1-", "l2-")] == pytest.approx(0.6)
        for pair in O6_PAIRS:
            if all(name != "b2-" for _, name in FIRST_ORDER_TABLE[pair]):
                assert table.order1[pair] == 0.0

    def test_zero(self):
        """Test that p = 0 gives all zeros."""
        assert np.all(first_order_closed_form(PerturbationParams()).first_order_vector() == 0.0)

    def test_printed_entries(self):
        """Test three entries against their formulas."""
        p = PerturbationParams.from_mapping({"a3+": 0.5, "b1-": 0.125, "b3+": 0.25, "a2+": 1.0})
        table = first_order_closed_form(p)
        assert table.order1[("l1-", "l3+")] == 2 * (0.5 - 0.125)
        assert table.order1[("l3+", "l2+")] == 2 * (0.25 - 1.0)

    def test_matches_central_differences(self):
        """Test every entry against (d^2(t) - d^2(-t)) / 2t at t = 1e-5."""
        cfg = build_O6()
        rng = np.random.default_rng(21)
        t = 1e-5
        for _ in range(5):
            p = PerturbationParams.from_vector(rng.uniform(-1, 1, 15))
            table = first_order_closed_form(p)
            plus, minus = deform(cfg, p, t), deform(cfg, p, -t)
            for u, v in O6_PAIRS:
                i, j = cfg.index(u), cfg.index(v)
                forward = line_distance_sq(plus.lines[i], plus.lines[j])
                backward = line_distance_sq(minus.lines[i], minus.lines[j])
                assert (forward - backward) / (2 * t) == pytest.approx(table.order1[(u, v)], abs=1e-7)

    def test_matches_series(self):
        """Test the table against the exact series coefficients."""
        rng = np.random.default_rng(22)
        x = rng.uniform(-1, 1, 15)
        closed = first_order_closed_form(PerturbationParams.from_vector(x)).first_order_vector()
        assert np.allclose(series_jets(build_O6(), x).first_order_vector(), closed, atol=1e-12)

    def test_group_sums_vanish_exactly(self):
        """Test the three four-term dependencies on integer parameters."""
        rng = np.random.default_rng(23)
        p = PerturbationParams.from_vector(rng.integers(-5, 6, 15).astype(float))
        assert first_order_closed_form(p).group_sums(O6_PAIR_GROUPS) == (0.0, 0.0, 0.0)

    def test_group_sums_vanish_for_random_parameters(self):
        """Test the dependencies on random real parameters."""
        rng = np.random.default_rng(24)
        p = PerturbationParams.from_vector(rng.standard_normal(15))
        assert np.allclose(first_order_closed_form(p).group_sums(O6_PAIR_GROUPS), 0.0, atol=1e-14)

    def test_rank_nine(self):
        """Test that the 12 x 15 differential has rank 9 and a 3-dimensional left kernel."""
        matrix = first_order_matrix()
        assert matrix.shape == (12, 15)
        rank = np.linalg.matrix_rank(matrix)
        assert rank == 9
        assert matrix.shape[0] - rank == 3

    def test_vanishes_on_e(self):
        """Test that every lifted E point has zero first-order coefficients."""
        rng = np.random.default_rng(25)
        for _ in range(10):
            e = EPointParams.from_vector(rng.standard_normal(6))
            assert np.all(first_order_closed_form(e.lift()).first_order_vector() == 0.0)


class TestSecondOrder:
    """Test the group combinations of second-order coefficients on E."""

    def test_c1_minus_only(self):
        """Test the point with c1- = 1 and everything else zero."""
        assert second_order_combinations(EPointParams.from_mapping(c1m=1.0)) == (-1.0, 0.0, 0.0)

    def test_origin(self):
        """Test that the origin gives zeros."""
        assert second_order_combinations(EPointParams()) == (0.0, 0.0, 0.0)

    def test_half_group_sums_of_series(self):
        """Test each combination against half the exact second-order group sums."""
        cfg = build_O6()
        rng = np.random.default_rng(26)
        for _ in range(10):
            e = EPointParams.from_vector(rng.uniform(-1, 1, 6))
            table = series_jets(cfg, e.lift().vector())
            sums = table.group_sums(O6_PAIR_GROUPS, order=2)
            assert np.allclose(0.5 * np.array(sums), second_order_combinations(e), atol=1e-10)

    def test_gram_matrices(self):
        """Test that e^T G_a e reproduces the polynomials."""
        rng = np.random.default_rng(27)
        grams = upsilon_gram_matrices()
        for _ in range(10):
            v = rng.standard_normal(6)
            values = second_order_combinations(EPointParams.from_vector(v))
            assert np.allclose([v @ g @ v for g in grams], values, atol=1e-12)

    def test_ranks_are_three(self):
        """Test that each Gram matrix has rank three."""
        for g in upsilon_gram_matrices():
            assert np.linalg.matrix_rank(g, tol=1e-9) == 3

    def test_eliminate_omega_is_the_maximum(self):
        """Test that eliminating omega gives the maximum of the first combination over omega."""
        rng = np.random.default_rng(28)
        v = rng.standard_normal(6)
        e = EPointParams.from_vector(v)
        best = max(second_order_combinations(EPointParams(omega=w, c=e.c))[0] for w in np.linspace(-5, 5, 20001))
        assert eliminate_omega(e) == pytest.approx(best, abs=1e-6)
        assert eliminate_omega(e) == pytest.approx(second_order_combinations(EPointParams(e.c[0] / 2, e.c))[0])

    def test_reduced_gram(self):
        """Test the reduced Gram matrix of the first combination against eliminate_omega."""
        rng = np.random.default_rng(29)
        c = rng.standard_normal(5)
        reduced, _, _ = reduced_gram_matrices()
        assert c @ reduced @ c == pytest.approx(eliminate_omega(EPointParams(omega=0.0, c=tuple(c))))
