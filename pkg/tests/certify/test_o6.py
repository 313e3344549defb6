"""Tests for the second-order analysis of O6."""

import numpy as np
import pytest

from cylcrit.certify import (
    elimination_oracle_O6,
    gram_of_reduced_form,
    m_discriminant,
    m_polynomial,
    no_positive_convex_combination,
    sample_unit_sphere,
    sylvester_scan,
    upsilon_ranks,
    upsilon_system_holds,
    upsilon_values,
)
from cylcrit.jets import EPointParams


class TestSylvester:
    """Test the minor conditions on convex combinations of the group forms."""

    def test_minors_at_one_two(self):
        """Test the minors at (alpha, beta) = (1, 2): the order-5 minor is -32."""
        minors, positive = no_positive_convex_combination(1.0, 2.0)
        assert minors[0] == pytest.approx(3.0)
        assert minors[1] == pytest.approx(8.0)
        assert minors[2] == pytest.approx(0.0, abs=1e-9)
        assert minors[3] == pytest.approx(-32.0)
        assert not positive

    def test_minors_match_closed_forms(self):
        """Test all four minors against their polynomial expressions."""
        rng = np.random.default_rng(51)
        for alpha, beta in rng.uniform(0.1, 3.0, (10, 2)):
            minors, _ = no_positive_convex_combination(alpha, beta)
            expected = (
                2 * beta - 1,
                4 * beta * (beta - 1),
                -4 * beta * (2 * alpha - 4 * alpha * beta + alpha**2 * beta + beta**2),
                -16 * alpha * beta * m_polynomial(alpha, beta),
            )
            assert np.allclose(minors, expected, rtol=1e-9, atol=1e-9)

    def test_third_minor_at_two_one(self):
        """Test that the order-4 minor is -4 at (2, 1)."""
        minors, positive = no_positive_convex_combination(2.0, 1.0)
        assert minors[2] == pytest.approx(-4.0)
        assert not positive

    def test_m_vanishes_at_one_one(self):
        """Test the double root of m at alpha = beta = 1."""
        assert m_polynomial(1.0, 1.0) == 0.0
        assert m_discriminant(1.0) == 0.0

    def test_discriminant(self):
        """Test the factored discriminant -(beta - 1)^2 (4 beta - 1)."""
        beta = np.linspace(0.05, 5.0, 50)
        assert np.allclose(m_discriminant(beta), -((beta - 1) ** 2) * (4 * beta - 1))

    def test_rejects_nonpositive_weights(self):
        """Test that alpha and beta must be positive."""
        with pytest.raises(ValueError, match="positive"):
            no_positive_convex_combination(0.0, 1.0)
        with pytest.raises(ValueError, match="positive"):
            no_positive_convex_combination(1.0, -2.0)

    def test_reduced_gram_is_symmetric(self):
        """Test the shape and symmetry of the reduced Gram matrix."""
        g = gram_of_reduced_form(0.5, 0.7)
        assert g.shape == (5, 5)
        assert np.allclose(g, g.T)

    def test_scan_finds_no_positive_combination(self):
        """Test the grid scan: no point passes all four minors."""
        scan = sylvester_scan(np.geomspace(0.01, 10, 60), np.geomspace(0.01, 10, 60))
        assert scan.n_points == 3600
        assert scan.n_positive == 0
        assert scan.last_minor_nonpositive_for_beta_above_one
        assert scan.discriminant_negative_for_beta_above_one
        assert scan.to_dict()["n_positive"] == 0


class TestUpsilonSystem:
    """Test the three group inequalities on E."""

    def test_ranks(self):
        """Test that each group form has rank three."""
        assert upsilon_ranks() == (3, 3, 3)

    def test_origin_solves_the_system(self):
        """Test that the origin satisfies all three inequalities."""
        assert upsilon_system_holds(EPointParams())

    def test_c1_minus_point_fails(self):
        """Test that c1- = 1 violates the first inequality."""
        assert not upsilon_system_holds(EPointParams.from_mapping(c1m=1.0))

    def test_values_match_combinations(self):
        """Test the batched values at the c1- point."""
        values = upsilon_values(np.array([[0.0, 1.0, 0.0, 0.0, 0.0, 0.0]]))
        assert np.allclose(values, [[-1.0, 0.0, 0.0]])

    def test_oracle_on_samples(self):
        """Test that random unit points never solve the system."""
        points = sample_unit_sphere(20_000, 6, np.random.default_rng(52))
        assert np.allclose(np.linalg.norm(points, axis=1), 1.0)
        assert elimination_oracle_O6(points)

    def test_oracle_ignores_the_origin(self):
        """Test that points inside the radius do not count as solutions."""
        assert elimination_oracle_O6(np.zeros((3, 6)))
