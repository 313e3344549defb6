"""Tests for finite-difference jets and the exact series jets."""

import itertools

import numpy as np
import pytest

from cylcrit.canon import O6_PAIR_GROUPS, build_C6, build_O6
from cylcrit.jets import (
    EPointParams,
    JetSource,
    PerturbationParams,
    RotationChart,
    finite_difference_jets,
    first_order_closed_form,
    local_frame_chart,
    non_parallel_pairs,
    path_jets,
    polarized_parts,
    second_order_combinations,
    series_jets,
)


@pytest.fixture
def o6():
    return build_O6()


def global_rotation_chart(axis: np.ndarray) -> RotationChart:
    """A chart whose a-slots all rotate about one common axis."""
    axes = np.zeros((6, 3, 3))
    axes[:, 0] = axis
    axes[:, 1] = [1.0, 0.0, 0.0]
    axes[:, 2] = [0.0, 1.0, 0.0]
    return RotationChart(name="global", axes=axes, free_slots=tuple(range(18)), var_names=tuple(map(str, range(18))))


class TestFiniteDifferenceJets:
    """Test finite_difference_jets."""

    def test_zero_direction(self, o6):
        """Test that p = 0 gives zero coefficients."""
        table = finite_difference_jets(o6, PerturbationParams(), order=2)
        assert table.source == JetSource.FINITE_DIFFERENCE
        assert np.allclose(table.first_order_vector(), 0.0, atol=1e-12)
        assert np.allclose(table.second_order_vector(), 0.0, atol=1e-12)
        assert table.flagged == ()

    def test_global_rotation_is_invisible(self, o6):
        """Test that rotating all six lines together leaves all 15 distances stationary."""
        rng = np.random.default_rng(31)
        axis = rng.standard_normal(3)
        chart = global_rotation_chart(axis / np.linalg.norm(axis))
        x = np.zeros(18)
        x[0::3] = 1.0
        pairs = tuple((u, v) for u, v in itertools.combinations(o6.labels, 2))
        table = finite_difference_jets(o6, x, order=2, chart=chart, pairs=pairs)
        assert len(table.pairs) == 15
        assert np.allclose(table.first_order_vector(), 0.0, atol=1e-8)
        assert np.allclose(table.second_order_vector(), 0.0, atol=1e-8)

    def test_reproduces_closed_form(self, o6):
        """Test the first-order coefficients against the closed-form table."""
        rng = np.random.default_rng(32)
        for _ in range(5):
            p = PerturbationParams.from_vector(rng.uniform(-1, 1, 15))
            fd = finite_difference_jets(o6, p, order=1)
            assert fd.order2 is None
            assert np.allclose(fd.first_order_vector(), first_order_closed_form(p).first_order_vector(), atol=1e-7)

    def test_dependencies_hold(self, o6):
        """Test that the group sums of finite-difference first-order jets vanish."""
        rng = np.random.default_rng(33)
        p = PerturbationParams.from_vector(rng.uniform(-1, 1, 15))
        sums = finite_difference_jets(o6, p, order=1).group_sums(O6_PAIR_GROUPS)
        assert np.allclose(sums, 0.0, atol=1e-8)

    @pytest.mark.slow
    def test_thousand_random_parameters(self, o6):
        """Test closed form against finite differences and the vanishing group sums on 1000 parameters."""
        rng = np.random.default_rng(330)
        for _ in range(1000):
            p = PerturbationParams.from_vector(rng.uniform(-1, 1, 15))
            fd = finite_difference_jets(o6, p, order=1)
            closed = first_order_closed_form(p)
            assert np.allclose(fd.first_order_vector(), closed.first_order_vector(), atol=1e-7, rtol=0)
            assert np.allclose(fd.group_sums(O6_PAIR_GROUPS), 0.0, atol=1e-8)
            assert np.allclose(closed.group_sums(O6_PAIR_GROUPS), 0.0, atol=1e-8)

    def test_vanishes_on_e(self, o6):
        """Test that lifted E points have zero first-order coefficients."""
        rng = np.random.default_rng(34)
        e = EPointParams.from_vector(rng.uniform(-1, 1, 6))
        fd = finite_difference_jets(o6, e.lift(), order=1)
        assert np.allclose(fd.first_order_vector(), 0.0, atol=1e-8)

    def test_second_order_group_sums(self, o6):
        """Test that half the second-order group sums reproduce the three combinations."""
        rng = np.random.default_rng(35)
        for _ in range(3):
            e = EPointParams.from_vector(rng.uniform(-1, 1, 6))
            fd = finite_difference_jets(o6, e.lift(), order=2)
            sums = 0.5 * np.array(fd.group_sums(O6_PAIR_GROUPS, order=2))
            assert np.allclose(sums, second_order_combinations(e), atol=1e-6)

    def test_matches_series(self, o6):
        """Test both orders against the exact series."""
        rng = np.random.default_rng(36)
        x = rng.uniform(-1, 1, 15)
        fd = finite_difference_jets(o6, x, order=2)
        exact = series_jets(o6, x)
        assert np.allclose(fd.first_order_vector(), exact.first_order_vector(), atol=1e-7)
        assert np.allclose(fd.second_order_vector(), exact.second_order_vector(), atol=1e-6)

    def test_extended_precision(self, o6):
        """Test that extended precision gives the same coefficients."""
        rng = np.random.default_rng(37)
        x = rng.uniform(-1, 1, 15)
        double = finite_difference_jets(o6, x, order=2)
        extended = finite_difference_jets(o6, x, order=2, dtype=np.longdouble)
        assert np.allclose(double.second_order_vector(), extended.second_order_vector(), atol=1e-6)

    def test_bad_order(self, o6):
        """Test that only orders 1 and 2 are supported."""
        with pytest.raises(ValueError, match="order must be 1 or 2"):
            path_jets(lambda t: (None, None), np.zeros((0, 2), dtype=int), order=3)


class TestSeriesJets:
    """Test the power-series jets on generic charts."""

    def test_c6_has_no_smooth_pairs(self):
        """Test that the all-vertical hexagon has no non-parallel pairs."""
        assert non_parallel_pairs(build_C6()) == ()

    def test_polarized_parts_reproduce_series(self, o6):
        """Test that x^T Q x and L x reproduce the series coefficients along x."""
        chart = local_frame_chart(o6, gauge_fixed=True)
        pairs = non_parallel_pairs(o6)
        linear, quad = polarized_parts(o6, chart, pairs)
        rng = np.random.default_rng(38)
        x = rng.standard_normal(chart.dimension)
        exact = series_jets(o6, x, chart=chart, pairs=pairs)
        assert np.allclose(linear @ x, exact.first_order_vector(), atol=1e-12)
        assert np.allclose(np.einsum("i,uij,j->u", x, quad, x), exact.second_order_vector(), atol=1e-10)

    def test_local_frame_series_matches_finite_differences(self, o6):
        """Test the local frame chart with both jet paths."""
        chart = local_frame_chart(o6)
        rng = np.random.default_rng(39)
        x = rng.uniform(-1, 1, chart.dimension)
        exact = series_jets(o6, x, chart=chart)
        fd = finite_difference_jets(o6, x, order=2, chart=chart)
        assert np.allclose(exact.first_order_vector(), fd.first_order_vector(), atol=1e-7)
        assert np.allclose(exact.second_order_vector(), fd.second_order_vector(), atol=1e-6)
