"""Tests for the minimax distances D and D~."""

import numpy as np
import pytest

from cylcrit.canon import ConfigurationError, LineConfiguration, build_C6, build_O6, min_distance, min_distance_arrays
from cylcrit.geom import TangentLine


def test_o6_without_parallel_pairs():
    """Test D~(O6) = 1 with all 12 non-parallel pairs tied."""
    result = min_distance(build_O6(), skip_parallel=True)
    assert result.value == pytest.approx(1.0, abs=1e-12)
    assert len(result.pairs) == 12
    assert not set(result.pairs) & set(build_O6().parallel_pairs)


def test_o6_with_parallel_pairs():
    """Test that the parallel pairs at distance 2 do not bind D(O6)."""
    result = min_distance(build_O6(), skip_parallel=False)
    assert result.value == pytest.approx(1.0, abs=1e-12)
    assert len(result.pairs) == 12


def test_c6_adjacent_pairs():
    """Test D(C6) = 1 attained by the six adjacent pairs."""
    result = min_distance(build_C6())
    assert result.value == pytest.approx(1.0, abs=1e-12)
    assert set(result.pairs) == {(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)}


def test_tie_tolerance():
    """Test that a tighter tie tolerance keeps only the pairs within it."""
    cfg = build_O6()
    tilted = TangentLine.from_arrays(np.array([0.0, 1.0, 0.0]), np.array([1.0, 0.0, 1e-4]))
    nudged = cfg.with_lines([cfg.lines[0], tilted, *cfg.lines[2:]])
    loose = min_distance(nudged, skip_parallel=True, tie_tolerance=1.0)
    tight = min_distance(nudged, skip_parallel=True, tie_tolerance=1e-12)
    assert len(loose.pairs) == 12
    assert len(tight.pairs) < 12


def test_needs_two_lines():
    """Test that a single line has no minimum distance."""
    cfg = LineConfiguration(lines=(TangentLine((1.0, 0.0, 0.0), (0.0, 0.0, 1.0)),), labels=("a",))
    with pytest.raises(ConfigurationError, match="at least 2"):
        min_distance(cfg)


def test_no_pairs_left():
    """Test that excluding the only pair raises."""
    a = TangentLine((1.0, 0.0, 0.0), (0.0, 0.0, 1.0))
    b = TangentLine((-1.0, 0.0, 0.0), (0.0, 0.0, 1.0))
    cfg = LineConfiguration(lines=(a, b), labels=("a", "b"), parallel_pairs=((0, 1),))
    with pytest.raises(ConfigurationError, match="no pairs left"):
        min_distance(cfg, skip_parallel=True)


def test_array_form_matches():
    """Test the array form used by the searches."""
    cfg = build_O6()
    value = min_distance_arrays(cfg.points(), cfg.directions(), cfg.pair_mask(skip_parallel=True))
    assert value == pytest.approx(min_distance(cfg, skip_parallel=True).value, abs=1e-15)
