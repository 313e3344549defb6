"""Tests for decay exponents along deformation paths."""

import csv

import numpy as np
import pytest

from cylcrit.canon import build_O6
from cylcrit.certify import ScaleGridError, decay_probe, default_t_grid, o6_decay_probe, write_decay_csv
from cylcrit.jets import octahedral_model


def test_needs_three_scales():
    """Test that two scales are too few for a fit."""
    with pytest.raises(ScaleGridError, match="3 scales"):
        decay_probe(build_O6(), octahedral_model(), np.eye(15)[:1], t_grid=np.array([1e-3, 1e-2]))


def test_default_grid():
    """Test the default geometric grid."""
    grid = default_t_grid()
    assert len(grid) == 9
    assert grid[0] == pytest.approx(1e-4)
    assert grid[-1] == pytest.approx(1e-2)


def test_linear_decay_off_e():
    """Test a single direction with a first-order decrease of D~."""
    direction = np.zeros(15)
    direction[0] = 1.0
    probe = decay_probe(build_O6(), octahedral_model(), direction, skip_parallel=True)
    assert probe.decays.shape == (1, 9)
    assert np.all(probe.decays > 0)
    assert probe.exponents[0] == pytest.approx(1.0, abs=0.1)
    assert probe.c_u >= probe.c_d > 0


def test_csv(tmp_path):
    """Test the CSV rows written for two probes."""
    cfg, chart = build_O6(), octahedral_model()
    grid = np.array([1e-3, 2e-3, 4e-3])
    probe = decay_probe(cfg, chart, np.eye(15)[:2], t_grid=grid, skip_parallel=True)
    path = tmp_path / "decay.csv"
    write_decay_csv(path, {"on_E": probe, "off_E": probe})
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["set", "direction", "t", "decay", "exponent"]
    assert len(rows) == 1 + 2 * 2 * 3
    assert float(rows[1][2]) == 1e-3


@pytest.mark.slow
def test_o6_exponents():
    """Test decay exponent 2 inside E and 1 with a component outside E."""
    on_e, off_e = o6_decay_probe(count=100, seed=1)
    on = on_e.summary()
    off = off_e.summary()
    assert on["fitted"] == off["fitted"] == 100
    assert 1.9 <= on["exponent_min"] <= on["exponent_max"] <= 2.1
    assert 0.9 <= off["exponent_min"] <= off["exponent_max"] <= 1.1
    assert 0 < on_e.c_d <= on_e.c_u
