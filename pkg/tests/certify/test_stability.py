"""Tests for the perturbation stability probe."""

import numpy as np
import pytest

from cylcrit.certify import (
    PositivityVerdict,
    StabilityError,
    certify_family_positivity,
    perturbation_stability_probe,
    random_perturbations,
    upsilon_forms,
)


def test_identity_against_its_negative():
    """Test I + eps (-I): certified at eps = 0.5, rejected at eps = 2."""
    report = perturbation_stability_probe([np.eye(2)], [0.5, 2.0], seed=0, perturbations=np.array([-np.eye(2)]))
    assert report.w_bound == pytest.approx(1.0)
    assert 0 < report.v_constant <= 1
    assert report.safe_threshold == pytest.approx(0.9 * report.v_constant)
    verdicts = {row.epsilon: row.verdict for row in report.rows}
    assert verdicts[0.5] == PositivityVerdict.POSITIVELY_DEFINED
    assert verdicts[2.0] == PositivityVerdict.NOT_POSITIVELY_DEFINED
    assert report.first_failure == 2.0
    assert report.consistent


def test_random_trials():
    """Test that small random perturbations of a definite pair stay certified."""
    forms = [np.diag([2.0, 1.0]), np.diag([1.0, 2.0])]
    report = perturbation_stability_probe(forms, [1e-3, 1e-2], trials=2, seed=3)
    assert len(report.rows) == 4
    assert report.first_failure is None
    assert report.consistent
    assert report.to_dict()["consistent"]


def test_rejects_uncertified_base():
    """Test that the unperturbed family must be certified."""
    with pytest.raises(StabilityError, match="not_positively_defined"):
        perturbation_stability_probe([np.diag([1.0, -1.0])], [0.1], seed=0)


def test_random_perturbations_are_normalized():
    """Test symmetric perturbations with spectral norm at most one."""
    p = random_perturbations(3, 4, np.random.default_rng(61))
    assert p.shape == (3, 4, 4)
    assert np.allclose(p, np.swapaxes(p, 1, 2))
    assert max(np.linalg.norm(m, 2) for m in p) == pytest.approx(1.0)


@pytest.mark.slow
def test_upsilon_family_is_stable_below_the_threshold():
    """Test that the negated group forms stay certified under perturbations smaller than 0.9 v / w."""
    forms = upsilon_forms()
    v = certify_family_positivity(forms, seed=0).v_constant
    epsilons = [0.25 * 0.9 * v, 0.9 * 0.9 * v]
    report = perturbation_stability_probe(forms, epsilons, trials=2, seed=0)
    assert report.v_constant == pytest.approx(v)
    assert report.w_bound == pytest.approx(1.0)
    assert report.consistent
    assert report.first_failure is None
