"""
Tests for the property suites and the worked examples
"""
import numpy as np
import pytest

import config
from analyzers import block_bounds
from analyzers.results import BoundResult
from ensembles import EnsembleSpec, generate_instance
from verification.fixtures import WORKED_EXAMPLES, reproduce
from verification.properties import SUITES, InstanceVerifier, verify_ensemble


@pytest.mark.parametrize("n, d, count", [(2, 1, 50), (2, 2, 50), (3, 1, 40), (2, 3, 30), (3, 2, 30)])
def test_soundness_over_gaussian_ensemble(n, d, count):
    spec = EnsembleSpec(seed=42, count=count, n=n, d=d)
    summary = verify_ensemble(spec, suites=["soundness"])
    assert summary.ok, summary.violations[:3]
    per_instance = sum(len(config.VERIFY["t_values"]) if b in block_bounds.T_FAMILIES else 1 for b in block_bounds.BoundId)
    assert summary.checked == count * per_instance


def test_exact_values_on_100_instances():
    spec = EnsembleSpec(seed=7, count=100, n=1, d=2)
    summary = verify_ensemble(spec, suites=["exact_values"], workers=4)
    assert summary.ok, summary.violations[:3]
    assert {p.name: p.checked for p in summary.properties} == {
        "exact:square_zero": 100,
        "exact:self_adjoint_corner": 100,
        "exact:positive_corner": 100,
        "exact:half_sum_lower": 100,
    }


def test_refinement_and_contraction_orderings():
    spec = EnsembleSpec(seed=11, count=20, n=3, d=2)
    summary = verify_ensemble(spec, suites=["refinement", "contraction"])
    assert summary.ok, summary.violations[:3]
    names = {p.name for p in summary.properties}
    assert "refinement:rem12_i<=bhunia_sqrt" in names
    assert "contraction:cor1_1<=aok" in names


@pytest.mark.parametrize("ensemble", ["gaussian", "nilpotent", "normal", "positive", "shift"])
def test_all_suites_pass_on_each_ensemble(ensemble):
    spec = EnsembleSpec(seed=42, count=2, n=2, d=2, ensemble=ensemble)
    summary = verify_ensemble(spec)
    assert summary.ok, summary.violations[:3]
    assert all(p.worst_margin >= 0.0 for p in summary.properties)


def test_ensemble_identities_are_checked():
    summary = verify_ensemble(EnsembleSpec(seed=1, count=3, n=2, d=1, ensemble="nilpotent"), suites=["ensemble"])
    names = {p.name for p in summary.properties}
    assert names == {"ensemble:nilpotent_corner", "ensemble:square_zero"}

    summary = verify_ensemble(EnsembleSpec(seed=1, count=3, ensemble="positive"), suites=["ensemble"])
    assert {p.name for p in summary.properties} == {"ensemble:positive_w_equals_norm"}


def test_two_block_suite_skips_larger_grids():
    A = generate_instance(EnsembleSpec(n=3, d=1), 0)
    assert InstanceVerifier(A, 0, EnsembleSpec(n=3, d=1)).analyze(["two_block"]) == []


def test_summary_independent_of_worker_count():
    spec = EnsembleSpec(seed=5, count=6, n=2, d=2)
    suites = ["soundness", "radius", "lemma"]
    serial = verify_ensemble(spec, workers=1, suites=suites)
    parallel = verify_ensemble(spec, workers=3, suites=suites)
    assert serial.model_dump() == parallel.model_dump()


def test_every_suite_name_has_a_check():
    A = generate_instance(EnsembleSpec(), 0)
    verifier = InstanceVerifier(A, 0, EnsembleSpec())
    for suite in SUITES:
        assert callable(getattr(verifier, f"check_{suite}"))


def test_violations_are_reported_with_the_matrix(monkeypatch):
    def lying_bound(A, bound_id, t=None):
        return BoundResult.scalar(str(bound_id), 0.0)

    monkeypatch.setattr(block_bounds, "evaluate_bound", lying_bound)
    spec = EnsembleSpec(seed=3, count=2, n=2, d=1)
    summary = verify_ensemble(spec, suites=["soundness"])
    assert not summary.ok
    assert summary.violated == summary.checked
    violation = summary.violations[0]
    assert violation.seed == 3
    assert violation.margin < 0.0
    assert np.array(violation.matrix).shape == (2, 2, 2)
    assert len(summary.violations) <= 20


def test_worked_examples_reproduce():
    report = reproduce()
    assert report.ok, [o for o in report.outcomes if not o.passed]
    assert [o.name for o in report.outcomes] == [e.name for e in WORKED_EXAMPLES]
    assert all(abs(o.difference) <= o.tol for o in report.outcomes)
