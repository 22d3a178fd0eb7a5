"""
Property suites over random negative definite trees. Slow; deselect with
-m "not slow".
"""
import random

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from plumbroot.core import random_plumbing
from plumbroot.families.fhat import FHat
from plumbroot.orchestrator import build_pipeline, classes_to_check, make_cases, run_checks
from plumbroot.oracle import zhat_oracle
from plumbroot.reports import summarize
from plumbroot.root import lattice_context
from plumbroot.series import specialize_t1, two_var_series, verify_stabilization
from plumbroot.spinc import minimal_representative

pytestmark = pytest.mark.slow

FAMILY = FHat()


@settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(seed=st.integers(min_value=0, max_value=2 ** 31 - 1))
def test_oracle_equivalence(seed):
    p = random_plumbing(seed, 6)
    for k in classes_to_check(p, random.Random(seed)):
        ctx = lattice_context(p, minimal_representative(p, k))
        lattice_side = specialize_t1(two_var_series(ctx, FAMILY, 15))
        oracle_side = zhat_oracle(p, ctx.a, 15)
        assert lattice_side.agrees_with(oracle_side), (p, ctx.k)


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(seed=st.integers(min_value=0, max_value=2 ** 31 - 1))
def test_stabilization_certificate(seed):
    p = random_plumbing(seed, 4)
    rng = random.Random(seed)
    for k in classes_to_check(p, rng)[:3]:
        report = verify_stabilization(lattice_context(p, minimal_representative(p, k)), FAMILY, 10)
        assert report.ok, report.unstable


def test_neumann_invariance():
    cases = make_cases(None, FAMILY, trials=100, moves=5, seed=11, order=10)
    report = run_checks(cases, build_pipeline(["root_invariance", "series_invariance"]))
    summary = summarize(report, 100)
    assert summary["failures"] == 0, report[~report["passed"]]
    assert summary["by_check"]["root_invariance"]["passed"] == 200
    assert summary["by_check"]["series_invariance"]["passed"] == 100


def test_full_pipeline_on_random_cases():
    cases = make_cases(None, FAMILY, trials=10, moves=3, seed=5, order=10)
    report = run_checks(cases)
    assert report["passed"].all(), report[~report["passed"]]
    assert set(report["check"]) == {
        "root_invariance", "series_invariance", "oracle_equivalence", "stabilization", "conjugation",
    }
