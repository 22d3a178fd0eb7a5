import random

import pandas as pd
import pytest

from plumbroot.basecheck import FuzzCase, VerificationCheck
from plumbroot.core import Plumbing
from plumbroot.exceptions import UnknownFamily
from plumbroot.families.fhat import FHat, FHatMinus, FHatPlus
from plumbroot.families.seeded import SeededFamily
from plumbroot.orchestrator import build_family, build_pipeline, classes_to_check, make_cases, run_checks
from plumbroot.reports import stack_reports, summarize
from plumbroot.spinc import check_characteristic

from tests.conftest import sample_path

CHECKS = {"root_invariance", "series_invariance", "oracle_equivalence", "stabilization", "conjugation"}


def test_build_family():
    assert isinstance(build_family("fhat"), FHat)
    assert isinstance(build_family("fhat+"), FHatPlus)
    assert isinstance(build_family("fhat-"), FHatMinus)
    seeded = build_family("seeds:" + sample_path("fhat_seeds.json"))
    assert isinstance(seeded, SeededFamily)
    assert seeded(3, 1) == FHat()(3, 1)
    for name in ("nope", "seeded", "averaged"):
        with pytest.raises(UnknownFamily):
            build_family(name)


def test_pipeline_discovers_every_check():
    pipeline = build_pipeline()
    assert {check.check_name for check in pipeline} == CHECKS
    assert all(isinstance(check, VerificationCheck) for check in pipeline)
    assert [check.check_name for check in build_pipeline(["stabilization"])] == ["stabilization"]


def test_classes_to_check(gamma_x):
    assert len(classes_to_check(Plumbing((-5,)), random.Random(0))) == 5
    assert len(classes_to_check(gamma_x, random.Random(0))) == 5


def test_cases_are_deterministic(gamma1):
    first = [case.describe() for case in make_cases(gamma1, FHat(), 5, 3, seed=7, order="10")]
    second = [case.describe() for case in make_cases(gamma1, FHat(), 5, 3, seed=7, order="10")]
    assert first == second


def test_cases_transport_the_class(gamma2):
    for case in make_cases(gamma2, FHat(), 8, 4, seed=2, order=10, k=(-1, 0)):
        assert isinstance(case, FuzzCase)
        assert case.plumbing == gamma2 and case.k == (-1, 0)
        assert 1 <= len(case.moves) <= 4
        check_characteristic(case.moved, case.moved_k)


def test_random_base_plumbings_respect_the_vertex_bound():
    for case in make_cases(None, FHat(), 6, 1, seed=3, order=10, s_max=2):
        assert case.plumbing.s <= 2


def test_run_checks_on_s3(gamma1):
    cases = make_cases(gamma1, FHat(), 3, 2, seed=1, order=10)
    report = run_checks(cases)
    assert list(report.columns) == ["trial", "check", "passed", "detail", "row"]
    assert report["passed"].all()
    assert set(report["trial"]) == {0, 1, 2}


def test_stack_reports_keeps_the_last_row():
    first = pd.DataFrame([{"trial": 0, "check": "a", "passed": False, "detail": "", "row": 0}])
    second = pd.DataFrame([{"trial": 0, "check": "a", "passed": True, "detail": "rerun", "row": 0}])
    stacked = stack_reports([first, pd.DataFrame(), second], key=["trial", "check", "row"])
    assert len(stacked) == 1
    assert stacked.loc[0, "detail"] == "rerun"
    assert stack_reports([], key=["trial"]).empty


def test_summarize():
    report = pd.DataFrame([
        {"trial": 0, "check": "a", "passed": True, "detail": "", "row": 0},
        {"trial": 0, "check": "b", "passed": False, "detail": "x", "row": 1},
        {"trial": 1, "check": "a", "passed": True, "detail": "", "row": 0},
    ])
    assert summarize(report, 2) == {
        "failures": 1, "trials": 2,
        "by_check": {"a": {"passed": 2, "failed": 0}, "b": {"passed": 0, "failed": 1}},
    }
    assert summarize(pd.DataFrame(), 0) == {"failures": 0, "trials": 0, "by_check": {}}
