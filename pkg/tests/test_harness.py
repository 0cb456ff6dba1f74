import math

import numpy as np
import pytest
from pydantic import ValidationError

from dslkit.angles.lifted import lifted_angle, spacetime_angle
from dslkit.core.schema import ToleranceConfig
from dslkit.harness.reports import Outcome, VerificationReport, digest
from dslkit.harness.sampling import (
    Family,
    fast_spacetime_angle,
    sample_in_branch,
    sample_in_sl_branch,
    sample_spacetime,
    sample_stream,
    sample_sym,
)
from dslkit.harness.suites import SUITES, SuiteSpec, run_suite, suite_names
from dslkit.subequations.branches import DslBranch
from dslkit.subequations.predicates import in_Fcal

HALF_PI = 0.5 * math.pi


class TestSampling:
    def test_streams_are_keyed(self):
        a = sample_stream(7, "suite", 3).standard_normal(4)
        b = sample_stream(7, "suite", 3).standard_normal(4)
        c = sample_stream(7, "suite", 4).standard_normal(4)
        d = sample_stream(7, "other", 3).standard_normal(4)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, c)
        assert not np.array_equal(a, d)

    def test_block_diagonal_has_no_coupling(self):
        for i in range(5):
            a = sample_spacetime(3, 1, Family.BLOCK_DIAGONAL, i)
            np.testing.assert_array_equal(a.a_vec, np.zeros(3))

    def test_near_singular_scale(self):
        for i in range(10):
            a = sample_spacetime(2, 1, "near-singular-class", i)
            assert 1e-10 * (1 - 1e-9) <= a.coupling_scale() <= 1e-6 * (1 + 1e-9)

    def test_near_singular_sym(self):
        b = sample_sym(3, 5, Family.NEAR_SINGULAR_CLASS)
        assert np.min(np.abs(np.linalg.eigvalsh(b.entries))) <= 1e-6 + 1e-12

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            sample_sym(2, 0, "lattice")

    def test_fast_angle_agrees(self):
        for i in range(5):
            a = sample_spacetime(2, 3, Family.GAUSSIAN, i)
            assert fast_spacetime_angle(a) == pytest.approx(spacetime_angle(a).radians, abs=1e-9)

    @pytest.mark.parametrize("family", ["gaussian", "rank-one-coupled", "block-diagonal"])
    @pytest.mark.parametrize("n,c", [(1, 0.3), (2, HALF_PI + 0.2), (3, math.pi + 0.1)])
    def test_branch_sampler(self, family, n, c):
        b = DslBranch(n=n, c=c)
        for i in range(3):
            a = sample_in_branch(b, 11, family, i, "test")
            assert spacetime_angle(a).radians >= c
            assert in_Fcal(a, b)

    @pytest.mark.parametrize("n,c", [(1, 0.5), (3, -1.0), (3, 4.0)])
    def test_sl_branch_sampler(self, n, c):
        b = sample_in_sl_branch(n, c, 5, 2)
        assert lifted_angle(b).radians >= c


class TestReports:
    def test_outcome(self):
        assert Outcome(1.0, 2.0).ok
        assert not Outcome(1.0, 2.0, upper=False).ok
        assert Outcome(3.0, 2.0).excess == pytest.approx(1.0)

    def test_worst_case(self):
        report = VerificationReport(suite={"name": "demo"})
        report.record(Outcome(1.0, 2.0, label="a"))
        report.record(Outcome(3.0, 2.0, label="b"))
        report.record(Outcome(0.5, 1.0, upper=False, label="c"))
        assert report.checks == 3 and report.violations == 2
        assert not report.passed
        assert report.worst.label == "b"
        doc = report.to_dict()
        assert doc["pass"] is False and doc["worst"]["measured"] == 3.0

    def test_empty_report_passes(self):
        report = VerificationReport(suite={"name": "demo"})
        report.exclude(2)
        assert report.passed and report.worst is None
        assert ["near-singular excluded", "2"] in report.summary_rows()

    def test_digest(self):
        assert digest([1.0, 2.0]) == digest(np.array([1.0, 2.0]))
        assert digest([1.0, 2.0]) != digest([2.0, 1.0])
        assert len(digest(0.0)) == 16


class TestGoldenFixture:
    def test_check(self, golden):
        result = golden.check()
        assert result["angle_ok"]
        assert result["member"]
        assert not result["two_convex"]

    def test_phase(self, golden):
        assert golden.phase == pytest.approx(math.pi + 0.1)
        assert golden.expected_angle == pytest.approx(golden.phase)
        assert golden.to_document()["n"] == 4


class TestSuiteSpec:
    def test_defaults(self):
        spec = SuiteSpec(name="rotation-invariance")
        assert spec.dims == [1, 2, 3] and spec.samples == 1000

    def test_unknown_name(self):
        with pytest.raises(ValidationError):
            SuiteSpec(name="no-such-suite")

    def test_dims(self):
        with pytest.raises(ValidationError):
            SuiteSpec(name="rotation-invariance", dims=[0])

    def test_tolerance_overrides(self):
        spec = SuiteSpec(name="rotation-invariance", tolerances={"angle": 1e-6})
        assert spec.resolve_tolerances(ToleranceConfig()).angle == 1e-6
        with pytest.raises(ValueError):
            SuiteSpec(name="rotation-invariance", tolerances={"bogus": 1.0}).resolve_tolerances(ToleranceConfig())

    def test_registry(self):
        assert suite_names() == list(SUITES)
        assert len(SUITES) == 12


@pytest.mark.parametrize(
    "name,dims,samples",
    [
        ("rotation-invariance", [1, 2], 5),
        ("shear-invariance", [1, 2], 5),
        ("usc-at-S", [1, 2], 5),
        ("affine-slice-bound", [2], 3),
        ("eigenvalue-lemma", [2, 3], 5),
        ("time-slot-sign", [1, 2], 3),
        ("legendre-involution", [1], 2),
        ("rooftop-props", [1], 2),
        ("min-principle", [1], 2),
        ("joint-convexity", [1], 2),
        ("solve-and-verify", [1], 2),
    ],
)
def test_suite_passes(name, dims, samples):
    report = run_suite(SuiteSpec(name=name, dims=dims, samples=samples, seed=42))
    assert report.passed, report.to_dict()["worst"]
    assert report.checks > 0


def test_suite_is_deterministic():
    spec = SuiteSpec(name="shear-invariance", dims=[2], samples=4, seed=9)
    first = run_suite(spec).to_dict()
    second = run_suite(spec).to_dict()
    first.pop("runtime_ms")
    second.pop("runtime_ms")
    assert first == second
