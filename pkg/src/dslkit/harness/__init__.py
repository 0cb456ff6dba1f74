"""Seeded samplers, the golden fixture and the named verification suites."""

from .fixtures import GoldenFixture, golden_fixture
from .reports import VerificationReport
from .sampling import Family, sample_in_branch, sample_in_sl_branch, sample_spacetime, sample_sym
from .suites import SUITES, SuiteSpec, run_suite, suite_names

__all__ = [
    "Family",
    "sample_sym",
    "sample_spacetime",
    "sample_in_branch",
    "sample_in_sl_branch",
    "GoldenFixture",
    "golden_fixture",
    "VerificationReport",
    "SUITES",
    "SuiteSpec",
    "run_suite",
    "suite_names",
]
