"""Verification reports produced by the suite runner."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
import hashlib
import logging

import numpy as np

logger = logging.getLogger(__name__)

__all__ = ["Outcome", "WorstCase", "VerificationReport", "digest"]


def digest(*arrays: Any) -> str:
    """Short content hash identifying a sampled input."""
    h = hashlib.sha256()
    for a in arrays:
        h.update(np.ascontiguousarray(np.asarray(a, dtype=float)).tobytes())
    return h.hexdigest()[:16]


@dataclass(frozen=True)
class Outcome:
    """One measured check: ``measured <= threshold`` (upper) or ``>=`` (lower)."""

    measured: float
    threshold: float
    upper: bool = True
    input_digest: str = ""
    dim: int = 0
    label: str = ""

    @property
    def excess(self) -> float:
        """Positive when the check fails."""
        return self.measured - self.threshold if self.upper else self.threshold - self.measured

    @property
    def ok(self) -> bool:
        return bool(self.excess <= 0.0)


@dataclass(frozen=True)
class WorstCase:
    input_digest: str
    measured: float
    threshold: float
    dim: int
    label: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "input_digest": self.input_digest,
            "measured": self.measured,
            "threshold": self.threshold,
            "dim": self.dim,
            "label": self.label,
        }


@dataclass
class VerificationReport:
    """Result of one suite run; ``passed`` iff there are no violations."""

    suite: Dict[str, Any]
    violations: int = 0
    checks: int = 0
    worst: Optional[WorstCase] = None
    runtime_ms: float = 0.0
    near_singular_excluded: int = 0
    details: Dict[str, Any] = field(default_factory=dict)
    _worst_excess: float = field(default=-np.inf, repr=False)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def record(self, outcome: Outcome) -> None:
        """Count an outcome and keep the one closest to (or furthest past) its threshold."""
        self.checks += 1
        if not outcome.ok:
            self.violations += 1
        excess = outcome.excess
        if self.worst is None or excess > self._worst_excess:
            self._worst_excess = excess
            self.worst = WorstCase(
                outcome.input_digest, float(outcome.measured), float(outcome.threshold), outcome.dim, outcome.label
            )

    def exclude(self, count: int = 1) -> None:
        self.near_singular_excluded += count

    def merge_details(self, key: str, value: Any) -> None:
        self.details[key] = value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "pass": self.passed,
            "violations": self.violations,
            "checks": self.checks,
            "worst": self.worst.to_dict() if self.worst else None,
            "near_singular_excluded": self.near_singular_excluded,
            "details": self.details,
            "runtime_ms": self.runtime_ms,
        }

    def summary_rows(self) -> List[List[str]]:
        rows = [
            ["suite", str(self.suite.get("name"))],
            ["pass", "yes" if self.passed else "no"],
            ["checks", str(self.checks)],
            ["violations", str(self.violations)],
            ["near-singular excluded", str(self.near_singular_excluded)],
            ["runtime", f"{self.runtime_ms:.1f} ms"],
        ]
        if self.worst:
            rows.append(["worst", f"{self.worst.measured:.3e} vs {self.worst.threshold:.3e} ({self.worst.label})"])
        return rows
