"""Membership predicates for the SL/DSL branches and the convexity cones.

All predicates are closed-set tests with an explicit tolerance ``tol``:
a matrix is a member when its defining quantity is >= threshold - tol.
"""

from dataclasses import dataclass
from typing import Optional, Union
import logging
import math

import numpy as np

from ..angles.lifted import lifted_angle_of_eigenvalues, spacetime_angle
from ..core.exceptions import HypothesisViolation, MatrixFormatError
from ..core.schema import EigenConfig, ToleranceConfig
from ..linalg.matrices import SpaceTimeMatrix, SymMatrix, as_sym
from ..linalg.spectral import eig_sym, eigh_sym
from .branches import DslBranch, SlBranch

logger = logging.getLogger(__name__)

__all__ = [
    "in_F",
    "in_Fcal",
    "in_dual_F",
    "in_P",
    "in_T",
    "is_two_convex",
    "EigenvalueConsequences",
    "eigenvalue_consequences",
    "SchurTerms",
    "schur_decomposition_terms",
    "TimeSlotSign",
    "time_slot_sign",
]

HALF_PI = 0.5 * math.pi
_DEFAULT_TOL = ToleranceConfig()


def _check_dim(actual: int, expected: int, what: str) -> None:
    if actual != expected:
        raise MatrixFormatError(
            f"{what}: matrix dimension {actual} does not match branch dimension {expected}",
            context={"value_name": "n", "value": str(actual)},
        )


def in_F(a: SymMatrix, b: SlBranch, tol: float = 1e-9, config: Optional[EigenConfig] = None) -> bool:
    """theta(A) >= c - tol."""
    a = as_sym(a)
    _check_dim(a.n, b.n, "in_F")
    return lifted_angle_of_eigenvalues(eig_sym(a, config)) >= b.c - tol


def in_Fcal(
    a: SpaceTimeMatrix,
    b: DslBranch,
    tol: float = 1e-9,
    tolerances: ToleranceConfig = _DEFAULT_TOL,
    config: Optional[EigenConfig] = None,
) -> bool:
    """Theta(A) >= c - tol; propagates `CrossCheckMismatch`."""
    _check_dim(a.n, b.n, "in_Fcal")
    return spacetime_angle(a, tolerances, config).radians >= b.c - tol


def in_dual_F(a: SymMatrix, b: SlBranch, tol: float = 1e-9, config: Optional[EigenConfig] = None) -> bool:
    """Membership in the Dirichlet dual, which for F_c is F_{-c}."""
    a = as_sym(a)
    _check_dim(a.n, b.n, "in_dual_F")
    return lifted_angle_of_eigenvalues(eig_sym(a, config)) >= b.dual_phase - tol


def _sym_of(a: Union[SymMatrix, SpaceTimeMatrix, np.ndarray]) -> SymMatrix:
    return a.as_sym() if isinstance(a, SpaceTimeMatrix) else as_sym(a)


def in_P(a: Union[SymMatrix, SpaceTimeMatrix], tol: float = 1e-9) -> bool:
    """Positive semidefinite: smallest eigenvalue >= -tol."""
    return float(eig_sym(_sym_of(a))[-1]) >= -tol


def in_T(a: Union[SymMatrix, SpaceTimeMatrix], tol: float = 0.0) -> bool:
    """Nonnegative trace."""
    return _sym_of(a).trace() >= -tol


def is_two_convex(a: Union[SymMatrix, SpaceTimeMatrix], tol: float = 1e-9) -> bool:
    """Every pair of eigenvalues has a nonnegative sum (vacuous for 1x1)."""
    values = eig_sym(_sym_of(a))
    if values.shape[0] < 2:
        return True
    return float(values[-1] + values[-2]) >= -tol


@dataclass(frozen=True)
class EigenvalueConsequences:
    """Conclusions of the top-two-branch eigenvalue lemma, with their hypotheses."""

    theta: float
    top_hypothesis: bool
    top_branch_psd_ok: bool
    second_hypothesis: bool
    second_branch_dominance_ok: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def eigenvalue_consequences(
    a: SymMatrix, tol: float = 1e-9, config: Optional[EigenConfig] = None
) -> EigenvalueConsequences:
    """Evaluate both implications; each is vacuously true when its hypothesis fails.

    - theta >= (n-1)pi/2  implies all eigenvalues >= 0;
    - theta >= (n-2)pi/2  implies lambda_{n-1} >= |lambda_n|.
    """
    a = as_sym(a)
    values = eig_sym(a, config)
    n = a.n
    theta = lifted_angle_of_eigenvalues(values)
    top_hyp = theta >= (n - 1) * HALF_PI
    second_hyp = theta >= (n - 2) * HALF_PI
    psd = bool(values[-1] >= -tol)
    if n >= 2:
        dominance = bool(values[-2] >= abs(values[-1]) - tol)
    else:
        dominance = True
    return EigenvalueConsequences(
        theta=theta,
        top_hypothesis=bool(top_hyp),
        top_branch_psd_ok=bool(psd or not top_hyp),
        second_hypothesis=bool(second_hyp),
        second_branch_dominance_ok=bool(dominance or not second_hyp),
    )


@dataclass(frozen=True)
class SchurTerms:
    """Split of i a00 + a^T (I + iA+)^{-1} a in an eigenbasis of A+.

    With b = U^T a and weights mu_i = b_i^2 / (1 + lambda_i^2):
    real part = sum mu_i, imaginary part = a00 - sum mu_i lambda_i.
    """

    eigenvalues: np.ndarray
    weights: np.ndarray
    real: float
    imag: float

    @property
    def weighted_mean(self) -> Optional[float]:
        total = float(np.sum(self.weights))
        if total == 0.0:
            return None
        return float(np.dot(self.weights, self.eigenvalues) / total)

    def average_bound_holds(self, a00: float, tol: float = 1e-9) -> bool:
        """For a00 <= 0: imag <= -lambda_min * sum(mu). Vacuous for a00 > 0 or zero weights."""
        total = float(np.sum(self.weights))
        if a00 > 0.0 or total == 0.0:
            return True
        lam_min = float(self.eigenvalues[-1])
        return self.imag <= -lam_min * total + tol * max(1.0, abs(lam_min) * total)


def schur_decomposition_terms(a: SpaceTimeMatrix, config: Optional[EigenConfig] = None) -> SchurTerms:
    values, vecs = eigh_sym(a.a_plus, config)
    b = vecs.T @ a.a_vec
    weights = b ** 2 / (1.0 + values ** 2)
    return SchurTerms(
        eigenvalues=values,
        weights=weights,
        real=float(np.sum(weights)),
        imag=float(a.a00 - np.dot(weights, values)),
    )


@dataclass(frozen=True)
class TimeSlotSign:
    """Sign conclusions on the time-time entry of a top-two-branch member."""

    a00: float
    coupling_norm: float
    a00_nonneg: bool
    a00_pos_given_avec: bool
    average_bound_ok: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def time_slot_sign(
    a: SpaceTimeMatrix,
    b: DslBranch,
    tol: float = 1e-9,
    coupling_floor: float = 1e-6,
    tolerances: ToleranceConfig = _DEFAULT_TOL,
    config: Optional[EigenConfig] = None,
) -> TimeSlotSign:
    """Check a00 >= 0, and a00 > 0 whenever |a_vec| > coupling_floor.

    Requires c >= (n-1)pi/2 and A in the branch; otherwise raises
    `HypothesisViolation`.
    """
    _check_dim(a.n, b.n, "time_slot_sign")
    if b.c < (b.n - 1) * HALF_PI - tol:
        raise HypothesisViolation(
            "time_slot_sign requires a phase in the top two branches",
            context={"operation": "time_slot_sign", "value": repr(b.c)},
        )
    if not in_Fcal(a, b, tol, tolerances, config):
        raise HypothesisViolation(
            "matrix is not a member of the branch",
            context={"operation": "time_slot_sign", "value": repr(b.c)},
        )
    norm = float(np.linalg.norm(a.a_vec))
    terms = schur_decomposition_terms(a, config)
    return TimeSlotSign(
        a00=a.a00,
        coupling_norm=norm,
        a00_nonneg=a.a00 >= -tol,
        a00_pos_given_avec=(norm <= coupling_floor) or (a.a00 > tol),
        average_bound_ok=terms.average_bound_holds(a.a00, tol),
    )
