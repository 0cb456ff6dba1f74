"""Lifted Lagrangian angles.

theta(B) = sum_i arctan(lambda_i(B)) for B symmetric n x n, valued in
(-n pi/2, n pi/2).

Theta(A) for a space-time matrix A is the sum of principal arguments of the
eigenvalues of I_n + iA, I_n = diag(0, 1, ..., 1). On the singular class
{diag(0, A+)} the eigenvalue 0 has no argument and Theta is defined as
theta(A+) + pi/2, the upper semi-continuous extension.

Two independent routes compute Theta off the singular class:

- spectral: arguments of the complex spectrum;
- Schur: theta(A+) + arg(i a00 + a^T (I + iA+)^{-1} a), the difference
  lying in [-pi/2, pi/2] with the endpoints reached only when a = 0.

`spacetime_angle` runs both, returns the Schur value and fails loudly when
they disagree.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple
import logging
import math

import numpy as np

from ..core.exceptions import (
    BranchCutViolation,
    CrossCheckMismatch,
    NonConvergence,
    SingularClassInput,
    SingularSystem,
)
from ..core.schema import EigenConfig, ToleranceConfig
from ..linalg.matrices import SpaceTimeMatrix, SymMatrix, as_sym
from ..linalg.spectral import eig_complex_spacetime, eig_sym, principal_arg, solve_complex_linear

logger = logging.getLogger(__name__)

__all__ = [
    "AnglePath",
    "AngleValue",
    "lifted_angle",
    "lifted_angle_of_eigenvalues",
    "in_singular_class",
    "is_near_singular",
    "spacetime_angle_spectral",
    "spacetime_angle_schur",
    "spacetime_angle",
    "schur_coupling",
]

HALF_PI = 0.5 * math.pi
_DEFAULT_TOL = ToleranceConfig()


class AnglePath(str, Enum):
    """Which computation produced an angle."""
    SPECTRAL = "Spectral"
    SCHUR = "Schur"
    SINGULAR_CLASS = "SingularClass"


@dataclass(frozen=True)
class AngleValue:
    """An angle in radians with its provenance."""

    radians: float
    path: AnglePath
    certified_interval: Optional[Tuple[float, float]] = None
    near_singular: bool = False
    spectral: Optional[float] = None
    schur: Optional[float] = None
    disputed_interval: Optional[Tuple[float, float]] = None

    def __float__(self) -> float:
        return self.radians

    def to_dict(self) -> dict:
        return {
            "radians": self.radians,
            "path": self.path.value,
            "certified_interval": list(self.certified_interval) if self.certified_interval else None,
            "near_singular": self.near_singular,
            "spectral": self.spectral,
            "schur": self.schur,
            "disputed_interval": list(self.disputed_interval) if self.disputed_interval else None,
        }


def lifted_angle_of_eigenvalues(eigenvalues: np.ndarray) -> float:
    return float(np.sum(np.arctan(eigenvalues)))


def lifted_angle(a: SymMatrix, config: Optional[EigenConfig] = None) -> AngleValue:
    """theta(A) = sum of arctangents of the eigenvalues of A."""
    a = as_sym(a)
    return AngleValue(lifted_angle_of_eigenvalues(eig_sym(a, config)), AnglePath.SPECTRAL)


def in_singular_class(a: SpaceTimeMatrix, tol: float = 0.0) -> bool:
    """True iff |a00| <= tol and |a_vec|_inf <= tol."""
    return a.coupling_scale() <= tol


def is_near_singular(a: SpaceTimeMatrix, tolerances: ToleranceConfig = _DEFAULT_TOL) -> bool:
    """True inside the warning band (singular_class, near_singular_band)."""
    scale = a.coupling_scale()
    return tolerances.singular_class < scale < tolerances.near_singular_band


def _singular_value(a: SpaceTimeMatrix, config: Optional[EigenConfig]) -> AngleValue:
    radians = lifted_angle(a.a_plus, config).radians + HALF_PI
    return AngleValue(radians, AnglePath.SINGULAR_CLASS, spectral=radians)


def spacetime_angle_spectral(
    a: SpaceTimeMatrix,
    tolerances: ToleranceConfig = _DEFAULT_TOL,
    config: Optional[EigenConfig] = None,
) -> AngleValue:
    """Theta(A) from the complex spectrum, or theta(A+) + pi/2 on the singular class."""
    if in_singular_class(a, tolerances.singular_class):
        return _singular_value(a, config)
    spectrum = eig_complex_spacetime(a, config)
    # Roots below this magnitude carry no reliable argument.
    floor = 64.0 * np.finfo(float).eps * max(1.0, a.norm())
    radians = math.fsum(principal_arg(z, floor) for z in spectrum.values)
    return AngleValue(
        radians, AnglePath.SPECTRAL, near_singular=is_near_singular(a, tolerances), spectral=radians
    )


def schur_coupling(a: SpaceTimeMatrix, tol: float = 1e-10) -> complex:
    """i a00 + a^T (I + iA+)^{-1} a (no conjugation)."""
    m = np.eye(a.n) + 1j * a.a_plus.entries
    w = solve_complex_linear(m, a.a_vec.astype(complex), tol)
    return complex(1j * a.a00 + a.a_vec @ w)


def spacetime_angle_schur(
    a: SpaceTimeMatrix,
    tolerances: ToleranceConfig = _DEFAULT_TOL,
    config: Optional[EigenConfig] = None,
) -> AngleValue:
    """Theta(A) = theta(A+) + arg(i a00 + a^T (I + iA+)^{-1} a).

    Raises `SingularClassInput` on the singular class and propagates
    `SingularSystem` from the linear solve.
    """
    if in_singular_class(a, tolerances.singular_class):
        raise SingularClassInput(
            "Schur path is undefined on the singular class",
            context={"operation": "spacetime_angle_schur", "measured": repr(a.coupling_scale())},
        )
    z = schur_coupling(a, tolerances.solve_residual)
    # Re(z) >= 0 analytically; clamp rounding so the argument stays in [-pi/2, pi/2].
    z = complex(max(z.real, 0.0), z.imag)
    radians = lifted_angle(a.a_plus, config).radians + principal_arg(z, 0.0)
    return AngleValue(
        radians, AnglePath.SCHUR, near_singular=is_near_singular(a, tolerances), schur=radians
    )


def spacetime_angle(
    a: SpaceTimeMatrix,
    tolerances: ToleranceConfig = _DEFAULT_TOL,
    config: Optional[EigenConfig] = None,
) -> AngleValue:
    """Theta(A) by the Schur route, cross-checked against the spectral route.

    Raises `CrossCheckMismatch` when the routes differ by more than
    ``tolerances.cross_check`` outside the near-singular band. Inside the
    band the disagreement is kept as ``disputed_interval`` [lo, hi].
    """
    if in_singular_class(a, tolerances.singular_class):
        return _singular_value(a, config)

    near = is_near_singular(a, tolerances)
    schur: Optional[AngleValue] = None
    spectral: Optional[AngleValue] = None
    try:
        schur = spacetime_angle_schur(a, tolerances, config)
    except SingularSystem:
        logger.warning("Schur path unavailable, falling back to spectral")

    try:
        spectral = spacetime_angle_spectral(a, tolerances, config)
    except (BranchCutViolation, NonConvergence):
        if schur is None:
            raise
        logger.debug("spectral path unavailable near the singular class (near=%s)", near)

    if schur is None:
        assert spectral is not None
        return spectral
    if spectral is None:
        return schur

    lo, hi = sorted((schur.radians, spectral.radians))
    width = hi - lo
    if width > tolerances.cross_check and not near:
        raise CrossCheckMismatch(
            "spectral and Schur angles disagree",
            context={
                "operation": "spacetime_angle",
                "measured": repr(width),
                "threshold": repr(tolerances.cross_check),
                "value": f"schur={schur.radians!r} spectral={spectral.radians!r}",
            },
        )
    interval = (lo, hi) if width <= tolerances.certified_width else None
    disputed = (lo, hi) if width > tolerances.cross_check else None
    if disputed is not None:
        logger.warning("near-singular angle paths disagree by %.3e; reporting [%.17g, %.17g]", width, lo, hi)
    elif interval is None and not near:
        logger.warning("angle paths agree within %.1e but not the certified width", width)
    return AngleValue(
        schur.radians,
        AnglePath.SCHUR,
        certified_interval=interval,
        near_singular=near,
        spectral=spectral.radians,
        schur=schur.radians,
        disputed_interval=disputed,
    )
