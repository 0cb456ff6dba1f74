"""Spectral primitives used by the angle functions.

- `eig_sym`: real symmetric eigenvalues (cyclic Jacobi), descending.
- `eig_complex_spacetime`: spectrum of I_n + iA with I_n = diag(0, 1, ..., 1),
  from the Faddeev-LeVerrier characteristic polynomial and Aberth roots,
  matched against `scipy.linalg.eigvals`.
- `principal_arg`: argument in (-pi, pi) off the cut (-inf, 0].
- `solve_complex_linear`: dense complex solve with condition and residual checks.
- `det_lu`: determinant by LU factorization, the independent cross-check.
"""

from typing import Optional
import logging
import math

import numpy as np
import scipy.linalg
import scipy.optimize

from ..core.exceptions import BranchCutViolation, CrossCheckMismatch, SingularSystem
from ..core.schema import EigenConfig
from .jacobi import jacobi_eigh
from .matrices import ComplexSpectrum, SpaceTimeMatrix, SymMatrix
from .polynomial import aberth_roots, faddeev_leverrier, polynomial_backward_error

logger = logging.getLogger(__name__)

__all__ = [
    "eig_sym",
    "eigh_sym",
    "spacetime_pencil",
    "eig_complex_spacetime",
    "spectrum_gap",
    "principal_arg",
    "ARG_UNDERFLOW",
    "solve_complex_linear",
    "det_lu",
]

ARG_UNDERFLOW = np.finfo(float).tiny
_DEFAULT_EIGEN = EigenConfig()


def eigh_sym(a: SymMatrix, config: Optional[EigenConfig] = None):
    """Eigenvalues (descending) and eigenvectors (columns) of a symmetric matrix."""
    cfg = config or _DEFAULT_EIGEN
    return jacobi_eigh(a.entries, cfg.jacobi_threshold, cfg.jacobi_max_sweeps)


def eig_sym(a: SymMatrix, config: Optional[EigenConfig] = None) -> np.ndarray:
    """Eigenvalues of `a` sorted descending."""
    values, _ = eigh_sym(a, config)
    return values


def spacetime_pencil(a: SpaceTimeMatrix) -> np.ndarray:
    """The complex symmetric matrix I_n + iA with I_n = diag(0, 1, ..., 1)."""
    m = 1j * a.full()
    m[np.arange(1, a.n + 1), np.arange(1, a.n + 1)] += 1.0
    return m


def eig_complex_spacetime(a: SpaceTimeMatrix, config: Optional[EigenConfig] = None) -> ComplexSpectrum:
    """Eigenvalues of I_n + iA.

    The matrix is scaled to unit norm before the characteristic polynomial is
    formed; roots are scaled back. Raises `NonConvergence` from the root finder
    and `CrossCheckMismatch` when the roots stray from the LAPACK spectrum.
    """
    cfg = config or _DEFAULT_EIGEN
    m = spacetime_pencil(a)
    scale = max(1.0, float(np.linalg.norm(m, ord=2)))
    coeffs = faddeev_leverrier(m / scale)
    roots, iterations = aberth_roots(coeffs, cfg.aberth_max_iter, cfg.polish_steps)
    residual = polynomial_backward_error(coeffs, roots)
    roots = roots * scale
    gap = spectrum_gap(roots, scipy.linalg.eigvals(m))
    if gap > cfg.spectrum_cross_check * scale:
        raise CrossCheckMismatch(
            "Aberth roots disagree with the LAPACK spectrum",
            context={
                "operation": "eig_complex_spacetime",
                "measured": repr(gap),
                "threshold": repr(cfg.spectrum_cross_check * scale),
            },
        )
    order = np.lexsort((roots.imag, roots.real))
    logger.debug("complex spectrum n=%d iterations=%d residual=%.3e", a.n, iterations, residual)
    return ComplexSpectrum(values=roots[order], residual=residual, iterations=iterations)


def spectrum_gap(a: np.ndarray, b: np.ndarray) -> float:
    """Largest distance between paired roots under the closest one-to-one pairing."""
    cost = np.abs(np.subtract.outer(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)))
    rows, cols = scipy.optimize.linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols])) if rows.size else 0.0


def principal_arg(z: complex, threshold: float = ARG_UNDERFLOW) -> float:
    """Argument of `z` in (-pi, pi).

    Raises `BranchCutViolation` on the closed negative real axis or when
    |z| <= threshold.
    """
    z = complex(z)
    if abs(z) <= threshold:
        raise BranchCutViolation(
            "argument requested at (numerically) zero",
            context={"operation": "principal_arg", "value": repr(z), "threshold": repr(threshold)},
        )
    if z.imag == 0.0 and z.real < 0.0:
        raise BranchCutViolation(
            "argument requested on the negative real axis",
            context={"operation": "principal_arg", "value": repr(z)},
        )
    return math.atan2(z.imag, z.real)


def solve_complex_linear(m: np.ndarray, b: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Solve M x = b for complex M; the residual must satisfy |Mx - b| <= tol |b|."""
    m = np.asarray(m, dtype=complex)
    b = np.asarray(b, dtype=complex)
    cond = float(np.linalg.cond(m))
    if not np.isfinite(cond) or cond * tol >= 1.0:
        raise SingularSystem(
            f"matrix condition number {cond:.3e} exceeds 1/tol",
            context={"operation": "solve_complex_linear", "measured": repr(cond), "threshold": repr(1.0 / tol)},
        )
    try:
        x = np.linalg.solve(m, b)
    except np.linalg.LinAlgError as e:
        raise SingularSystem("linear solve failed", context={"operation": "solve_complex_linear"}, cause=e)
    residual = float(np.linalg.norm(m @ x - b))
    bound = tol * float(np.linalg.norm(b))
    if residual > bound:
        raise SingularSystem(
            "linear solve residual above tolerance",
            context={"operation": "solve_complex_linear", "measured": repr(residual), "threshold": repr(bound)},
        )
    return x


def det_lu(m: np.ndarray) -> complex:
    """Determinant from the LU factorization with partial pivoting."""
    m = np.asarray(m, dtype=complex)
    lu, piv = scipy.linalg.lu_factor(m, check_finite=True)
    swaps = int(np.count_nonzero(piv != np.arange(piv.shape[0])))
    sign = -1.0 if swaps % 2 else 1.0
    return complex(sign * np.prod(np.diag(lu)))
