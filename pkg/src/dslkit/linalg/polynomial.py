"""Characteristic polynomials and simultaneous polynomial root finding.

`faddeev_leverrier` produces the monic characteristic polynomial of a complex
matrix; `aberth_roots` finds all its roots at once with the Aberth-Ehrlich
iteration started on a circle, followed by guarded Newton polishing.
"""

from typing import Tuple
import logging

import numpy as np

from ..core.exceptions import NonConvergence

logger = logging.getLogger(__name__)

__all__ = ["faddeev_leverrier", "aberth_roots", "polynomial_backward_error"]

_EPS = np.finfo(float).eps


def faddeev_leverrier(m: np.ndarray) -> np.ndarray:
    """Coefficients of det(z I - M), highest degree first (leading 1)."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    eye = np.eye(n, dtype=complex)
    mk = np.zeros_like(m)
    for k in range(1, n + 1):
        mk = m @ mk + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(m @ mk) / k
    return coeffs


def polynomial_backward_error(coeffs: np.ndarray, roots: np.ndarray) -> float:
    """max_i |p(z_i)| / sum_k |c_k| |z_i|^k, the relative backward error of each root."""
    if roots.size == 0:
        return 0.0
    value = np.abs(np.polyval(coeffs, roots))
    bound = np.polyval(np.abs(coeffs), np.abs(roots))
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(bound > 0, value / bound, 0.0)
    return float(np.max(rel))


def aberth_roots(
    coeffs: np.ndarray, max_iter: int = 500, polish_steps: int = 3
) -> Tuple[np.ndarray, int]:
    """All roots of the polynomial `coeffs` (highest degree first).

    Returns (roots, iterations). Raises `NonConvergence` when the iteration
    budget is exhausted and the roots still have a large backward error.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    coeffs = coeffs / coeffs[0]
    deg = coeffs.shape[0] - 1
    if deg == 0:
        return np.zeros(0, dtype=complex), 0
    if deg == 1:
        return np.array([-coeffs[1]]), 0
    deriv = np.polyder(coeffs)

    # Initial circle centred at the root mean; radius from the Fujiwara bound of the shifted polynomial.
    centre = -coeffs[1] / deg
    shifted = _taylor_shift(coeffs, centre)
    radius = 2.0 * float(np.max(np.abs(shifted[1:]) ** (1.0 / np.arange(1, deg + 1))))
    radius = max(radius, 1e-8 * (1.0 + abs(centre)))
    angles = 2.0 * np.pi * np.arange(deg) / deg + 0.4
    z = centre + radius * np.exp(1j * angles)

    active = np.ones(deg, dtype=bool)
    iterations = 0
    for iterations in range(1, max_iter + 1):
        p = np.polyval(coeffs, z)
        dp = np.polyval(deriv, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        repulsion = np.sum(1.0 / diff, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = np.where(dp != 0, p / dp, p)
            step = newton / (1.0 - newton * repulsion)
        step = np.where(np.isfinite(step), step, 0.0)
        step[~active] = 0.0
        z = z - step
        active = np.abs(step) > 4.0 * _EPS * np.maximum(np.abs(z), 1.0)
        if not np.any(active):
            break

    for _ in range(polish_steps):
        z = _newton_polish(coeffs, deriv, z)

    error = polynomial_backward_error(coeffs, z)
    if np.any(active) and error > 1e-10:
        raise NonConvergence(
            f"Aberth iteration did not converge in {max_iter} steps",
            context={"operation": "aberth_roots", "measured": repr(error), "value": str(deg)},
        )
    return z, iterations


def _newton_polish(coeffs: np.ndarray, deriv: np.ndarray, z: np.ndarray) -> np.ndarray:
    """One Newton step per root, kept only where it reduces |p|."""
    p = np.polyval(coeffs, z)
    dp = np.polyval(deriv, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        candidate = z - p / dp
    ok = np.isfinite(candidate)
    better = np.zeros_like(ok)
    better[ok] = np.abs(np.polyval(coeffs, candidate[ok])) < np.abs(p[ok])
    return np.where(better, candidate, z)


def _taylor_shift(coeffs: np.ndarray, centre: complex) -> np.ndarray:
    """Coefficients of p(w + centre) in w, highest degree first."""
    out = coeffs.copy()
    deg = out.shape[0] - 1
    # Repeated synthetic division (Horner's scheme).
    for i in range(deg):
        for j in range(1, deg + 1 - i):
            out[j] += centre * out[j - 1]
    return out
