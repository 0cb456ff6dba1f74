"""Cyclic Jacobi eigensolver for small dense real symmetric matrices."""

from typing import Tuple
import logging

import numpy as np

from ..core.exceptions import NonConvergence

logger = logging.getLogger(__name__)

__all__ = ["jacobi_eigh"]


def jacobi_eigh(
    a: np.ndarray, threshold: float = 1e-14, max_sweeps: int = 100
) -> Tuple[np.ndarray, np.ndarray]:
    """Return (eigenvalues descending, orthonormal eigenvectors as columns).

    Sweeps rotate every off-diagonal pair in row order until the off-diagonal
    Frobenius norm drops to ``threshold * |A|_F``.
    """
    work = np.array(a, dtype=float, copy=True)
    n = work.shape[0]
    vecs = np.eye(n)
    scale = float(np.linalg.norm(work))
    if n == 1 or scale == 0.0:
        return _sorted(np.diag(work).copy(), vecs)

    limit = threshold * scale
    for sweep in range(max_sweeps):
        off = float(np.sqrt(np.sum(np.triu(work, 1) ** 2) * 2.0))
        if off <= limit:
            return _sorted(np.diag(work).copy(), vecs)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                if apq == 0.0:
                    continue
                theta = (work[q, q] - work[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c

                col_p = work[:, p].copy()
                col_q = work[:, q].copy()
                work[:, p] = c * col_p - s * col_q
                work[:, q] = s * col_p + c * col_q
                row_p = work[p, :].copy()
                row_q = work[q, :].copy()
                work[p, :] = c * row_p - s * row_q
                work[q, :] = s * row_p + c * row_q
                work[p, q] = work[q, p] = 0.0

                v_p = vecs[:, p].copy()
                v_q = vecs[:, q].copy()
                vecs[:, p] = c * v_p - s * v_q
                vecs[:, q] = s * v_p + c * v_q

    raise NonConvergence(
        f"Jacobi did not converge in {max_sweeps} sweeps",
        context={"operation": "jacobi_eigh", "value_name": "n", "value": str(n)},
    )


def _sorted(w: np.ndarray, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]
