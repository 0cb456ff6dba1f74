"""Discrete partial Legendre transform in the time variable.

    u*(tau, x) = min_t  u(t, x) - t tau      (over the t-grid)
    v*(t, x)   = max_tau v(tau, x) + t tau   (over the tau-grid)

Both are exact reductions over the grids, evaluated in blocks to bound memory.
"""

from typing import Optional
import logging

import numpy as np

from ..core.exceptions import GridFormatError
from .grids import GridFunction2D

logger = logging.getLogger(__name__)

__all__ = [
    "legendre_down",
    "legendre_up",
    "legendre_down_values",
    "legendre_up_values",
    "tau_grid",
    "time_lipschitz",
    "time_slopes",
]


def legendre_down_values(ts: np.ndarray, values: np.ndarray, taus: np.ndarray, chunk: int = 64) -> np.ndarray:
    """min_i values[i, ...] - ts[i] * tau for each tau; values has the t-axis first."""
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(values, dtype=float)
    taus = np.asarray(taus, dtype=float)
    trailing = (1,) * (values.ndim - 1)
    out = np.empty((taus.shape[0],) + values.shape[1:])
    t_col = ts.reshape((1, -1) + trailing)
    for start in range(0, taus.shape[0], chunk):
        block = taus[start:start + chunk].reshape((-1, 1) + trailing)
        out[start:start + chunk] = np.min(values[None, ...] - t_col * block, axis=1)
    return out


def legendre_up_values(taus: np.ndarray, values: np.ndarray, ts: np.ndarray, chunk: int = 64) -> np.ndarray:
    """max_k values[k, ...] + t * taus[k] for each t; values has the tau-axis first."""
    taus = np.asarray(taus, dtype=float)
    values = np.asarray(values, dtype=float)
    ts = np.asarray(ts, dtype=float)
    trailing = (1,) * (values.ndim - 1)
    out = np.empty((ts.shape[0],) + values.shape[1:])
    tau_col = taus.reshape((1, -1) + trailing)
    for start in range(0, ts.shape[0], chunk):
        block = ts[start:start + chunk].reshape((-1, 1) + trailing)
        out[start:start + chunk] = np.max(values[None, ...] + block * tau_col, axis=1)
    return out


def legendre_down(u: GridFunction2D, taus: np.ndarray, chunk: int = 64) -> GridFunction2D:
    """u*(tau, x) on the (tau, x) grid."""
    if u.axis != "t":
        raise GridFormatError(f"legendre_down expects a t-grid, got axis '{u.axis}'")
    values = legendre_down_values(u.ts, u.values, taus, chunk)
    return GridFunction2D(np.asarray(taus, dtype=float), u.xs, values, axis="tau")


def legendre_up(v: GridFunction2D, ts: np.ndarray, chunk: int = 64) -> GridFunction2D:
    """v*(t, x) on the (t, x) grid."""
    if v.axis != "tau":
        raise GridFormatError(f"legendre_up expects a tau-grid, got axis '{v.axis}'")
    values = legendre_up_values(v.ts, v.values, ts, chunk)
    return GridFunction2D(np.asarray(ts, dtype=float), v.xs, values, axis="t")


def time_slopes(ts: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Difference quotients along the t-axis (axis 0), one row fewer than values."""
    values = np.asarray(values, dtype=float)
    dt = np.diff(np.asarray(ts, dtype=float)).reshape((-1,) + (1,) * (values.ndim - 1))
    return np.diff(values, axis=0) / dt


def time_lipschitz(ts: np.ndarray, values: np.ndarray) -> float:
    """Largest |difference quotient| along the t-axis (axis 0)."""
    values = np.asarray(values, dtype=float)
    if values.shape[0] < 2:
        return 0.0
    return float(np.max(np.abs(time_slopes(ts, values))))


def tau_grid(lipschitz: float, count: int, bound: Optional[float] = None) -> np.ndarray:
    """Symmetric grid on [-L-1, L+1] with an odd node count so that tau = 0 is a node.

    ``bound`` replaces L + 1 when given.
    """
    half = float(bound) if bound is not None else float(lipschitz) + 1.0
    if not half > 0:
        raise GridFormatError(f"tau bound must be positive, got {half}")
    count = max(int(count), 3)
    if count % 2 == 0:
        count += 1
    grid = np.linspace(-half, half, count)
    grid[count // 2] = 0.0
    return grid
