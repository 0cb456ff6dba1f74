"""Discrete convexity diagnostics for grid functions on a (t, x) rectangle."""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence
import logging

import numpy as np

from ..core.exceptions import GridFormatError
from .grids import GridFunction2D
from .slices import AffineSlice

logger = logging.getLogger(__name__)

__all__ = [
    "SliceConvexity",
    "ConvexityReport",
    "second_differences_t",
    "second_differences_x",
    "discrete_hessians",
    "slice_second_differences",
    "discrete_convexity_report",
]


def second_differences_t(u: GridFunction2D) -> np.ndarray:
    """Centred second differences in the first coordinate, shape (Nt-2, Nx)."""
    v = u.values
    return (v[2:, :] - 2.0 * v[1:-1, :] + v[:-2, :]) / u.dt ** 2


def second_differences_x(u: GridFunction2D) -> np.ndarray:
    """Centred second differences in x, shape (Nt, Nx-2)."""
    v = u.values
    return (v[:, 2:] - 2.0 * v[:, 1:-1] + v[:, :-2]) / u.dx ** 2


def discrete_hessians(u: GridFunction2D) -> np.ndarray:
    """Centred 2x2 Hessians at interior nodes, shape (Nt-2, Nx-2, 2, 2)."""
    v = u.values
    utt = second_differences_t(u)[:, 1:-1]
    uxx = second_differences_x(u)[1:-1, :]
    utx = (v[2:, 2:] - v[2:, :-2] - v[:-2, 2:] + v[:-2, :-2]) / (4.0 * u.dt * u.dx)
    h = np.empty(utt.shape + (2, 2))
    h[..., 0, 0] = utt
    h[..., 1, 1] = uxx
    h[..., 0, 1] = utx
    h[..., 1, 0] = utx
    return h


def slice_second_differences(u: GridFunction2D, sl: AffineSlice) -> np.ndarray:
    """Second differences of x -> u(t0 + v x, x) at x-grid nodes whose stencil stays in the open t-range.

    Values come from bilinear interpolation, which is exact at grid nodes.
    """
    if sl.n != 1:
        raise GridFormatError("grid slices need a one-dimensional direction")
    xs = u.xs
    t = sl.t0 + sl.V[0] * xs
    slack = 1e-12 * max(1.0, abs(u.ts[-1]))
    interior = (t > u.ts[0] + slack) & (t < u.ts[-1] - slack)
    vals = u.interpolate(t, xs)
    ok = interior[:-2] & interior[1:-1] & interior[2:]
    d2 = (vals[2:] - 2.0 * vals[1:-1] + vals[:-2]) / u.dx ** 2
    return d2[ok]


@dataclass
class SliceConvexity:
    """Minimum slice second difference for one slice (None when no stencil fits)."""

    slice: AffineSlice
    min_second_diff: Optional[float]
    stencils: int

    def to_dict(self) -> dict:
        return {"slice": self.slice.to_dict(), "min_second_diff": self.min_second_diff, "stencils": self.stencils}


@dataclass
class ConvexityReport:
    """Minima of discrete second-order quantities over interior nodes."""

    min_second_diff_t: float
    min_second_diff_x: float
    min_joint_hessian_eig: float
    slices: List[SliceConvexity] = field(default_factory=list)
    tolerance_t: float = 0.0
    tolerance_x: float = 0.0

    @property
    def min_slice_second_diff(self) -> Optional[float]:
        values = [s.min_second_diff for s in self.slices if s.min_second_diff is not None]
        return min(values) if values else None

    def time_convex(self) -> bool:
        return self.min_second_diff_t >= -self.tolerance_t

    def jointly_convex(self) -> bool:
        return self.min_joint_hessian_eig >= -max(self.tolerance_t, self.tolerance_x)

    def slices_above(self, threshold: float) -> bool:
        m = self.min_slice_second_diff
        return m is None or m >= threshold - self.tolerance_x

    def to_dict(self) -> dict:
        return {
            "min_second_diff_t": self.min_second_diff_t,
            "min_second_diff_x": self.min_second_diff_x,
            "min_joint_hessian_eig": self.min_joint_hessian_eig,
            "min_slice_second_diff": self.min_slice_second_diff,
            "slice_count": len(self.slices),
            "tolerance_t": self.tolerance_t,
            "tolerance_x": self.tolerance_x,
        }


def discrete_convexity_report(
    u: GridFunction2D,
    slices: Optional[Sequence[AffineSlice]] = None,
    tol: float = 1e-8,
    interior_rows_only: bool = False,
) -> ConvexityReport:
    """Second-difference minima in t, in x, of the discrete Hessian and along slices.

    Tolerances are scaled as tol / step^2. ``interior_rows_only`` drops the
    t = first/last rows from the x-second-difference minimum.
    """
    d2t = second_differences_t(u)
    d2x = second_differences_x(u)
    if interior_rows_only and d2x.shape[0] > 2:
        d2x = d2x[1:-1]
    hess = discrete_hessians(u)
    min_eig = float(np.min(np.linalg.eigvalsh(hess))) if hess.size else float("inf")

    slice_rows: List[SliceConvexity] = []
    for sl in slices or ():
        d2 = slice_second_differences(u, sl)
        slice_rows.append(SliceConvexity(sl, float(np.min(d2)) if d2.size else None, int(d2.size)))

    return ConvexityReport(
        min_second_diff_t=float(np.min(d2t)) if d2t.size else float("inf"),
        min_second_diff_x=float(np.min(d2x)) if d2x.size else float("inf"),
        min_joint_hessian_eig=min_eig,
        slices=slice_rows,
        tolerance_t=tol / u.dt ** 2,
        tolerance_x=tol / u.dx ** 2,
    )
