"""Affine slices, grid functions, the partial Legendre transform and convexity diagnostics."""

from .convexity import ConvexityReport, discrete_convexity_report
from .grids import GridFunction1D, GridFunction2D, read_grid_csv, uniform_grid
from .legendre import legendre_down, legendre_up, tau_grid
from .slices import AffineSlice, hessian_pullback_check, pullback_block, pullback_slice, shear_conjugate

__all__ = [
    "AffineSlice",
    "pullback_slice",
    "pullback_block",
    "shear_conjugate",
    "hessian_pullback_check",
    "GridFunction1D",
    "GridFunction2D",
    "uniform_grid",
    "read_grid_csv",
    "legendre_down",
    "legendre_up",
    "tau_grid",
    "ConvexityReport",
    "discrete_convexity_report",
]
