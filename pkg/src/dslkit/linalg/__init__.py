"""Dense linear algebra primitives sized for desk-scale matrices."""

from .matrices import ComplexSpectrum, SpaceTimeMatrix, SymMatrix
from .spectral import (
    det_lu,
    eig_complex_spacetime,
    eig_sym,
    principal_arg,
    solve_complex_linear,
)

__all__ = [
    "SymMatrix",
    "SpaceTimeMatrix",
    "ComplexSpectrum",
    "eig_sym",
    "eig_complex_spacetime",
    "principal_arg",
    "solve_complex_linear",
    "det_lu",
]
