"""Lifted Lagrangian angles on symmetric and space-time matrices."""

from .lifted import (
    AnglePath,
    AngleValue,
    in_singular_class,
    lifted_angle,
    spacetime_angle,
    spacetime_angle_schur,
    spacetime_angle_spectral,
)

__all__ = [
    "AnglePath",
    "AngleValue",
    "lifted_angle",
    "in_singular_class",
    "spacetime_angle_spectral",
    "spacetime_angle_schur",
    "spacetime_angle",
]
