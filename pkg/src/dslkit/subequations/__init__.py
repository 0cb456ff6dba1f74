"""Branches of the SL/DSL subequations and their membership tests."""

from .branches import DslBranch, SlBranch, Tier
from .planes import AffinePlane2D, line_to_slice, plane_to_slice
from .predicates import (
    eigenvalue_consequences,
    in_dual_F,
    in_F,
    in_Fcal,
    in_P,
    in_T,
    is_two_convex,
    schur_decomposition_terms,
    time_slot_sign,
)
from .star import StarSearchResult, in_star_product

__all__ = [
    "SlBranch",
    "DslBranch",
    "Tier",
    "AffinePlane2D",
    "plane_to_slice",
    "line_to_slice",
    "in_F",
    "in_Fcal",
    "in_dual_F",
    "in_P",
    "in_T",
    "is_two_convex",
    "eigenvalue_consequences",
    "schur_decomposition_terms",
    "time_slot_sign",
    "StarSearchResult",
    "in_star_product",
]
