"""One-space-dimension rooftop envelopes and the DSL Dirichlet solver."""

from .dirichlet import DirichletSolution, solve_dsl_dirichlet, solve_dsl_dirichlet_detailed
from .envelope import convex_envelope_1d, rooftop_envelope
from .problems import (
    BoundaryData,
    DslDirichletProblem,
    RooftopProblem,
    load_dsl_problem,
    load_rooftop_problem,
)
from .verification import SolutionReport, extract_min_principle, legendre_joint_convexity, verify_dsl_solution

__all__ = [
    "RooftopProblem",
    "BoundaryData",
    "DslDirichletProblem",
    "load_rooftop_problem",
    "load_dsl_problem",
    "convex_envelope_1d",
    "rooftop_envelope",
    "DirichletSolution",
    "solve_dsl_dirichlet",
    "solve_dsl_dirichlet_detailed",
    "SolutionReport",
    "extract_min_principle",
    "legendre_joint_convexity",
    "verify_dsl_solution",
]
