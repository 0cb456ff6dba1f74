"""
Solver service for dslkit.

This service handles the one-dimensional PDE commands: rooftop envelopes,
Dirichlet solves and verification of candidate solutions.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Union
import logging
import math

import numpy as np

from ..core.exceptions import GridFormatError, validate_file_readable
from ..core.schema import RuntimeConfig
from ..solver.dirichlet import DirichletSolution, solve_dsl_dirichlet_detailed
from ..solver.envelope import rooftop_envelope
from ..solver.problems import DslDirichletProblem, RooftopProblem, load_dsl_problem, load_rooftop_problem
from ..solver.verification import SolutionReport, verify_dsl_solution
from ..transforms.grids import GridFunction1D, GridFunction2D, read_grid_csv

logger = logging.getLogger(__name__)

__all__ = ["SolverService", "EnvelopeResult", "SolveResult"]


@dataclass
class EnvelopeResult:
    """A rooftop envelope and its discrete certificate."""

    problem: RooftopProblem
    envelope: GridFunction1D
    report: Dict[str, Any]

    @property
    def passed(self) -> bool:
        return bool(self.report["pass"])


@dataclass
class SolveResult:
    problem: DslDirichletProblem
    solution: DirichletSolution
    report: SolutionReport

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self) -> Dict[str, Any]:
        return {"solver": self.solution.to_dict(), "verification": self.report.to_dict()}


class SolverService:
    """Service for envelope, solve and verify operations."""

    def __init__(self, config: Optional[RuntimeConfig] = None):
        self.config = config or RuntimeConfig()

    def envelope(self, problem_path: Union[str, Path]) -> EnvelopeResult:
        """Compute P_a(h, f) and certify it stays below the obstacle with w'' >= tan(a)."""
        problem = load_rooftop_problem(problem_path)
        w = rooftop_envelope(problem)
        return EnvelopeResult(problem, w, self.envelope_report(problem, w))

    def envelope_report(self, problem: RooftopProblem, w: GridFunction1D) -> Dict[str, Any]:
        tol = self.config.system.tolerances.second_difference
        step = problem.obstacle.step
        interior_gap = float(np.max(w.values[1:-1] - problem.obstacle.values[1:-1])) if len(w) > 2 else -math.inf
        fl, fr = problem.cap
        cap_gap = max(w.values[0] - fl, w.values[-1] - fr)
        d2 = w.second_differences()
        min_d2 = float(np.min(d2)) if d2.size else math.inf
        floor = problem.slope_floor
        d2_tol = tol / step ** 2
        below = interior_gap <= tol and cap_gap <= tol
        semiconvex = min_d2 >= floor - d2_tol
        return {
            "a": problem.a,
            "nodes": len(w),
            "max_obstacle_excess": interior_gap,
            "max_cap_excess": float(cap_gap),
            "min_second_diff": min_d2,
            "slope_floor": floor,
            "tolerance": d2_tol,
            "checks": {"below_obstacle": bool(below), "semiconvex": bool(semiconvex)},
            "pass": bool(below and semiconvex),
        }

    def load_problem(self, problem_path: Union[str, Path]) -> DslDirichletProblem:
        return load_dsl_problem(problem_path, self.config.system.tolerances.corner)

    def solve(self, problem: DslDirichletProblem) -> SolveResult:
        """Solve, then certify the output on its own grid."""
        solver = self.config.system.solver
        solution = solve_dsl_dirichlet_detailed(problem, solver)
        report = verify_dsl_solution(
            solution.u,
            problem.c,
            problem.boundary,
            self.config.system.tolerances,
            solver,
            envelopes=solution.envelopes,
        )
        return SolveResult(problem, solution, report)

    def verify(self, problem: DslDirichletProblem, grid_path: Union[str, Path]) -> SolutionReport:
        """Certify a grid CSV against the problem's boundary data."""
        validate_file_readable(Path(grid_path), "verify")
        grid = read_grid_csv(Path(grid_path))
        if not isinstance(grid, GridFunction2D) or grid.axis != "t":
            raise GridFormatError(
                f"{grid_path}: expected a t,x,value grid", context={"path": str(grid_path)}
            )
        return verify_dsl_solution(
            grid, problem.c, problem.boundary, self.config.system.tolerances, self.config.system.solver
        )
