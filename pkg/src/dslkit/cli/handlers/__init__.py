"""
Request Handlers for dslkit.

This package contains the domain-specific handlers that bridge the CLI
commands with the Service layer.

Architecture:
- MatrixHandlers: angle and membership reports for one matrix.
- SolverHandlers: rooftop envelopes, Dirichlet solves, grid verification.
- SuiteHandlers: named verification suites.
"""

from .matrix_handlers import MatrixHandlers
from .solver_handlers import SolverHandlers
from .suite_handlers import SuiteHandlers

__all__ = [
    "MatrixHandlers",
    "SolverHandlers",
    "SuiteHandlers",
]
