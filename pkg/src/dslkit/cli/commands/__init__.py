"""
CLI Command Modules.

These modules define the user-facing command structure using Click.
They map 1:1 to the domain-specific Handlers.

Modules:
- matrix_ops: angle and check on a matrix document.
- solver_ops: envelope, solve and verify for one-dimensional problems.
- suite_ops: named verification suites.
"""

from . import matrix_ops
from . import solver_ops
from . import suite_ops

__all__ = [
    "matrix_ops",
    "solver_ops",
    "suite_ops",
]
