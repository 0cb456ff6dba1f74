"""Problem definitions for the one-dimensional envelope solver.

Two documents are accepted (see ``schemas/``):

- rooftop problems: ``{"a", "domain": {"xl", "xr"}, "obstacle": [...], "cap": [fl, fr]}``
- DSL Dirichlet problems: ``{"c", "domain", "grid": {"nt", "nx", "ntau"?},
  "boundary": {"g0", "g1", "gl", "gr"}}``

The obstacle lists values at every node of the uniform x-grid; only the
interior values constrain the envelope, the endpoints are capped by ``cap``.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple, Union
import logging
import math

import numpy as np

from ..core.exceptions import CornerMismatch, ProblemFormatError
from ..core.io import read_json
from ..transforms.grids import GridFunction1D, uniform_grid

logger = logging.getLogger(__name__)

__all__ = [
    "RooftopProblem",
    "BoundaryData",
    "DslDirichletProblem",
    "load_rooftop_problem",
    "load_dsl_problem",
    "rooftop_problem_from_document",
    "dsl_problem_from_document",
]

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class RooftopProblem:
    """Obstacle h on the grid, endpoint caps (fl, fr) and SL phase a in [-pi/2, pi/2)."""

    obstacle: GridFunction1D
    cap: Tuple[float, float]
    a: float

    def __post_init__(self) -> None:
        if not (-HALF_PI <= self.a < HALF_PI):
            raise ProblemFormatError(
                f"rooftop phase must lie in [-pi/2, pi/2), got {self.a}",
                context={"value_name": "a", "value": repr(self.a)},
            )
        fl, fr = (float(v) for v in self.cap)
        if not (math.isfinite(fl) and math.isfinite(fr)):
            raise ProblemFormatError("rooftop caps must be finite")
        object.__setattr__(self, "cap", (fl, fr))
        object.__setattr__(self, "a", float(self.a))

    @property
    def xs(self) -> np.ndarray:
        return self.obstacle.xs

    @property
    def slope_floor(self) -> float:
        """tan(a); minus infinity for the unconstrained phase -pi/2."""
        return -math.inf if self.a <= -HALF_PI else math.tan(self.a)


@dataclass(frozen=True)
class BoundaryData:
    """Traces of g on the four sides of [0, 1] x [xl, xr]."""

    g0: GridFunction1D
    g1: GridFunction1D
    gl: GridFunction1D
    gr: GridFunction1D

    def __post_init__(self) -> None:
        if not np.array_equal(self.g0.xs, self.g1.xs):
            raise ProblemFormatError("g0 and g1 must share the x-grid")
        if not np.array_equal(self.gl.xs, self.gr.xs):
            raise ProblemFormatError("gl and gr must share the t-grid")
        ts = self.gl.xs
        if abs(ts[0]) > 1e-12 or abs(ts[-1] - 1.0) > 1e-12:
            raise ProblemFormatError(f"time traces must span [0, 1], got [{ts[0]}, {ts[-1]}]")

    @property
    def ts(self) -> np.ndarray:
        return self.gl.xs

    @property
    def xs(self) -> np.ndarray:
        return self.g0.xs

    def corner_gaps(self) -> Dict[str, float]:
        g0, g1, gl, gr = self.g0.values, self.g1.values, self.gl.values, self.gr.values
        return {
            "(0, xl)": abs(g0[0] - gl[0]),
            "(0, xr)": abs(g0[-1] - gr[0]),
            "(1, xl)": abs(g1[0] - gl[-1]),
            "(1, xr)": abs(g1[-1] - gr[-1]),
        }

    def check_corners(self, tol: float = 1e-9) -> None:
        """Raise `CornerMismatch` when two traces disagree at a corner."""
        for corner, gap in self.corner_gaps().items():
            if gap > tol:
                raise CornerMismatch(
                    f"boundary traces disagree at corner {corner}",
                    context={"value_name": corner, "measured": repr(gap), "threshold": repr(tol)},
                )

    @classmethod
    def from_function(
        cls, g: Callable[[np.ndarray, np.ndarray], np.ndarray], ts: np.ndarray, xs: np.ndarray
    ) -> "BoundaryData":
        """Restrict g(t, x) to the boundary of the grid rectangle."""
        ts = np.asarray(ts, dtype=float)
        xs = np.asarray(xs, dtype=float)
        ones_x = np.ones_like(xs)
        ones_t = np.ones_like(ts)
        return cls(
            GridFunction1D(xs, g(0.0 * ones_x, xs) * ones_x),
            GridFunction1D(xs, g(ones_x, xs) * ones_x),
            GridFunction1D(ts, g(ts, xs[0] * ones_t) * ones_t),
            GridFunction1D(ts, g(ts, xs[-1] * ones_t) * ones_t),
        )

    def to_document(self) -> Dict[str, Any]:
        return {
            "g0": self.g0.values.tolist(),
            "g1": self.g1.values.tolist(),
            "gl": self.gl.values.tolist(),
            "gr": self.gr.values.tolist(),
        }


@dataclass(frozen=True)
class DslDirichletProblem:
    """Theta(D^2 u) = c on (0, 1) x (xl, xr) with u = g on the boundary (n = 1)."""

    c: float
    boundary: BoundaryData
    ntau: Optional[int] = None
    tau_bound: Optional[float] = None
    corner_tol: float = 1e-9

    def __post_init__(self) -> None:
        if not (0.0 <= self.c < math.pi):
            raise ProblemFormatError(
                f"phase c must lie in [0, pi) for one space dimension, got {self.c}",
                context={"value_name": "c", "value": repr(self.c)},
            )
        if self.ntau is not None and self.ntau < 3:
            raise ProblemFormatError(f"ntau must be at least 3, got {self.ntau}")
        self.boundary.check_corners(self.corner_tol)

    @property
    def slice_phase(self) -> float:
        return self.c - HALF_PI

    @property
    def ts(self) -> np.ndarray:
        return self.boundary.ts

    @property
    def xs(self) -> np.ndarray:
        return self.boundary.xs

    @classmethod
    def from_function(
        cls,
        g: Callable[[np.ndarray, np.ndarray], np.ndarray],
        c: float,
        nt: int,
        nx: int,
        xl: float = -1.0,
        xr: float = 1.0,
        ntau: Optional[int] = None,
    ) -> "DslDirichletProblem":
        """Build a problem by sampling g on the boundary of a uniform nt x nx grid."""
        boundary = BoundaryData.from_function(g, uniform_grid(0.0, 1.0, nt), uniform_grid(xl, xr, nx))
        return cls(c=c, boundary=boundary, ntau=ntau)

    def to_document(self) -> Dict[str, Any]:
        grid: Dict[str, Any] = {"nt": int(self.ts.shape[0]), "nx": int(self.xs.shape[0])}
        if self.ntau is not None:
            grid["ntau"] = self.ntau
        return {
            "c": self.c,
            "domain": {"xl": float(self.xs[0]), "xr": float(self.xs[-1])},
            "grid": grid,
            "boundary": self.boundary.to_document(),
        }


def _grid_values(values: Any, count: int, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape != (count,):
        raise ProblemFormatError(
            f"'{name}' has {arr.size} values, expected {count}",
            context={"value_name": name, "measured": str(arr.size), "threshold": str(count)},
        )
    return arr


def _domain(doc: Dict[str, Any]) -> Tuple[float, float]:
    xl, xr = float(doc["domain"]["xl"]), float(doc["domain"]["xr"])
    if not xl < xr:
        raise ProblemFormatError(f"domain must satisfy xl < xr, got [{xl}, {xr}]")
    return xl, xr


def rooftop_problem_from_document(doc: Dict[str, Any]) -> RooftopProblem:
    xl, xr = _domain(doc)
    obstacle = np.asarray(doc["obstacle"], dtype=float)
    xs = uniform_grid(xl, xr, obstacle.shape[0])
    return RooftopProblem(GridFunction1D(xs, obstacle), tuple(doc["cap"]), float(doc["a"]))


def dsl_problem_from_document(doc: Dict[str, Any], corner_tol: float = 1e-9) -> DslDirichletProblem:
    xl, xr = _domain(doc)
    nt, nx = int(doc["grid"]["nt"]), int(doc["grid"]["nx"])
    ts = uniform_grid(0.0, 1.0, nt)
    xs = uniform_grid(xl, xr, nx)
    b = doc["boundary"]
    boundary = BoundaryData(
        GridFunction1D(xs, _grid_values(b["g0"], nx, "g0")),
        GridFunction1D(xs, _grid_values(b["g1"], nx, "g1")),
        GridFunction1D(ts, _grid_values(b["gl"], nt, "gl")),
        GridFunction1D(ts, _grid_values(b["gr"], nt, "gr")),
    )
    return DslDirichletProblem(
        c=float(doc["c"]),
        boundary=boundary,
        ntau=doc["grid"].get("ntau"),
        tau_bound=doc.get("tau_bound"),
        corner_tol=corner_tol,
    )


def load_rooftop_problem(path: Union[str, Path]) -> RooftopProblem:
    return rooftop_problem_from_document(read_json(path, "rooftop_problem", ProblemFormatError))


def load_dsl_problem(path: Union[str, Path], corner_tol: float = 1e-9) -> DslDirichletProblem:
    """Read and validate a DSL Dirichlet problem document."""
    doc = read_json(path, "dsl_problem", ProblemFormatError)
    problem = dsl_problem_from_document(doc, corner_tol)
    logger.debug("loaded DSL problem c=%.6g grid=%dx%d from %s", problem.c, len(problem.ts), len(problem.xs), path)
    return problem
