"""Grid functions on an interval and on a rectangle, with CSV encoding.

CSV layout: header ``x,value`` for 1-D grids and ``<axis>,x,value`` for 2-D
grids (axis ``t`` or ``tau``), rows ordered by the first coordinate then x,
numbers written with 17 significant digits.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, List, Union
import csv
import io
import logging

import numpy as np

from ..core.exceptions import GridFormatError
from ..core.io import write_text

logger = logging.getLogger(__name__)

__all__ = [
    "GridFunction1D",
    "GridFunction2D",
    "uniform_grid",
    "read_grid_csv",
]

UNIFORM_TOL = 1e-12


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def uniform_grid(lo: float, hi: float, count: int) -> np.ndarray:
    """``count`` equally spaced nodes from lo to hi inclusive."""
    if count < 2 or not hi > lo:
        raise GridFormatError(f"cannot build a grid of {count} nodes on [{lo}, {hi}]")
    return np.linspace(lo, hi, count)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


def _check_uniform(nodes: np.ndarray, name: str) -> float:
    steps = np.diff(nodes)
    if nodes.shape[0] < 2 or np.any(steps <= 0):
        raise GridFormatError(f"{name} grid must be strictly increasing with at least two nodes")
    step = (nodes[-1] - nodes[0]) / (nodes.shape[0] - 1)
    span = max(1.0, abs(nodes[0]), abs(nodes[-1]))
    if np.max(np.abs(steps - step)) > UNIFORM_TOL * span * 16:
        raise GridFormatError(
            f"{name} grid is not uniform",
            context={"value_name": name, "measured": repr(float(np.max(np.abs(steps - step))))},
        )
    return float(step)


@dataclass(frozen=True, eq=False)
class GridFunction1D:
    """Values on strictly increasing abscissae."""

    xs: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float).reshape(-1)
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if xs.shape != values.shape or xs.shape[0] < 2:
            raise GridFormatError(
                f"need matching abscissae and values of length >= 2, got {xs.shape[0]} and {values.shape[0]}"
            )
        if np.any(np.diff(xs) <= 0):
            raise GridFormatError("abscissae must be strictly increasing")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(values))):
            raise GridFormatError("grid values must be finite")
        object.__setattr__(self, "xs", _frozen(xs))
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def from_function(cls, f: Callable[[np.ndarray], np.ndarray], xs: np.ndarray) -> "GridFunction1D":
        xs = np.asarray(xs, dtype=float)
        return cls(xs, np.asarray(f(xs), dtype=float) * np.ones_like(xs))

    def __len__(self) -> int:
        return int(self.xs.shape[0])

    @property
    def step(self) -> float:
        return _check_uniform(self.xs, "x")

    def is_uniform(self) -> bool:
        try:
            _check_uniform(self.xs, "x")
        except GridFormatError:
            return False
        return True

    def __call__(self, x: Union[float, np.ndarray]) -> np.ndarray:
        """Piecewise-linear interpolation (constant extrapolation)."""
        return np.interp(x, self.xs, self.values)

    def second_differences(self) -> np.ndarray:
        """Divided second differences at interior nodes (non-uniform safe)."""
        x, y = self.xs, self.values
        left = (y[1:-1] - y[:-2]) / (x[1:-1] - x[:-2])
        right = (y[2:] - y[1:-1]) / (x[2:] - x[1:-1])
        return 2.0 * (right - left) / (x[2:] - x[:-2])

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["x", "value"])
        for x, v in zip(self.xs, self.values):
            writer.writerow([_fmt(x), _fmt(v)])
        return out.getvalue()

    def to_dict(self) -> dict:
        return {"xs": self.xs.tolist(), "values": self.values.tolist()}


@dataclass(frozen=True, eq=False)
class GridFunction2D:
    """Values on a uniform (axis, x) grid; ``values[i, j]`` sits at (axis[i], xs[j])."""

    ts: np.ndarray
    xs: np.ndarray
    values: np.ndarray
    axis: str = "t"

    def __post_init__(self) -> None:
        ts = np.asarray(self.ts, dtype=float).reshape(-1)
        xs = np.asarray(self.xs, dtype=float).reshape(-1)
        values = np.asarray(self.values, dtype=float)
        _check_uniform(ts, self.axis)
        _check_uniform(xs, "x")
        if values.shape != (ts.shape[0], xs.shape[0]):
            raise GridFormatError(
                f"values have shape {values.shape}, expected {(ts.shape[0], xs.shape[0])}"
            )
        if not np.all(np.isfinite(values)):
            raise GridFormatError("grid values must be finite")
        object.__setattr__(self, "ts", _frozen(ts))
        object.__setattr__(self, "xs", _frozen(xs))
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def from_function(
        cls, f: Callable[[np.ndarray, np.ndarray], np.ndarray], ts: np.ndarray, xs: np.ndarray, axis: str = "t"
    ) -> "GridFunction2D":
        """Sample f(t, x) with broadcasting over the grid."""
        tt, xx = np.meshgrid(np.asarray(ts, float), np.asarray(xs, float), indexing="ij")
        return cls(ts, xs, np.asarray(f(tt, xx), dtype=float) * np.ones_like(tt), axis)

    @property
    def shape(self):
        return self.values.shape

    @property
    def dt(self) -> float:
        return float((self.ts[-1] - self.ts[0]) / (self.ts.shape[0] - 1))

    @property
    def dx(self) -> float:
        return float((self.xs[-1] - self.xs[0]) / (self.xs.shape[0] - 1))

    def column(self, j: int) -> GridFunction1D:
        """The function of the first coordinate at x = xs[j]."""
        return GridFunction1D(self.ts, self.values[:, j])

    def row(self, i: int) -> GridFunction1D:
        """The function of x at the first-coordinate node i."""
        return GridFunction1D(self.xs, self.values[i, :])

    def interpolate(self, t: np.ndarray, x: np.ndarray) -> np.ndarray:
        """Bilinear interpolation at points inside the rectangle."""
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        ft = np.clip((t - self.ts[0]) / self.dt, 0.0, self.ts.shape[0] - 1.0)
        fx = np.clip((x - self.xs[0]) / self.dx, 0.0, self.xs.shape[0] - 1.0)
        i0 = np.minimum(np.floor(ft).astype(int), self.ts.shape[0] - 2)
        j0 = np.minimum(np.floor(fx).astype(int), self.xs.shape[0] - 2)
        wt = ft - i0
        wx = fx - j0
        v = self.values
        return (
            (1 - wt) * (1 - wx) * v[i0, j0]
            + wt * (1 - wx) * v[i0 + 1, j0]
            + (1 - wt) * wx * v[i0, j0 + 1]
            + wt * wx * v[i0 + 1, j0 + 1]
        )

    def boundary_traces(self):
        """(bottom, top, left, right) as 1-D grid functions."""
        return self.row(0), self.row(-1), self.column(0), self.column(-1)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow([self.axis, "x", "value"])
        for i, t in enumerate(self.ts):
            for j, x in enumerate(self.xs):
                writer.writerow([_fmt(t), _fmt(x), _fmt(self.values[i, j])])
        return out.getvalue()

    def write_csv(self, path: Union[str, Path]) -> Path:
        return write_text(path, self.to_csv())


def read_grid_csv(source: Union[str, Path, Iterable[str]]) -> Union[GridFunction1D, GridFunction2D]:
    """Parse a grid CSV written by `to_csv` (path or lines)."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).exists()):
        with open(source, "r", encoding="utf-8", newline="") as f:
            rows = list(csv.reader(f))
    elif isinstance(source, str):
        rows = list(csv.reader(io.StringIO(source)))
    else:
        rows = list(csv.reader(source))
    if not rows:
        raise GridFormatError("empty grid CSV")
    header, body = rows[0], [r for r in rows[1:] if r]
    try:
        data = np.array([[float(c) for c in r] for r in body], dtype=float)
    except ValueError as e:
        raise GridFormatError(f"non-numeric grid CSV entry: {e}", cause=e)
    if header == ["x", "value"]:
        return GridFunction1D(data[:, 0], data[:, 1])
    if len(header) == 3 and header[1:] == ["x", "value"] and header[0] in ("t", "tau"):
        firsts = _unique_in_order(data[:, 0])
        xs = _unique_in_order(data[:, 1])
        if data.shape[0] != len(firsts) * len(xs):
            raise GridFormatError("grid CSV is not a full tensor grid")
        expected = np.column_stack((np.repeat(firsts, len(xs)), np.tile(xs, len(firsts))))
        bad = np.flatnonzero(np.any(data[:, :2] != expected, axis=1))
        if bad.size:
            r = int(bad[0])
            raise GridFormatError(
                f"grid CSV row {r + 1} is out of {header[0]}-major order or duplicated",
                context={"value_name": "row", "value": f"{data[r, 0]!r},{data[r, 1]!r}"},
            )
        values = data[:, 2].reshape(len(firsts), len(xs))
        return GridFunction2D(np.array(firsts), np.array(xs), values, axis=header[0])
    raise GridFormatError(f"unrecognised grid CSV header {header}")


def _unique_in_order(col: np.ndarray) -> List[float]:
    return list(dict.fromkeys(float(v) for v in col))
