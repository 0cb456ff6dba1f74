"""Locate the affine slice that contains a given plane or line in space-time.

A 2-plane H through (t', x') spanned by (t1, x1), (t2, x2) lies in the slice
{(t0 + V.x, x)} exactly when V.x1 = t1 and V.x2 = t2, with t0 = t' - V.x'.
This needs x1, x2 independent; otherwise H contains a time-like line.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple, Union
import logging

import numpy as np

from ..core.exceptions import MatrixFormatError, NoSlice, SingularSystem
from ..transforms.slices import AffineSlice

logger = logging.getLogger(__name__)

__all__ = ["AffinePlane2D", "plane_to_slice", "line_to_slice"]

Vector = Union[np.ndarray, Sequence[float]]


def _split(h: Tuple[float, Vector]) -> Tuple[float, np.ndarray]:
    t, x = h
    return float(t), np.asarray(x, dtype=float).reshape(-1)


@dataclass(frozen=True, eq=False)
class AffinePlane2D:
    """Base point (t', x') and spanning vectors h1 = (t1, x1), h2 = (t2, x2)."""

    base_t: float
    base_x: np.ndarray
    h1: Tuple[float, np.ndarray]
    h2: Tuple[float, np.ndarray]

    def __post_init__(self) -> None:
        base_x = np.asarray(self.base_x, dtype=float).reshape(-1)
        t1, x1 = _split(self.h1)
        t2, x2 = _split(self.h2)
        if not (x1.shape == x2.shape == base_x.shape):
            raise MatrixFormatError("plane vectors must share the space dimension")
        span = np.array([np.concatenate(([t1], x1)), np.concatenate(([t2], x2))])
        if np.linalg.matrix_rank(span) < 2:
            raise MatrixFormatError("plane spanning vectors are linearly dependent")
        object.__setattr__(self, "base_t", float(self.base_t))
        object.__setattr__(self, "base_x", base_x)
        object.__setattr__(self, "h1", (t1, x1))
        object.__setattr__(self, "h2", (t2, x2))

    @property
    def n(self) -> int:
        return int(self.base_x.shape[0])


def plane_to_slice(plane: AffinePlane2D, tol: float = 1e-10) -> AffineSlice:
    """Return the slice containing the plane, choosing the minimum-norm V.

    Raises `NoSlice` when x1 and x2 are dependent.
    """
    (t1, x1), (t2, x2) = plane.h1, plane.h2
    xs = np.vstack([x1, x2])
    ts = np.array([t1, t2])
    if plane.n < 2 or np.linalg.matrix_rank(xs) < 2:
        raise NoSlice(
            "plane contains a time-like line",
            context={"operation": "plane_to_slice", "value_name": "n", "value": str(plane.n)},
        )
    v = np.linalg.pinv(xs) @ ts
    residual = float(np.max(np.abs(xs @ v - ts)))
    if residual > tol * max(1.0, float(np.max(np.abs(ts)))):
        raise SingularSystem(
            "slice equations solved inaccurately",
            context={"operation": "plane_to_slice", "measured": repr(residual), "threshold": repr(tol)},
        )
    return AffineSlice(plane.base_t - float(v @ plane.base_x), v)


def line_to_slice(point: Tuple[float, Vector], direction: Tuple[float, Vector]) -> AffineSlice:
    """Slice containing the line point + s*direction, with V = t1 x1 / |x1|^2.

    Raises `NoSlice` for time-like directions (x1 = 0).
    """
    t_p, x_p = _split(point)
    t_d, x_d = _split(direction)
    norm2 = float(x_d @ x_d)
    if norm2 == 0.0:
        raise NoSlice("line is time-like", context={"operation": "line_to_slice"})
    v = t_d * x_d / norm2
    return AffineSlice(t_p - float(v @ x_p), v)
