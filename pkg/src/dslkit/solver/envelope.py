"""Rooftop envelopes on an interval.

In one space dimension w belongs to F_a exactly when w - tan(a) x^2 / 2 is
convex, so the largest F_a-subsolution under the obstacle and caps is a
quadratic shift of a lower convex hull.
"""

from typing import List, Sequence, Tuple
import logging
import math

import numpy as np

from ..core.exceptions import GridFormatError
from ..transforms.grids import GridFunction1D
from .problems import RooftopProblem

logger = logging.getLogger(__name__)

__all__ = ["lower_hull", "convex_envelope_1d", "rooftop_envelope", "rooftop_envelope_values"]

HALF_PI = 0.5 * math.pi


def _cross(o: Tuple[float, float], a: Tuple[float, float], b: Tuple[float, float]) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(xs: np.ndarray, ys: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Vertices of the lower convex hull (monotone chain) of points sorted by x."""
    hull: List[Tuple[float, float]] = []
    for p in zip(xs.tolist(), ys.tolist()):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0.0:
            hull.pop()
        hull.append(p)
    hx, hy = zip(*hull)
    return np.asarray(hx), np.asarray(hy)


def convex_envelope_1d(points: Sequence[Tuple[float, float]]) -> GridFunction1D:
    """Largest convex function below the data, evaluated at the data abscissae."""
    if len(points) < 2:
        raise GridFormatError("convex envelope needs at least two points")
    data = np.asarray(points, dtype=float)
    xs, ys = data[:, 0], data[:, 1]
    if np.any(np.diff(xs) <= 0):
        raise GridFormatError("envelope abscissae must be strictly increasing")
    hx, hy = lower_hull(xs, ys)
    return GridFunction1D(xs, np.interp(xs, hx, hy))


def rooftop_envelope_values(xs: np.ndarray, obstacle: np.ndarray, fl: float, fr: float, a: float) -> np.ndarray:
    """Envelope values at ``xs``; obstacle values at the two endpoints are ignored."""
    if a <= -HALF_PI:
        out = np.array(obstacle, dtype=float, copy=True)
        out[0], out[-1] = fl, fr
        return out
    m = math.tan(a)
    shift = 0.5 * m * xs * xs
    ys = np.array(obstacle, dtype=float, copy=True) - shift
    ys[0] = fl - shift[0]
    ys[-1] = fr - shift[-1]
    hx, hy = lower_hull(xs, ys)
    return np.interp(xs, hx, hy) + shift


def rooftop_envelope(p: RooftopProblem) -> GridFunction1D:
    """P_a(h, f): the largest w with w'' >= tan(a), w <= h inside and w <= f at the ends."""
    fl, fr = p.cap
    values = rooftop_envelope_values(p.xs, p.obstacle.values, fl, fr, p.a)
    logger.debug("rooftop envelope a=%.6g on %d nodes", p.a, len(p.xs))
    return GridFunction1D(p.xs, values)
