"""Discrete certificates for solver outputs.

The checks work on grid values only: boundary residual, time convexity, the
minimum principle v = min_t u, the subsolution rate, semiconvexity along
grid-aligned sheared slices and, for c >= pi/2, joint convexity.

In one space dimension a matrix [[a00, b], [b, lam]] has Theta >= c exactly
when a00 >= 0 and every slice curvature lam + 2 b V + a00 V^2 is at least
tan(c - pi/2). The gated certificates test that condition along the slopes
V = k dt/dx, on which a grid function is sampled without interpolation. The
centred Hessian angles are reported beside them.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from ..core.exceptions import GridFormatError
from ..core.schema import SolverConfig, ToleranceConfig
from ..subequations.planes import line_to_slice
from ..transforms.convexity import (
    ConvexityReport,
    discrete_convexity_report,
    discrete_hessians,
    second_differences_t,
)
from ..transforms.grids import GridFunction1D, GridFunction2D
from ..transforms.slices import AffineSlice
from .envelope import rooftop_envelope_values
from .problems import BoundaryData

logger = logging.getLogger(__name__)

__all__ = [
    "MinPrincipleReport",
    "SolutionReport",
    "planar_spacetime_angles",
    "slice_node_angles",
    "grid_aligned_slices",
    "convex_floor",
    "extract_min_principle",
    "legendre_joint_convexity",
    "joint_convexity_certificate",
    "verify_dsl_solution",
    "DEFAULT_SLICE_SLOPES",
]

HALF_PI = 0.5 * math.pi
QUANTILES = (0.0, 0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99, 1.0)
DEFAULT_SLICE_SLOPES = (-2, -1, 0, 1, 2)
_DEFAULT_TOL = ToleranceConfig()
_DEFAULT_SOLVER = SolverConfig()


def _slope_floor(c: float) -> float:
    a = c - HALF_PI
    return -math.inf if a <= -HALF_PI else math.tan(a)


def planar_spacetime_angles(a00: np.ndarray, b: np.ndarray, lam: np.ndarray, singular_tol: float = 0.0) -> np.ndarray:
    """Vectorised Theta for 2x2 space-time matrices [[a00, b], [b, lam]].

    Uses arctan(lam) + arg(i a00 + b^2 / (1 + i lam)); entries with
    |a00|, |b| <= singular_tol get the singular-class value arctan(lam) + pi/2.
    """
    a00 = np.asarray(a00, dtype=float)
    b = np.asarray(b, dtype=float)
    lam = np.asarray(lam, dtype=float)
    weight = b * b / (1.0 + lam * lam)
    arg = np.arctan2(a00 - weight * lam, weight)
    singular = (np.abs(a00) <= singular_tol) & (np.abs(b) <= singular_tol)
    return np.arctan(lam) + np.where(singular, HALF_PI, arg)


def grid_aligned_slices(u: GridFunction2D, slopes: Sequence[int], stride: int = 1) -> List[AffineSlice]:
    """Slices containing the grid lines through (ts[i], xs[0]) with step (k dt, dx)."""
    return [
        line_to_slice((float(u.ts[i]), [float(u.xs[0])]), (k * u.dt, [u.dx]))
        for k in slopes
        for i in range(0, u.ts.shape[0], max(stride, 1))
    ]


def slice_node_angles(
    u: GridFunction2D, slopes: Sequence[int] = DEFAULT_SLICE_SLOPES, tol: float = 1e-8
) -> np.ndarray:
    """Per interior node, pi/2 + arctan of the smallest slice curvature through it.

    Slice k joins (i - k, j - 1), (i, j) and (i + k, j + 1); slopes leaving the
    grid are skipped and k = 0 is always used. Time-concave nodes get -pi.
    Shape (Nt-2, Nx-2).
    """
    v = u.values
    nt, nx = v.shape
    if nt < 3 or nx < 3:
        return np.empty((max(nt - 2, 0), max(nx - 2, 0)))
    rows = np.arange(1, nt - 1)
    curvature = np.full((nt - 2, nx - 2), np.inf)
    for k in sorted(set(int(k) for k in slopes) | {0}):
        fits = (rows - abs(k) >= 0) & (rows + abs(k) <= nt - 1)
        i = rows[fits]
        if i.size == 0:
            continue
        d2 = (v[i + k, 2:] - 2.0 * v[i, 1:-1] + v[i - k, :-2]) / u.dx ** 2
        curvature[fits] = np.minimum(curvature[fits], d2)
    time_convex = second_differences_t(u)[:, 1:-1] >= -tol / u.dt ** 2
    return np.where(time_convex, HALF_PI + np.arctan(curvature), -math.pi)


def convex_floor(ts: np.ndarray, f: np.ndarray) -> float:
    """Lower bound for min over [ts[0], ts[-1]] of any convex function taking the values f at ts.

    The minimum lies next to the smallest sample; on each neighbouring cell the
    chords of the adjacent cells, extended, stay below the function.
    """
    count = f.shape[0]
    k = int(np.argmin(f))
    best = float(f[k])
    if count < 3:
        return best if count == 1 else -math.inf
    for p in (k - 1, k):
        if p < 0 or p + 1 >= count:
            continue
        lines: List[Tuple[float, float, float]] = []
        if p >= 1:
            lines.append((ts[p], f[p], (f[p] - f[p - 1]) / (ts[p] - ts[p - 1])))
        if p + 2 < count:
            lines.append((ts[p + 1], f[p + 1], (f[p + 2] - f[p + 1]) / (ts[p + 2] - ts[p + 1])))
        candidates = [float(ts[p]), float(ts[p + 1])]
        if len(lines) == 2 and lines[0][2] != lines[1][2]:
            (t0, y0, s0), (t1, y1, s1) = lines
            cross = (y1 - y0 + s0 * t0 - s1 * t1) / (s0 - s1)
            if ts[p] < cross < ts[p + 1]:
                candidates.append(float(cross))
        bound = min(max(y + s * (t - t0) for t0, y, s in lines) for t in candidates)
        best = min(best, bound)
    return best


@dataclass
class MinPrincipleReport:
    """Certificate that v = min over interior t is consistent with v'' >= tan(c - pi/2).

    ``min_second_diff`` is measured on the node minimum and can dip below the
    threshold when the time-minimiser moves between nodes. The verdict asks
    instead for an F_{c - pi/2} grid function between the convexity lower
    bound and the node minimum: ``envelope_gap`` is how far the lower bound
    pokes above the rooftop envelope of the node minimum.
    """

    threshold: float
    min_second_diff: float
    tolerance: float
    envelope_gap: float
    bracket: float
    gap_tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "min_second_diff": self.min_second_diff,
            "tolerance": self.tolerance,
            "envelope_gap": self.envelope_gap,
            "bracket": self.bracket,
            "gap_tolerance": self.gap_tolerance,
            "pass": self.passed,
        }


def extract_min_principle(u: GridFunction2D, c: float, tol: float = 1e-8) -> Tuple[GridFunction1D, MinPrincipleReport]:
    """v(x) = min over interior t-nodes of u(t, x), with its semiconvexity certificate."""
    interior = u.values.shape[0] > 2
    rows = u.values[1:-1] if interior else u.values
    ts = u.ts[1:-1] if interior else u.ts
    upper = np.min(rows, axis=0)
    lower = np.array([convex_floor(ts, rows[:, j]) for j in range(rows.shape[1])])
    v = GridFunction1D(u.xs, upper)

    d2 = v.second_differences()
    threshold = _slope_floor(c)
    min_d2 = float(np.min(d2)) if d2.size else math.inf
    envelope = rooftop_envelope_values(u.xs, upper, float(upper[0]), float(upper[-1]), c - HALF_PI)
    finite = np.isfinite(lower)
    gap = float(np.max(lower[finite] - envelope[finite])) if np.any(finite) else -math.inf
    bracket = float(np.max(upper[finite] - lower[finite])) if np.any(finite) else 0.0
    report = MinPrincipleReport(
        threshold=threshold,
        min_second_diff=min_d2,
        tolerance=tol / u.dx ** 2,
        envelope_gap=gap,
        bracket=bracket,
        gap_tolerance=tol,
        passed=bool(gap <= tol),
    )
    return v, report


def legendre_joint_convexity(envelopes: np.ndarray, dx: float, tol: float = 1e-8) -> Dict[str, float]:
    """Minimum second difference in x over every tau-slice w_tau.

    For c >= pi/2 each w_tau is convex, so u = max_tau (w_tau + t tau) is
    jointly convex as a maximum of jointly convex functions.
    """
    w = np.asarray(envelopes, dtype=float)
    d2 = (w[:, 2:] - 2.0 * w[:, 1:-1] + w[:, :-2]) / dx ** 2
    min_d2 = float(np.min(d2)) if d2.size else math.inf
    return {"min_second_diff": min_d2, "tolerance": tol / dx ** 2, "pass": bool(min_d2 >= -tol / dx ** 2)}


def joint_convexity_certificate(
    convexity: ConvexityReport, envelopes: Optional[np.ndarray] = None, dx: Optional[float] = None, tol: float = 1e-8
) -> Dict[str, object]:
    """Convexity along t and along every grid-aligned slice, plus convex tau-slices when given.

    ``convexity`` must carry the slope-0 slices. The smallest eigenvalue of the
    centred Hessian is kept as ``min_hessian_eig`` for reference only.
    """
    directional = convexity.min_slice_second_diff
    ok = convexity.time_convex() and (directional is None or directional >= -convexity.tolerance_x)
    out: Dict[str, object] = {
        "min_second_diff_t": convexity.min_second_diff_t,
        "min_slice_second_diff": directional,
        "tolerance": convexity.tolerance_x,
        "min_hessian_eig": convexity.min_joint_hessian_eig,
    }
    if envelopes is not None and dx is not None:
        route = legendre_joint_convexity(envelopes, dx, tol)
        out["min_envelope_second_diff"] = route["min_second_diff"]
        ok = ok and bool(route["pass"])
    out["pass"] = bool(ok)
    return out


@dataclass
class SolutionReport:
    """Verification of a grid function against Theta(D^2 u) = c, u = g."""

    c: float
    boundary_residual: float
    angle_quantiles: Dict[str, float]
    angle_nodes: int
    subsolution_rate: float
    hessian_rate: float
    tol_pde: float
    convexity: ConvexityReport
    min_principle: MinPrincipleReport
    slice_threshold: Optional[float] = None
    slices_ok: Optional[bool] = None
    joint_convexity: Optional[Dict[str, object]] = None
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def violations(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "pass": self.passed,
            "checks": dict(self.checks),
            "boundary_residual": self.boundary_residual,
            "angles": {"nodes": self.angle_nodes, "quantiles": self.angle_quantiles},
            "subsolution_rate": self.subsolution_rate,
            "hessian_rate": self.hessian_rate,
            "tol_pde": self.tol_pde,
            "convexity": self.convexity.to_dict(),
            "min_principle": self.min_principle.to_dict(),
            "slice_threshold": self.slice_threshold,
            "slices_ok": self.slices_ok,
            "joint_convexity": self.joint_convexity,
        }


def boundary_residual(u: GridFunction2D, g: BoundaryData) -> float:
    v = u.values
    return float(
        max(
            np.max(np.abs(v[0, :] - g.g0.values)),
            np.max(np.abs(v[-1, :] - g.g1.values)),
            np.max(np.abs(v[:, 0] - g.gl.values)),
            np.max(np.abs(v[:, -1] - g.gr.values)),
        )
    )


def verify_dsl_solution(
    u: GridFunction2D,
    c: float,
    g: BoundaryData,
    tolerances: ToleranceConfig = _DEFAULT_TOL,
    config: SolverConfig = _DEFAULT_SOLVER,
    slopes: Sequence[int] = DEFAULT_SLICE_SLOPES,
    envelopes: Optional[np.ndarray] = None,
) -> SolutionReport:
    """Certify a candidate solution on its grid.

    Passing requires a small boundary residual, time convexity, the minimum
    principle, the subsolution rate floor, semiconvexity along grid-aligned
    sheared slices and, for c >= pi/2, joint convexity.
    """
    if u.shape != (g.ts.shape[0], g.xs.shape[0]):
        raise GridFormatError(f"solution grid {u.shape} does not match boundary data")
    tol = tolerances.second_difference
    residual = boundary_residual(u, g)
    slopes = tuple(sorted(set(int(k) for k in slopes) | {0}))
    tol_pde = config.pde_tol_factor * u.dx

    node_angles = slice_node_angles(u, slopes, tol).ravel()
    rate = float(np.mean(node_angles >= c - tol_pde)) if node_angles.size else 1.0

    hess = discrete_hessians(u)
    singular_tol = tol / min(u.dt, u.dx) ** 2
    angles = planar_spacetime_angles(hess[..., 0, 0], hess[..., 0, 1], hess[..., 1, 1], singular_tol).ravel()
    hessian_rate = float(np.mean(angles >= c - tol_pde)) if angles.size else 1.0
    quantiles = (
        {f"q{int(round(100 * q)):02d}": float(np.quantile(angles, q)) for q in QUANTILES} if angles.size else {}
    )

    floor = _slope_floor(c)
    convexity = discrete_convexity_report(u, grid_aligned_slices(u, slopes), tol)
    _, mp = extract_min_principle(u, c, tol)
    slices_ok = convexity.slices_above(floor)

    checks = {
        "boundary_residual": residual <= tolerances.boundary_residual,
        "time_convexity": convexity.time_convex(),
        "min_principle": mp.passed,
        "subsolution_rate": rate >= config.subsolution_rate_floor,
        "sheared_slices": slices_ok,
    }
    report = SolutionReport(
        c=c,
        boundary_residual=residual,
        angle_quantiles=quantiles,
        angle_nodes=int(angles.size),
        subsolution_rate=rate,
        hessian_rate=hessian_rate,
        tol_pde=tol_pde,
        convexity=convexity,
        min_principle=mp,
        slice_threshold=floor,
        slices_ok=slices_ok,
        checks=checks,
    )
    if c >= HALF_PI:
        report.joint_convexity = joint_convexity_certificate(convexity, envelopes, u.dx, tol)
        checks["joint_convexity"] = bool(report.joint_convexity["pass"])
    logger.info("verified solution c=%.6g pass=%s failing=%s", c, report.passed, report.violations)
    return report
