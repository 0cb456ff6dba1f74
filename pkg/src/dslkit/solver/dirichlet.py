"""DSL Dirichlet solver in one space dimension via partial Legendre duality.

For each tau on a symmetric grid the solver builds the obstacle
min(g0, g1 - tau) and the caps min_t g(t, x_end) - t tau, takes the rooftop
envelope w_tau in the shifted phase c - pi/2, and returns

    u(t, x) = max_tau  w_tau(x) + t tau

with the rows t = 0 and t = 1 set to g0 and g1. Besides the uniform grid the
tau-set holds the time slopes of gl and gr, so the caps transform back to the
lateral traces exactly, and the kink values g1 - g0 of the obstacle.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional
import logging
import time

import numpy as np

from ..core.schema import SolverConfig
from ..transforms.grids import GridFunction2D
from ..transforms.legendre import legendre_down_values, legendre_up_values, tau_grid, time_lipschitz, time_slopes
from .envelope import rooftop_envelope_values
from .problems import DslDirichletProblem

logger = logging.getLogger(__name__)

__all__ = [
    "DirichletSolution",
    "solve_dsl_dirichlet",
    "solve_dsl_dirichlet_detailed",
    "data_lipschitz",
    "solver_taus",
]

_DEFAULT_SOLVER = SolverConfig()


@dataclass
class DirichletSolution:
    """Solver output together with the per-tau envelopes it was assembled from."""

    u: GridFunction2D
    taus: np.ndarray
    envelopes: np.ndarray
    lipschitz: float
    elapsed_ms: float

    def to_dict(self) -> dict:
        return {
            "nt": int(self.u.ts.shape[0]),
            "nx": int(self.u.xs.shape[0]),
            "ntau": int(self.taus.shape[0]),
            "tau_range": [float(self.taus[0]), float(self.taus[-1])],
            "lipschitz": self.lipschitz,
            "elapsed_ms": self.elapsed_ms,
        }


def data_lipschitz(p: DslDirichletProblem) -> float:
    """Largest time slope seen in the boundary data."""
    b = p.boundary
    return max(
        time_lipschitz(b.ts, b.gl.values),
        time_lipschitz(b.ts, b.gr.values),
        float(np.max(np.abs(b.g1.values - b.g0.values))),
    )


def solver_taus(p: DslDirichletProblem, config: SolverConfig = _DEFAULT_SOLVER) -> np.ndarray:
    """Sorted tau-set: the symmetric grid, the lateral time slopes and the kinks g1 - g0."""
    b = p.boundary
    count = p.ntau if p.ntau is not None else config.tau_factor * b.ts.shape[0] + 1
    base = tau_grid(data_lipschitz(p), count, p.tau_bound)
    extra = (time_slopes(b.ts, b.gl.values), time_slopes(b.ts, b.gr.values), b.g1.values - b.g0.values)
    return np.unique(np.concatenate((base,) + extra))


def _envelope_block(
    xs: np.ndarray, g0: np.ndarray, g1: np.ndarray, taus: np.ndarray, caps_l: np.ndarray, caps_r: np.ndarray, a: float
) -> np.ndarray:
    out = np.empty((taus.shape[0], xs.shape[0]))
    for k, tau in enumerate(taus):
        obstacle = np.minimum(g0, g1 - tau)
        out[k] = rooftop_envelope_values(xs, obstacle, caps_l[k], caps_r[k], a)
    return out


def solve_dsl_dirichlet_detailed(
    p: DslDirichletProblem, config: SolverConfig = _DEFAULT_SOLVER
) -> DirichletSolution:
    """Solve and keep the tau-grid and envelopes (used by the joint-convexity check)."""
    started = time.perf_counter()
    b = p.boundary
    ts, xs = b.ts, b.xs
    lipschitz = data_lipschitz(p)
    taus = solver_taus(p, config)

    caps_l = legendre_down_values(ts, b.gl.values, taus, config.chunk_size)
    caps_r = legendre_down_values(ts, b.gr.values, taus, config.chunk_size)
    a = p.slice_phase
    g0, g1 = b.g0.values, b.g1.values

    if config.workers > 1:
        blocks = np.array_split(np.arange(taus.shape[0]), config.workers)
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(
                pool.map(
                    lambda idx: _envelope_block(xs, g0, g1, taus[idx], caps_l[idx], caps_r[idx], a),
                    blocks,
                )
            )
        envelopes = np.vstack(parts)
    else:
        envelopes = _envelope_block(xs, g0, g1, taus, caps_l, caps_r, a)

    values = legendre_up_values(taus, envelopes, ts, config.chunk_size)
    values[0, :] = g0
    values[-1, :] = g1
    u = GridFunction2D(ts, xs, values, axis="t")
    elapsed = 1000.0 * (time.perf_counter() - started)
    logger.info(
        "solved DSL problem c=%.6g on %dx%d with %d tau nodes in %.1f ms",
        p.c, ts.shape[0], xs.shape[0], taus.shape[0], elapsed,
    )
    return DirichletSolution(u=u, taus=taus, envelopes=envelopes, lipschitz=lipschitz, elapsed_ms=elapsed)


def solve_dsl_dirichlet(p: DslDirichletProblem, config: Optional[SolverConfig] = None) -> GridFunction2D:
    """u on the (t, x) grid of the boundary data."""
    return solve_dsl_dirichlet_detailed(p, config or _DEFAULT_SOLVER).u
