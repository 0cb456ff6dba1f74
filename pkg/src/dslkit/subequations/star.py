"""Star-product membership P_1 * F_{c - pi/2}.

A space-time matrix A belongs to the star product when a00 >= 0 and every
slice pullback l_V^* A lies in F_{c - pi/2}, i.e.

    inf_V theta(l_V^* A) >= c - pi/2.

The infimum has no closed form in general. It is approximated from above by
the critical direction V* = -a/a00 (when a00 > 0), uniform and log-radial
box samples, and Nelder-Mead local searches. A `False` answer comes with a
witness direction and is a certificate; a `True` answer is approximate.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Union
import logging
import math

import numpy as np
from scipy.optimize import minimize

from ..core.exceptions import HypothesisViolation
from ..core.schema import StarSearchConfig
from ..linalg.matrices import SpaceTimeMatrix
from ..transforms.slices import pullback_slices_batch
from .branches import DslBranch

logger = logging.getLogger(__name__)

__all__ = ["StarSearchResult", "slice_angles", "critical_direction", "in_star_product"]

HALF_PI = 0.5 * math.pi
_DEFAULT_SEARCH = StarSearchConfig()

RngLike = Union[np.random.Generator, int, None]


@dataclass
class StarSearchResult:
    """Outcome of a star-product membership search."""

    member: bool
    witness: Optional[np.ndarray]
    infimum: float
    target: float
    a00_ok: bool
    evaluations: int = 0
    sources: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.member

    def to_dict(self) -> dict:
        return {
            "member": self.member,
            "witness": None if self.witness is None else self.witness.tolist(),
            "infimum": self.infimum,
            "target": self.target,
            "a00_ok": self.a00_ok,
            "evaluations": self.evaluations,
        }


def slice_angles(a: SpaceTimeMatrix, vs: np.ndarray) -> np.ndarray:
    """theta(l_V^* A) for each row V of ``vs``, via batched symmetric eigenvalues."""
    mats = pullback_slices_batch(a, vs)
    return np.sum(np.arctan(np.linalg.eigvalsh(mats)), axis=-1)


def critical_direction(a: SpaceTimeMatrix) -> np.ndarray:
    """V* = -a / a00, at which the sheared matrix is block diagonal."""
    return -a.a_vec / a.a00


def in_star_product(
    a: SpaceTimeMatrix,
    b: DslBranch,
    rng: RngLike = None,
    budget: StarSearchConfig = _DEFAULT_SEARCH,
    tol: float = 1e-9,
) -> StarSearchResult:
    """Approximate membership of A in P_1 * F_{c - pi/2}; requires c >= (n-1)pi/2."""
    if b.c < (b.n - 1) * HALF_PI - tol:
        raise HypothesisViolation(
            "star-product identity applies to the top two branches only",
            context={"operation": "in_star_product", "value": repr(b.c)},
        )
    target = b.slice_phase - tol
    if a.a00 < -tol:
        return StarSearchResult(False, None, -math.inf, target, a00_ok=False, sources=["a00"])

    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    n = a.n
    best_v = np.zeros(n)
    best = float(slice_angles(a, best_v[None, :])[0])
    evaluations = 1
    sources = ["origin"]

    def consider(vs: np.ndarray, label: str) -> bool:
        nonlocal best, best_v, evaluations
        values = slice_angles(a, vs)
        evaluations += values.shape[0]
        k = int(np.argmin(values))
        if values[k] < best:
            best, best_v = float(values[k]), vs[k].copy()
            sources.append(label)
        return best < target

    centre = np.zeros(n)
    if a.a00 > tol:
        centre = critical_direction(a)
        if consider(centre[None, :], "critical"):
            return _result(False, best_v, best, target, evaluations, sources)

    radius = min(a.norm() / max(a.a00, tol), budget.box_cap)
    radius = max(radius, 1.0)
    if budget.box_samples:
        half = budget.box_samples // 2
        box = centre + gen.uniform(-radius, radius, size=(half, n))
        directions = gen.standard_normal((budget.box_samples - half, n))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = radius ** gen.uniform(-1.0, 1.0, size=(budget.box_samples - half, 1))
        radial = centre + directions * radii
        if consider(np.vstack([box, radial]), "box"):
            return _result(False, best_v, best, target, evaluations, sources)

    def objective(v: np.ndarray) -> float:
        return float(slice_angles(a, v[None, :])[0])

    starts = [best_v.copy()] + [centre + gen.uniform(-radius, radius, size=n) for _ in range(max(budget.starts - 1, 0))]
    for x0 in starts[: budget.starts]:
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"maxiter": budget.local_max_iter, "xatol": 1e-10, "fatol": 1e-14},
        )
        evaluations += int(res.nfev)
        if res.fun < best:
            best, best_v = float(res.fun), np.asarray(res.x, dtype=float)
            sources.append("local")
        if best < target:
            break

    return _result(best >= target, best_v, best, target, evaluations, sources)


def _result(member: bool, v: np.ndarray, value: float, target: float, evaluations: int, sources: List[str]) -> StarSearchResult:
    logger.debug("star search member=%s infimum=%.6g target=%.6g evals=%d", member, value, target, evaluations)
    return StarSearchResult(
        member=member,
        witness=v,
        infimum=value,
        target=target,
        a00_ok=True,
        evaluations=evaluations,
        sources=sources,
    )
