"""Seeded samplers for symmetric and space-time matrices.

Every draw comes from its own stream keyed by (seed, suite name, index), so
results do not depend on the order in which samples are evaluated.
"""

from enum import Enum
from typing import Callable, Union
import logging
import math
import zlib

import numpy as np

from ..core.exceptions import BisectionFailure
from ..core.schema import HarnessConfig
from ..linalg.matrices import SpaceTimeMatrix, SymMatrix
from ..subequations.branches import DslBranch, SlBranch

logger = logging.getLogger(__name__)

__all__ = [
    "Family",
    "sample_stream",
    "sample_sym",
    "sample_spacetime",
    "sample_in_branch",
    "sample_in_sl_branch",
    "random_direction",
    "fast_spacetime_angle",
]

HALF_PI = 0.5 * math.pi
NEAR_SINGULAR_RANGE = (1e-10, 1e-6)
WINDOW = (0.05, 0.5)
_DEFAULT_HARNESS = HarnessConfig()


class Family(str, Enum):
    """Sampling families."""
    GAUSSIAN = "gaussian"
    BLOCK_DIAGONAL = "block-diagonal"
    RANK_ONE_COUPLED = "rank-one-coupled"
    NEAR_SINGULAR_CLASS = "near-singular-class"


FamilyLike = Union[Family, str]


def sample_stream(seed: int, suite: str = "", index: int = 0) -> np.random.Generator:
    """Generator for draw ``index`` of ``suite`` under the root ``seed``."""
    key = zlib.crc32(suite.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=(key, int(index))))


def _goe(rng: np.random.Generator, k: int) -> np.ndarray:
    g = rng.standard_normal((k, k))
    return 0.5 * (g + g.T)


def _signed_log_uniform(rng: np.random.Generator, size=None) -> np.ndarray:
    lo, hi = NEAR_SINGULAR_RANGE
    mags = np.exp(rng.uniform(math.log(lo), math.log(hi), size=size))
    signs = rng.choice([-1.0, 1.0], size=size)
    return mags * signs


def sample_sym(n: int, seed: int, family: FamilyLike = Family.GAUSSIAN, index: int = 0, suite: str = "") -> SymMatrix:
    """Random n x n symmetric matrix.

    block-diagonal draws a diagonal matrix, rank-one-coupled a diagonal plus
    a rank-one term, near-singular-class a matrix whose smallest |eigenvalue|
    lies in +-[1e-10, 1e-6].
    """
    family = Family(family)
    rng = sample_stream(seed, suite, index)
    if family is Family.GAUSSIAN:
        return SymMatrix(_goe(rng, n))
    if family is Family.BLOCK_DIAGONAL:
        return SymMatrix.diag(rng.standard_normal(n))
    if family is Family.RANK_ONE_COUPLED:
        u = rng.standard_normal(n)
        return SymMatrix(np.diag(rng.standard_normal(n)) + np.outer(u, u))
    values = rng.standard_normal(n)
    values[0] = _signed_log_uniform(rng)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return SymMatrix.from_upper(q @ np.diag(values) @ q.T)


def sample_spacetime(
    n: int, seed: int, family: FamilyLike = Family.GAUSSIAN, index: int = 0, suite: str = ""
) -> SpaceTimeMatrix:
    """Random space-time matrix on R x R^n.

    block-diagonal has a_vec = 0 exactly; rank-one-coupled couples time to a
    single eigendirection of A+; near-singular-class draws a00 and the
    entries of a_vec in +-[1e-10, 1e-6].
    """
    family = Family(family)
    rng = sample_stream(seed, suite, index)
    if family is Family.GAUSSIAN:
        return SpaceTimeMatrix.from_full(SymMatrix(_goe(rng, n + 1)).entries)
    a_plus = SymMatrix(_goe(rng, n))
    if family is Family.BLOCK_DIAGONAL:
        return SpaceTimeMatrix.block_diag(float(rng.standard_normal()), a_plus)
    if family is Family.RANK_ONE_COUPLED:
        _, vecs = np.linalg.eigh(a_plus.entries)
        direction = vecs[:, int(rng.integers(n))]
        return SpaceTimeMatrix(float(rng.standard_normal()), float(rng.standard_normal()) * direction, a_plus)
    return SpaceTimeMatrix(float(_signed_log_uniform(rng)), _signed_log_uniform(rng, size=n), a_plus)


def random_direction(n: int, seed: int, index: int = 0, suite: str = "", scale: float = 3.0) -> np.ndarray:
    """Gaussian slice direction V in R^n."""
    return scale * sample_stream(seed, suite + "/direction", index).standard_normal(n)


def fast_spacetime_angle(a: SpaceTimeMatrix) -> float:
    """Schur-route Theta with LAPACK kernels, for bracketing only."""
    lam = np.linalg.eigvalsh(a.a_plus.entries)
    base = float(np.sum(np.arctan(lam)))
    if a.coupling_scale() == 0.0:
        return base + HALF_PI
    w = np.linalg.solve(np.eye(a.n) + 1j * a.a_plus.entries, a.a_vec.astype(complex))
    z = 1j * a.a00 + a.a_vec @ w
    return base + math.atan2(z.imag, max(z.real, 0.0))


def _shift_to_window(
    angle_of: Callable[[float], float], target: float, iters: int, doublings: int, what: str
) -> float:
    """Smallest-found shift s with angle_of(s) >= target (monotone nondecreasing map)."""
    lo, hi = 0.0, 0.0
    if angle_of(0.0) >= target:
        step = 1.0
        lo = -step
        for _ in range(doublings):
            if angle_of(lo) < target:
                break
            step *= 2.0
            lo = -step
        else:
            raise BisectionFailure(f"{what}: cannot bracket target {target} from below")
    else:
        step = 1.0
        hi = step
        for _ in range(doublings):
            if angle_of(hi) >= target:
                break
            step *= 2.0
            hi = step
        else:
            raise BisectionFailure(f"{what}: cannot bracket target {target} from above")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if angle_of(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def _target(c: float, supremum: float) -> float:
    lo, hi = WINDOW
    return min(c + 0.5 * (lo + hi), 0.5 * (c + supremum))


def sample_in_branch(
    b: DslBranch,
    seed: int,
    family: FamilyLike = Family.GAUSSIAN,
    index: int = 0,
    suite: str = "",
    config: HarnessConfig = _DEFAULT_HARNESS,
) -> SpaceTimeMatrix:
    """A + s I with Theta just above c, s found by bisection.

    Block-diagonal draws are made time-positive and shifted in space only,
    keeping the map s -> Theta continuous.
    """
    a0 = sample_spacetime(b.n, seed, family, index, suite)
    target = _target(b.c, (b.n + 1) * HALF_PI)
    space_only = Family(family) is Family.BLOCK_DIAGONAL
    if space_only:
        a0 = SpaceTimeMatrix.block_diag(abs(a0.a00), a0.a_plus)

    def shifted(s: float) -> SpaceTimeMatrix:
        if space_only:
            return SpaceTimeMatrix(a0.a00, a0.a_vec, a0.a_plus + SymMatrix.identity(b.n) * s)
        return a0.shift(s)

    s = _shift_to_window(
        lambda s: fast_spacetime_angle(shifted(s)), target, config.bisection_iters, config.bracket_doublings, "sample_in_branch"
    )
    return shifted(s)


def sample_in_sl_branch(
    n: int, c: float, seed: int, index: int = 0, suite: str = "", config: HarnessConfig = _DEFAULT_HARNESS
) -> SymMatrix:
    """B + s I with theta(B + s I) just above c."""
    branch = SlBranch(n=n, c=c)
    b0 = sample_sym(n, seed, Family.GAUSSIAN, index, suite)
    lam = np.linalg.eigvalsh(b0.entries)
    target = _target(branch.c, n * HALF_PI)
    s = _shift_to_window(
        lambda s: float(np.sum(np.arctan(lam + s))), target, config.bisection_iters, config.bracket_doublings, "sample_in_sl_branch"
    )
    return b0 + SymMatrix.identity(n) * s
