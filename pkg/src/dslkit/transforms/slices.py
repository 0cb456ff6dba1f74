"""Affine slices x -> (t0 + V.x, x) and the induced pullback of Hessians.

For A in Sym(R^{1+n}) with blocks (a00, a, A+):

    pullback_slice(A, V) = a00 V V^T + V a^T + a V^T + A+

which is the Hessian of u o l_{t0,V} when A = D^2 u. `pullback_block` is the
general version for m time-like coordinates, and `shear_conjugate` builds
the matrix A_V whose space block is exactly the pullback.
"""

from dataclasses import dataclass
from typing import Optional, Protocol, Sequence, Union
import logging

import numpy as np

from ..core.exceptions import MatrixFormatError
from ..linalg.matrices import SpaceTimeMatrix, SymMatrix, as_sym

logger = logging.getLogger(__name__)

__all__ = [
    "AffineSlice",
    "pullback_slice",
    "pullback_slices_batch",
    "pullback_block",
    "shear_conjugate",
    "SmoothFunction",
    "QuadraticFunction",
    "SinCosFunction",
    "hessian_pullback_check",
]


@dataclass(frozen=True, eq=False)
class AffineSlice:
    """The affine map x -> (t0 + V.x, x) from R^n into space-time."""

    t0: float
    V: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.V, dtype=float, copy=True).reshape(-1)
        if not (np.isfinite(self.t0) and np.all(np.isfinite(v))):
            raise MatrixFormatError("affine slice parameters must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "V", v)

    @property
    def n(self) -> int:
        return int(self.V.shape[0])

    def time_at(self, x: np.ndarray) -> np.ndarray:
        """t0 + V.x for one point (n,) or many points (k, n)."""
        return self.t0 + np.asarray(x, dtype=float) @ self.V

    def embed(self, x: np.ndarray):
        x = np.asarray(x, dtype=float)
        return self.time_at(x), x

    def to_dict(self) -> dict:
        return {"t0": self.t0, "V": self.V.tolist()}


def _as_vector(v: Union[np.ndarray, Sequence[float]], n: int) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.shape[0] != n:
        raise MatrixFormatError(f"slice direction has length {v.shape[0]}, expected {n}")
    return v


def pullback_slice(a: SpaceTimeMatrix, v: Union[np.ndarray, Sequence[float]]) -> SymMatrix:
    """a00 V V^T + V a^T + a V^T + A+ (exactly symmetric)."""
    v = _as_vector(v, a.n)
    cross = np.outer(v, a.a_vec)
    cross = cross + cross.T
    return SymMatrix(a.a00 * np.outer(v, v) + cross + a.a_plus.entries)


def pullback_slices_batch(a: SpaceTimeMatrix, vs: np.ndarray) -> np.ndarray:
    """Pullbacks for a stack of directions ``vs`` of shape (k, n); returns (k, n, n)."""
    vs = np.atleast_2d(np.asarray(vs, dtype=float))
    outer = vs[:, :, None] * vs[:, None, :]
    cross = vs[:, :, None] * a.a_vec[None, None, :]
    cross = cross + np.swapaxes(cross, 1, 2)
    return a.a00 * outer + cross + a.a_plus.entries[None, :, :]


def pullback_block(a: Union[SymMatrix, np.ndarray], m: int, gamma: np.ndarray) -> SymMatrix:
    """Pullback of A in Sym(R^{m+n}) under x -> (Gamma^T x, x), Gamma of shape (n, m).

    With A = [[B, C^T], [C, D]]: Gamma B Gamma^T + Gamma C^T + C Gamma^T + D.
    """
    full = as_sym(a).entries
    size = full.shape[0]
    if not 1 <= m < size:
        raise MatrixFormatError(f"time block size {m} must lie in [1, {size - 1}]")
    n = size - m
    gamma = np.asarray(gamma, dtype=float).reshape(n, m)
    b_blk = full[:m, :m]
    c_blk = full[m:, :m]
    quad = gamma @ b_blk @ gamma.T
    quad = np.triu(quad) + np.triu(quad, 1).T
    cross = gamma @ c_blk.T
    cross = cross + cross.T
    return SymMatrix(quad + cross + full[m:, m:])


def shear_conjugate(a: SpaceTimeMatrix, v: Union[np.ndarray, Sequence[float]]) -> SpaceTimeMatrix:
    """A_V: time block a00, coupling a00 V + a, space block the slice pullback."""
    v = _as_vector(v, a.n)
    return SpaceTimeMatrix(a.a00, a.a00 * v + a.a_vec, pullback_slice(a, v))


class SmoothFunction(Protocol):
    """A C^2 function on space-time with a known Hessian."""

    def value(self, t: float, x: np.ndarray) -> float: ...

    def hessian(self, t: float, x: np.ndarray) -> SpaceTimeMatrix: ...


@dataclass(frozen=True, eq=False)
class QuadraticFunction:
    """u(t, x) = z^T A z / 2 + g.z with z = (t, x)."""

    matrix: SpaceTimeMatrix
    gradient: Optional[np.ndarray] = None

    def _grad(self) -> np.ndarray:
        if self.gradient is None:
            return np.zeros(self.matrix.n + 1)
        return np.asarray(self.gradient, dtype=float)

    def value(self, t: float, x: np.ndarray) -> float:
        z = np.concatenate(([t], np.atleast_1d(x)))
        return float(0.5 * z @ self.matrix.full() @ z + self._grad() @ z)

    def hessian(self, t: float, x: np.ndarray) -> SpaceTimeMatrix:
        return self.matrix


@dataclass(frozen=True)
class SinCosFunction:
    """u(t, x) = sin(t) cos(x_1)."""

    n: int = 1

    def value(self, t: float, x: np.ndarray) -> float:
        return float(np.sin(t) * np.cos(np.atleast_1d(x)[0]))

    def hessian(self, t: float, x: np.ndarray) -> SpaceTimeMatrix:
        x1 = float(np.atleast_1d(x)[0])
        h = np.zeros((self.n + 1, self.n + 1))
        h[0, 0] = -np.sin(t) * np.cos(x1)
        h[0, 1] = h[1, 0] = -np.cos(t) * np.sin(x1)
        h[1, 1] = -np.sin(t) * np.cos(x1)
        return SpaceTimeMatrix.from_full(h)


def hessian_pullback_check(
    u: SmoothFunction,
    t0: float,
    v: Union[np.ndarray, Sequence[float]],
    x: Union[np.ndarray, Sequence[float]],
    h: float,
) -> float:
    """Max-norm gap between the central-difference Hessian of u o l_{t0,V} and the pullback.

    The gap is O(h^2) for smooth u and vanishes up to rounding for quadratics.
    """
    v = np.asarray(v, dtype=float).reshape(-1)
    x = np.asarray(x, dtype=float).reshape(-1)
    sl = AffineSlice(t0, v)

    def f(y: np.ndarray) -> float:
        return u.value(float(sl.time_at(y)), y)

    n = x.shape[0]
    fd = np.zeros((n, n))
    f0 = f(x)
    eye = np.eye(n) * h
    for i in range(n):
        fd[i, i] = (f(x + eye[i]) - 2.0 * f0 + f(x - eye[i])) / h ** 2
        for j in range(i + 1, n):
            fd[i, j] = fd[j, i] = (
                f(x + eye[i] + eye[j])
                - f(x + eye[i] - eye[j])
                - f(x - eye[i] + eye[j])
                + f(x - eye[i] - eye[j])
            ) / (4.0 * h ** 2)
    exact = pullback_slice(u.hessian(float(sl.time_at(x)), x), v).entries
    return float(np.max(np.abs(fd - exact)))
