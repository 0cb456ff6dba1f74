"""Immutable matrix value types: symmetric matrices, space-time block matrices, spectra.

A `SpaceTimeMatrix` of space dimension ``n`` is the (n+1)x(n+1) symmetric matrix

    [[a00,   a_vec^T],
     [a_vec, a_plus ]]

with the time coordinate first. All arrays are stored read-only.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from ..core.exceptions import MatrixFormatError

__all__ = [
    "SymMatrix",
    "SpaceTimeMatrix",
    "ComplexSpectrum",
    "as_sym",
]

ArrayLike = Union[np.ndarray, Sequence[Sequence[float]]]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """A real symmetric n x n matrix; symmetry is exact by construction."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise MatrixFormatError(
                f"expected a non-empty square matrix, got shape {a.shape}",
                context={"value_name": "shape", "value": str(a.shape)},
            )
        if not np.all(np.isfinite(a)):
            raise MatrixFormatError("matrix entries must be finite")
        if not np.array_equal(a, a.T):
            i, j = np.unravel_index(np.argmax(np.abs(a - a.T)), a.shape)
            raise MatrixFormatError(
                f"matrix is not exactly symmetric at ({i},{j})",
                context={"value_name": f"a[{i}][{j}] - a[{j}][{i}]", "value": repr(a[i, j] - a[j, i])},
            )
        object.__setattr__(self, "entries", _frozen(a))

    @classmethod
    def from_upper(cls, a: ArrayLike) -> "SymMatrix":
        """Build from the upper triangle of `a`, mirroring it exactly."""
        a = np.asarray(a, dtype=float)
        upper = np.triu(a)
        return cls(upper + np.triu(a, 1).T)

    @classmethod
    def diag(cls, values: Iterable[float]) -> "SymMatrix":
        """Diagonal matrix with the given entries."""
        return cls(np.diag(np.asarray(list(values), dtype=float)))

    @classmethod
    def zeros(cls, n: int) -> "SymMatrix":
        return cls(np.zeros((n, n)))

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls(np.eye(n))

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.linalg.norm(self.entries))

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def conjugate(self, u: np.ndarray) -> "SymMatrix":
        """Return U^T A U, symmetrized from its upper triangle."""
        return SymMatrix.from_upper(u.T @ self.entries @ u)

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        return SymMatrix(self.entries + other.entries)

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        return SymMatrix(self.entries - other.entries)

    def __neg__(self) -> "SymMatrix":
        return SymMatrix(-self.entries)

    def __mul__(self, scalar: float) -> "SymMatrix":
        return SymMatrix(float(scalar) * self.entries)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymMatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def tolist(self) -> list:
        return self.entries.tolist()


def as_sym(a: Union["SymMatrix", ArrayLike]) -> SymMatrix:
    """Coerce arrays to `SymMatrix`, passing existing instances through."""
    return a if isinstance(a, SymMatrix) else SymMatrix(np.asarray(a, dtype=float))


@dataclass(frozen=True, eq=False)
class SpaceTimeMatrix:
    """Block view (a00, a_vec, a_plus) of a symmetric matrix on R x R^n."""

    a00: float
    a_vec: np.ndarray
    a_plus: SymMatrix

    def __post_init__(self) -> None:
        a_vec = np.asarray(self.a_vec, dtype=float).reshape(-1)
        a_plus = as_sym(self.a_plus)
        if a_vec.shape[0] != a_plus.n:
            raise MatrixFormatError(
                f"a_vec has length {a_vec.shape[0]} but a_plus is {a_plus.n}x{a_plus.n}"
            )
        if not (np.isfinite(self.a00) and np.all(np.isfinite(a_vec))):
            raise MatrixFormatError("matrix entries must be finite")
        object.__setattr__(self, "a00", float(self.a00))
        object.__setattr__(self, "a_vec", _frozen(a_vec))
        object.__setattr__(self, "a_plus", a_plus)

    @classmethod
    def from_full(cls, m: ArrayLike) -> "SpaceTimeMatrix":
        """Split an exactly symmetric (n+1)x(n+1) matrix into blocks."""
        full = SymMatrix(np.asarray(m, dtype=float))
        if full.n < 2:
            raise MatrixFormatError("a space-time matrix needs at least one space dimension")
        e = full.entries
        return cls(e[0, 0], e[1:, 0], SymMatrix(e[1:, 1:]))

    @classmethod
    def block_diag(cls, a00: float, a_plus: Union[SymMatrix, ArrayLike]) -> "SpaceTimeMatrix":
        """diag(a00, A+)."""
        a_plus = as_sym(a_plus)
        return cls(a00, np.zeros(a_plus.n), a_plus)

    @classmethod
    def diag(cls, values: Iterable[float]) -> "SpaceTimeMatrix":
        values = list(values)
        return cls.block_diag(values[0], SymMatrix.diag(values[1:]))

    @property
    def n(self) -> int:
        """Space dimension."""
        return self.a_plus.n

    def full(self) -> np.ndarray:
        """Reassemble the (n+1)x(n+1) array."""
        n = self.n
        m = np.empty((n + 1, n + 1))
        m[0, 0] = self.a00
        m[0, 1:] = self.a_vec
        m[1:, 0] = self.a_vec
        m[1:, 1:] = self.a_plus.entries
        return m

    def as_sym(self) -> SymMatrix:
        return SymMatrix(self.full())

    def norm(self) -> float:
        return float(np.linalg.norm(self.full()))

    def coupling_scale(self) -> float:
        """max(|a00|, |a_vec|_inf): distance-like measure to the singular class."""
        vec = float(np.max(np.abs(self.a_vec))) if self.a_vec.size else 0.0
        return max(abs(self.a00), vec)

    def conjugate(self, v: np.ndarray) -> "SpaceTimeMatrix":
        """Return V^T A V for an orthogonal (n+1)x(n+1) matrix V."""
        return SpaceTimeMatrix.from_full(SymMatrix.from_upper(v.T @ self.full() @ v).entries)

    def __add__(self, other: "SpaceTimeMatrix") -> "SpaceTimeMatrix":
        return SpaceTimeMatrix.from_full(self.full() + other.full())

    def __neg__(self) -> "SpaceTimeMatrix":
        return SpaceTimeMatrix(-self.a00, -self.a_vec, -self.a_plus)

    def shift(self, s: float) -> "SpaceTimeMatrix":
        """A + s*I_{n+1}."""
        return SpaceTimeMatrix(self.a00 + s, self.a_vec, self.a_plus + SymMatrix.identity(self.n) * s)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SpaceTimeMatrix) and np.array_equal(self.full(), other.full())

    def __hash__(self) -> int:
        return hash(self.full().tobytes())

    def tolist(self) -> list:
        return self.full().tolist()


@dataclass(frozen=True, eq=False)
class ComplexSpectrum:
    """Eigenvalues with multiplicity plus a backward-error estimate."""

    values: np.ndarray
    residual: float
    iterations: int = 0
    det_check: Optional[float] = field(default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.array(self.values, dtype=complex, copy=True))
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def product(self) -> complex:
        return complex(np.prod(self.values))
