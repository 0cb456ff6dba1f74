"""The explicit second-branch quadratic used as the golden fixture.

u(t, x) = eta t^2 / 2 + tan(theta0) |x'|^2 / 2 + tan(theta1) x_n^2 / 2 with
theta0 = pi/2 - eps/(n-1) and theta1 = eps + delta - pi/2. Its Hessian has
Theta = pi/2 + (n-1) theta0 + theta1 = (n-1) pi/2 + delta, so u lies in the
second branch, yet eta + tan(theta1) < 0 makes it fail 2-convexity.
"""

from dataclasses import dataclass
from typing import Dict
import math

from ..angles.lifted import spacetime_angle, spacetime_angle_spectral
from ..linalg.codec import matrix_to_document
from ..linalg.matrices import SpaceTimeMatrix
from ..subequations.branches import DslBranch
from ..subequations.predicates import in_Fcal, is_two_convex

__all__ = ["GoldenFixture", "golden_fixture"]

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class GoldenFixture:
    n: int = 3
    eps: float = 0.05
    delta: float = 0.1
    eta: float = 0.01

    @property
    def theta0(self) -> float:
        return HALF_PI - self.eps / (self.n - 1)

    @property
    def theta1(self) -> float:
        return self.eps + self.delta - HALF_PI

    @property
    def expected_angle(self) -> float:
        return HALF_PI + (self.n - 1) * self.theta0 + self.theta1

    @property
    def phase(self) -> float:
        """(n-1) pi/2 + delta."""
        return (self.n - 1) * HALF_PI + self.delta

    @property
    def two_convexity_gap(self) -> float:
        """eta + tan(theta1); negative for the default constants."""
        return self.eta + math.tan(self.theta1)

    def matrix(self) -> SpaceTimeMatrix:
        values = [self.eta] + [math.tan(self.theta0)] * (self.n - 1) + [math.tan(self.theta1)]
        return SpaceTimeMatrix.diag(values)

    def branch(self) -> DslBranch:
        return DslBranch(n=self.n, c=self.phase)

    def check(self, tol: float = 1e-9) -> Dict[str, object]:
        """Both angle routes, branch membership and the 2-convexity failure."""
        a = self.matrix()
        value = spacetime_angle(a)
        spectral = spacetime_angle_spectral(a).radians
        return {
            "expected": self.expected_angle,
            "schur": value.radians,
            "spectral": spectral,
            "angle_ok": abs(value.radians - self.expected_angle) <= tol
            and abs(spectral - self.expected_angle) <= tol,
            "member": in_Fcal(a, self.branch(), tol),
            "two_convexity_gap": self.two_convexity_gap,
            "two_convex": is_two_convex(a),
        }

    def to_document(self) -> Dict[str, object]:
        return matrix_to_document(self.matrix())


def golden_fixture(n: int = 3, eps: float = 0.05, delta: float = 0.1, eta: float = 0.01) -> GoldenFixture:
    return GoldenFixture(n=n, eps=eps, delta=delta, eta=eta)
