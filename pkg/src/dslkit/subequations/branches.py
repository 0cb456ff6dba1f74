"""Branch definitions for the SL and DSL subequations."""

from enum import Enum
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

__all__ = ["Tier", "SlBranch", "DslBranch"]

HALF_PI = 0.5 * math.pi


class Tier(str, Enum):
    """Position of a DSL phase among the branches."""
    TOP = "Top"
    SECOND = "Second"
    INNER = "Inner"


class SlBranch(BaseModel):
    """F_c = {B in Sym(R^n): theta(B) >= c}, c in (-n pi/2, n pi/2)."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, description="Space dimension")
    c: float = Field(description="Phase")

    @model_validator(mode="after")
    def phase_in_range(self) -> "SlBranch":
        bound = self.n * HALF_PI
        if not -bound < self.c < bound:
            raise ValueError(f"SL phase {self.c} outside (-{self.n}pi/2, {self.n}pi/2)")
        return self

    @property
    def dual_phase(self) -> float:
        """The dual of F_c is F_{-c}."""
        return -self.c


class DslBranch(BaseModel):
    """F_c = {A in Sym(R^{n+1}): Theta(A) >= c}, c in (-(n+1)pi/2, (n+1)pi/2)."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, description="Space dimension")
    c: float = Field(description="Phase")

    @model_validator(mode="after")
    def phase_in_range(self) -> "DslBranch":
        bound = (self.n + 1) * HALF_PI
        if not -bound < self.c < bound:
            raise ValueError(f"DSL phase {self.c} outside (-{self.n + 1}pi/2, {self.n + 1}pi/2)")
        return self

    @property
    def tier(self) -> Tier:
        if self.c >= self.n * HALF_PI:
            return Tier.TOP
        if self.c >= (self.n - 1) * HALF_PI:
            return Tier.SECOND
        return Tier.INNER

    @property
    def slice_phase(self) -> float:
        """c - pi/2, the SL phase of affine slices."""
        return self.c - HALF_PI

    @property
    def in_top_two(self) -> bool:
        return self.tier is not Tier.INNER

    @classmethod
    def second(cls, n: int, offset: float = 0.0) -> "DslBranch":
        return cls(n=n, c=(n - 1) * HALF_PI + offset)

    @classmethod
    def top(cls, n: int, offset: float = 0.0) -> "DslBranch":
        return cls(n=n, c=n * HALF_PI + offset)
