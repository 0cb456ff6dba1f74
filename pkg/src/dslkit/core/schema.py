"""
Pydantic models for dslkit configuration.

This module defines the type-safe configuration schemas for the cascading
configuration system. All configurations are validated using Pydantic V2.
Every numerical tolerance used across the package lives here so that one
`--tol` flag or one YAML file can tune a whole run.
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator


class LogLevel(str, Enum):
    """Enumerate supported logging levels used across the system."""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


# Public API
__all__ = [
    "LogLevel",
    "ToleranceConfig",
    "EigenConfig",
    "StarSearchConfig",
    "SolverConfig",
    "HarnessConfig",
    "SystemConfig",
    "RuntimeConfig",
]


class ToleranceConfig(BaseModel):
    """Numerical tolerances shared by every module."""
    angle: float = Field(default=1e-9, gt=0, description="Angle comparison tolerance (radians)")
    eigen_residual: float = Field(default=1e-12, gt=0, description="Relative eigen backward-error bound")
    solve_residual: float = Field(default=1e-10, gt=0, description="Relative residual bound for complex linear solves")
    cross_check: float = Field(default=1e-7, gt=0, description="Maximum spectral/Schur disagreement before CrossCheckMismatch")
    certified_width: float = Field(default=1e-8, gt=0, description="Width of a certified angle interval")
    singular_class: float = Field(default=1e-12, ge=0, description="Inputs with max(|a00|, |a|inf) below this are treated as singular class")
    near_singular_band: float = Field(default=1e-8, gt=0, description="Upper edge of the near-singular warning band")
    boundary_band: float = Field(default=1e-6, ge=0, description="Excluded band |angle - c| in membership equality tests")
    second_difference: float = Field(default=1e-8, ge=0, description="Second-difference tolerance, scaled by the inverse squared step")
    corner: float = Field(default=1e-9, ge=0, description="Boundary-trace corner compatibility tolerance")
    boundary_residual: float = Field(default=1e-4, ge=0, description="Maximum |u - g| on the boundary for a passing solution")

    @field_validator("near_singular_band")
    @classmethod
    def band_above_singular(cls, v: float, info) -> float:
        """Ensure the warning band does not sit below the singular threshold."""
        lower = info.data.get("singular_class", 0.0)
        if v < lower:
            raise ValueError("near_singular_band must be >= singular_class")
        return v


class EigenConfig(BaseModel):
    """Iteration budgets for the dense eigensolvers."""
    jacobi_threshold: float = Field(default=1e-14, gt=0, description="Off-diagonal norm threshold relative to |A|")
    jacobi_max_sweeps: int = Field(default=100, ge=1, description="Maximum cyclic Jacobi sweeps")
    aberth_max_iter: int = Field(default=500, ge=1, description="Maximum Aberth-Ehrlich iterations")
    polish_steps: int = Field(default=3, ge=0, description="Newton polishing steps per root")
    spectrum_cross_check: float = Field(
        default=1e-6, gt=0, description="Allowed gap between the Aberth and LAPACK spectra, relative to |I_n + iA|"
    )


class StarSearchConfig(BaseModel):
    """Search budget for the star-product infimum over slice directions."""
    starts: int = Field(default=8, ge=0, description="Random starts for local derivative-free minimization")
    box_samples: int = Field(default=512, ge=0, description="Uniform box samples")
    local_max_iter: int = Field(default=400, ge=1, description="Iteration cap for each local search")
    box_cap: float = Field(default=1e6, gt=0, description="Upper bound on the sampling box radius")


class SolverConfig(BaseModel):
    """Settings of the one-dimensional envelope solver."""
    tau_factor: int = Field(default=4, ge=1, description="Tau-grid size as a multiple of the t-grid size")
    workers: int = Field(default=1, ge=1, description="Worker threads for the per-tau envelopes")
    pde_tol_factor: float = Field(default=10.0, gt=0, description="Interior angle tolerance as a multiple of dx")
    subsolution_rate_floor: float = Field(default=0.99, ge=0, le=1, description="Minimum passing subsolution rate")
    chunk_size: int = Field(default=64, ge=1, description="Rows per block in the discrete Legendre reductions")


class HarnessConfig(BaseModel):
    """Default sampling budget for verification suites."""
    samples: int = Field(default=1000, ge=1, description="Draws per suite and dimension")
    seed: int = Field(default=42, ge=0, lt=2**64, description="Root seed of the per-sample streams")
    dims: List[int] = Field(default_factory=lambda: [1, 2, 3], description="Space dimensions exercised")
    bisection_iters: int = Field(default=48, ge=1, description="Bisection steps in branch samplers")
    bracket_doublings: int = Field(default=200, ge=1, description="Doublings allowed to bracket a branch shift")

    @field_validator("dims")
    @classmethod
    def positive_dims(cls, v: List[int]) -> List[int]:
        """Reject non-positive dimensions."""
        if not v or any(d < 1 for d in v):
            raise ValueError("dims must be a non-empty list of positive integers")
        return v


class SystemConfig(BaseModel):
    """Represent the merged system configuration.

    Resides in `~/.config/dslkit/config.yaml` (user layer) and may be
    overridden by `dslkit.yaml` or `[tool.dslkit]` in the project.
    """
    log_level: LogLevel = Field(default=LogLevel.WARNING, description="Default logging level")
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    eigen: EigenConfig = Field(default_factory=EigenConfig)
    star_search: StarSearchConfig = Field(default_factory=StarSearchConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    harness: HarnessConfig = Field(default_factory=HarnessConfig)


class RuntimeConfig(BaseModel):
    """Merged configuration plus the per-invocation runtime flags."""
    system: SystemConfig = Field(default_factory=SystemConfig)
    verbose: bool = Field(default=False, description="Verbose logging")
    json_only: bool = Field(default=False, description="Suppress the human summary on stderr")
    sources: List[str] = Field(default_factory=list, description="Configuration files that contributed layers")
    tol_override: Optional[float] = Field(default=None, description="Value of --tol, if given")

    @property
    def tolerances(self) -> ToleranceConfig:
        """Shortcut to the tolerance group."""
        return self.system.tolerances

    def describe(self) -> Dict[str, object]:
        """Return a JSON-ready snapshot for report headers."""
        return {
            "sources": list(self.sources),
            "tolerances": self.system.tolerances.model_dump(),
        }
