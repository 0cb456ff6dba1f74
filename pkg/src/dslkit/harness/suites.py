"""Named verification suites.

Each suite draws ``samples`` seeded inputs per space dimension, evaluates one
structural property, and records every check in a `VerificationReport`.
Failures are counted, never raised; the worst case is kept for the report.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple
import logging
import math
import time

import numpy as np
import structlog
from pydantic import BaseModel, Field, field_validator

from ..angles.lifted import in_singular_class, is_near_singular, lifted_angle, spacetime_angle
from ..core.exceptions import DslkitError, UnknownSuiteError
from ..core.schema import EigenConfig, HarnessConfig, SolverConfig, StarSearchConfig, ToleranceConfig
from ..linalg.matrices import SpaceTimeMatrix
from ..linalg.spectral import eig_sym
from ..solver.dirichlet import solve_dsl_dirichlet_detailed
from ..solver.envelope import rooftop_envelope
from ..solver.problems import DslDirichletProblem, RooftopProblem
from ..solver.verification import extract_min_principle, verify_dsl_solution
from ..subequations.branches import DslBranch
from ..subequations.predicates import eigenvalue_consequences, time_slot_sign
from ..subequations.star import in_star_product
from ..transforms.grids import GridFunction1D, GridFunction2D, uniform_grid
from ..transforms.legendre import legendre_down, legendre_up, tau_grid, time_lipschitz
from ..transforms.slices import pullback_slice, shear_conjugate
from .reports import Outcome, VerificationReport, digest
from .sampling import (
    Family,
    NEAR_SINGULAR_RANGE,
    random_direction,
    sample_in_branch,
    sample_in_sl_branch,
    sample_spacetime,
    sample_stream,
    sample_sym,
)

logger = logging.getLogger(__name__)

__all__ = ["SUITES", "SuiteSpec", "SuiteDefinition", "SuiteContext", "run_suite", "suite_names"]

HALF_PI = 0.5 * math.pi
INVARIANCE_TOL = 1e-8
USC_EPS = 1e-7
USC_TOL = 1e-6
SLICE_TOL = 1e-8
MAXIMALITY_NODES = 32
SOLVER_GRID = 33
SOLVER_TAU_FACTOR = 8

_EQUALITY_FAMILIES = (Family.GAUSSIAN, Family.RANK_ONE_COUPLED, Family.BLOCK_DIAGONAL, Family.NEAR_SINGULAR_CLASS)
_BRANCH_FAMILIES = (Family.GAUSSIAN, Family.RANK_ONE_COUPLED, Family.BLOCK_DIAGONAL)


class SuiteSpec(BaseModel):
    """A suite invocation: name, dimensions, sample count, root seed and tolerance overrides."""

    name: str = Field(description="Suite name")
    dims: List[int] = Field(default_factory=lambda: [1, 2, 3], description="Space dimensions")
    samples: int = Field(default=1000, ge=1, description="Draws per dimension")
    seed: int = Field(default=42, ge=0, lt=2**64, description="Root seed")
    tolerances: Dict[str, float] = Field(default_factory=dict, description="ToleranceConfig overrides")

    @field_validator("name")
    @classmethod
    def known_suite(cls, v: str) -> str:
        if v not in SUITES:
            raise ValueError(f"unknown suite '{v}'")
        return v

    @field_validator("dims")
    @classmethod
    def positive_dims(cls, v: List[int]) -> List[int]:
        if not v or any(d < 1 for d in v):
            raise ValueError("dims must be a non-empty list of positive integers")
        return v

    def resolve_tolerances(self, base: ToleranceConfig) -> ToleranceConfig:
        unknown = set(self.tolerances) - set(ToleranceConfig.model_fields)
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        return ToleranceConfig(**{**base.model_dump(), **self.tolerances})


@dataclass
class SuiteContext:
    """State shared by the suite bodies."""

    spec: SuiteSpec
    tolerances: ToleranceConfig
    eigen: EigenConfig
    star: StarSearchConfig
    solver: SolverConfig
    harness: HarnessConfig
    report: VerificationReport
    log: structlog.stdlib.BoundLogger

    @property
    def seed(self) -> int:
        return self.spec.seed

    def key(self, n: int, *parts: str) -> str:
        return "/".join((self.spec.name, f"n={n}") + parts)

    def angle(self, a: SpaceTimeMatrix) -> float:
        return spacetime_angle(a, self.tolerances, self.eigen).radians

    def record(self, measured: float, threshold: float, upper: bool, inputs: Tuple, n: int, label: str) -> None:
        self.report.record(Outcome(float(measured), float(threshold), upper, digest(*inputs), n, label))

    def flag(self, ok: bool, inputs: Tuple, n: int, label: str) -> None:
        self.record(0.0 if ok else 1.0, 0.0, True, inputs, n, label)

    def failed(self, error: DslkitError, inputs: Tuple, n: int, label: str) -> None:
        self.log.warning("sample raised", error=error.error_code, label=label, dim=n)
        self.record(math.inf, 0.0, True, inputs, n, f"{label}: {error.error_code}")

    def excluded(self, a: SpaceTimeMatrix) -> bool:
        """Draws near the singular class are skipped by equality-sensitive suites and counted.

        The band runs from the singular-class threshold up to the larger of the
        near-singular warning band and the near-singular sampling range.
        """
        band = max(self.tolerances.near_singular_band, NEAR_SINGULAR_RANGE[1])
        if is_near_singular(a, self.tolerances) or (
            in_singular_class(a, band) and not in_singular_class(a, self.tolerances.singular_class)
        ):
            self.report.exclude()
            return True
        return False


SuiteBody = Callable[[SuiteContext], None]


@dataclass(frozen=True)
class SuiteDefinition:
    name: str
    body: SuiteBody
    description: str
    result: str


def _rotation_invariance(ctx: SuiteContext) -> None:
    for n in ctx.spec.dims:
        for i in range(ctx.spec.samples):
            family = _EQUALITY_FAMILIES[i % len(_EQUALITY_FAMILIES)]
            a = sample_spacetime(n, ctx.seed, family, i, ctx.key(n))
            if ctx.excluded(a):
                continue
            rng = sample_stream(ctx.seed, ctx.key(n, "rotation"), i)
            q, _ = np.linalg.qr(rng.standard_normal((n, n)))
            rot = np.eye(n + 1)
            rot[1:, 1:] = q
            inputs = (a.full(), q)
            try:
                d = abs(ctx.angle(a) - ctx.angle(a.conjugate(rot)))
                b = a.a_plus
                d_sym = abs(lifted_angle(b, ctx.eigen).radians - lifted_angle(b.conjugate(q), ctx.eigen).radians)
            except DslkitError as e:
                ctx.failed(e, inputs, n, "rotation")
                continue
            ctx.record(d, INVARIANCE_TOL, True, inputs, n, "space-time rotation")
            ctx.record(d_sym, INVARIANCE_TOL, True, inputs, n, "symmetric rotation")


def _shear_invariance(ctx: SuiteContext) -> None:
    for n in ctx.spec.dims:
        for i in range(ctx.spec.samples):
            family = _EQUALITY_FAMILIES[i % len(_EQUALITY_FAMILIES)]
            a = sample_spacetime(n, ctx.seed, family, i, ctx.key(n))
            if ctx.excluded(a):
                continue
            v = random_direction(n, ctx.seed, i, ctx.key(n))
            inputs = (a.full(), v)
            try:
                d = abs(ctx.angle(a) - ctx.angle(shear_conjugate(a, v)))
            except DslkitError as e:
                ctx.failed(e, inputs, n, "shear")
                continue
            ctx.record(d, INVARIANCE_TOL, True, inputs, n, "shear")


def _affine_slice_bound(ctx: SuiteContext) -> None:
    for n in ctx.spec.dims:
        for branch in (DslBranch.second(n), DslBranch.top(n)):
            key = ctx.key(n, branch.tier.value)
            for i in range(ctx.spec.samples):
                a = sample_in_branch(branch, ctx.seed, Family.GAUSSIAN, i, key, ctx.harness)
                v = random_direction(n, ctx.seed, i, key)
                theta = lifted_angle(pullback_slice(a, v), ctx.eigen).radians
                ctx.record(theta, branch.slice_phase - SLICE_TOL, False, (a.full(), v), n, f"slice {branch.tier.value}")


def _eigenvalue_lemma(ctx: SuiteContext) -> None:
    tol = ctx.tolerances.angle
    for n in ctx.spec.dims:
        phases = [(n - 1) * HALF_PI] + ([(n - 2) * HALF_PI] if n >= 2 else [])
        for c in phases:
            key = ctx.key(n, f"c={c:.6f}")
            for i in range(ctx.spec.samples):
                b = sample_in_sl_branch(n, c, ctx.seed, i, key, ctx.harness)
                values = eig_sym(b, ctx.eigen)
                r = eigenvalue_consequences(b, tol, ctx.eigen)
                if r.top_hypothesis:
                    ctx.record(values[-1], -tol, False, (b.entries,), n, "psd")
                if r.second_hypothesis and n >= 2:
                    ctx.record(values[-2] - abs(values[-1]), -tol, False, (b.entries,), n, "dominance")


def _time_slot_sign(ctx: SuiteContext) -> None:
    tol = ctx.tolerances.angle
    for n in ctx.spec.dims:
        for branch in (DslBranch.second(n), DslBranch.top(n)):
            key = ctx.key(n, branch.tier.value)
            for i in range(ctx.spec.samples):
                family = _BRANCH_FAMILIES[i % len(_BRANCH_FAMILIES)]
                a = sample_in_branch(branch, ctx.seed, family, i, key, ctx.harness)
                inputs = (a.full(),)
                try:
                    r = time_slot_sign(a, branch, tol, tolerances=ctx.tolerances, config=ctx.eigen)
                except DslkitError as e:
                    ctx.failed(e, inputs, n, "time-slot")
                    continue
                ctx.record(r.a00, -tol, False, inputs, n, "a00 >= 0")
                if r.coupling_norm > 1e-6:
                    ctx.record(r.a00, tol, False, inputs, n, "a00 > 0 when coupled")
                ctx.flag(r.average_bound_ok, inputs, n, "weighted average bound")


def _star_product(ctx: SuiteContext) -> None:
    band = ctx.tolerances.boundary_band
    for n in ctx.spec.dims:
        for branch in (DslBranch.second(n), DslBranch.top(n)):
            key = ctx.key(n, branch.tier.value)
            for i in range(ctx.spec.samples):
                rng = sample_stream(ctx.seed, key + "/shift", i)
                a = sample_spacetime(n, ctx.seed, Family.GAUSSIAN, i, key).shift(float(rng.uniform(-1.5, 1.5)))
                inputs = (a.full(),)
                try:
                    theta = ctx.angle(a)
                    if abs(theta - branch.c) < band:
                        ctx.report.exclude()
                        continue
                    star = in_star_product(a, branch, sample_stream(ctx.seed, key + "/search", i), ctx.star)
                except DslkitError as e:
                    ctx.failed(e, inputs, n, "star")
                    continue
                ctx.flag((theta >= branch.c) == star.member, inputs, n, f"star {branch.tier.value}")


def _usc_at_singular_class(ctx: SuiteContext) -> None:
    for n in ctx.spec.dims:
        for i in range(ctx.spec.samples):
            a_plus = sample_sym(n, ctx.seed, Family.GAUSSIAN, i, ctx.key(n))
            base = lifted_angle(a_plus, ctx.eigen).radians
            inputs = (a_plus.entries,)
            try:
                above = ctx.angle(SpaceTimeMatrix.block_diag(USC_EPS, a_plus))
                below = ctx.angle(SpaceTimeMatrix.block_diag(-USC_EPS, a_plus))
                at = ctx.angle(SpaceTimeMatrix.block_diag(0.0, a_plus))
            except DslkitError as e:
                ctx.failed(e, inputs, n, "usc")
                continue
            ctx.record(abs(above - (base + HALF_PI)), USC_TOL, True, inputs, n, "limit from above")
            ctx.record(abs(below - (base - HALF_PI)), USC_TOL, True, inputs, n, "limit from below")
            ctx.record(abs(at - above), USC_TOL, True, inputs, n, "value on the singular class")


def _convex_profile(rng: np.random.Generator, ts: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """alpha(x)(t - beta)^2 + gamma|t - d| + rho(x), convex in t with slope at least 1 somewhere."""
    tt, xx = np.meshgrid(ts, xs, indexing="ij")
    alpha = rng.uniform(1.0, 3.0) + 0.5 * np.sin(xx) ** 2
    beta, d = rng.uniform(0.0, 1.0, size=2)
    gamma = rng.uniform(0.0, 1.0)
    rho = rng.standard_normal() * np.cos(xx)
    return alpha * (tt - beta) ** 2 + gamma * np.abs(tt - d) + rho


def _legendre_involution(ctx: SuiteContext) -> None:
    for nt in (33, 65):
        ts = uniform_grid(0.0, 1.0, nt)
        xs = uniform_grid(-1.0, 1.0, 9)
        for i in range(ctx.spec.samples):
            rng = sample_stream(ctx.seed, ctx.key(1, f"nt={nt}"), i)
            values = _convex_profile(rng, ts, xs)
            u = GridFunction2D(ts, xs, values)
            lip = time_lipschitz(ts, values)
            taus = tau_grid(lip, ctx.solver.tau_factor * nt + 1)
            back = legendre_up(legendre_down(u, taus, ctx.solver.chunk_size), ts, ctx.solver.chunk_size)
            err = float(np.max(np.abs(back.values - values)))
            bound = 2.0 * (u.dt + (taus[1] - taus[0])) * lip
            ctx.record(err, bound, True, (values,), 1, f"involution nt={nt}")


def _rooftop_props(ctx: SuiteContext) -> None:
    tol = ctx.tolerances.second_difference
    for i in range(ctx.spec.samples):
        rng = sample_stream(ctx.seed, ctx.key(1), i)
        nx = 33 + 16 * (i % 3)
        xs = uniform_grid(-1.0, 1.0, nx)
        k = rng.uniform(0.5, 4.0, size=3)
        h = rng.standard_normal() * np.sin(k[0] * xs) + rng.standard_normal() * np.cos(k[1] * xs) + k[2] * xs ** 2 / 4
        cap = tuple(rng.uniform(-1.0, 1.0, size=2))
        a = float(rng.uniform(-1.3, 1.3))
        w = rooftop_envelope(RooftopProblem(GridFunction1D(xs, h), cap, a)).values
        dx = xs[1] - xs[0]
        eps = tol * dx ** 2
        m = math.tan(a)
        inputs = (h, np.asarray(cap), np.asarray([a]))
        ctx.record(float(np.max(w[1:-1] - h[1:-1])), eps, True, inputs, 1, "below obstacle")
        ctx.record(max(abs(w[0] - cap[0]), abs(w[-1] - cap[1])), eps, True, inputs, 1, "caps")
        d2 = w[2:] - 2.0 * w[1:-1] + w[:-2] - m * dx ** 2
        ctx.record(float(np.min(d2)), -eps, False, inputs, 1, "semiconvexity")
        nodes = rng.choice(np.arange(1, nx - 1), size=min(MAXIMALITY_NODES, nx - 2), replace=False)
        for j in nodes:
            raised = w.copy()
            raised[j] += 10.0 * eps
            r2 = raised[2:] - 2.0 * raised[1:-1] + raised[:-2] - m * dx ** 2
            blocked = raised[j] > h[j] + eps or float(np.min(r2)) < -eps
            ctx.flag(blocked, inputs, 1, "maximality")


def _separable_problem(ctx: SuiteContext, key: str, i: int, c_range: Tuple[float, float]) -> Tuple[DslDirichletProblem, float]:
    """g = alpha (t - beta)^2 + tan(c - pi/2) x^2 / 2 on a uniform grid, c drawn from c_range."""
    rng = sample_stream(ctx.seed, key, i)
    c = float(rng.uniform(*c_range))
    alpha = float(rng.uniform(0.5, 1.5))
    beta = float(rng.uniform(0.25, 0.75))
    m = math.tan(c - HALF_PI)

    def g(t, x):
        return alpha * (t - beta) ** 2 + 0.5 * m * x * x

    n = SOLVER_GRID
    return DslDirichletProblem.from_function(g, c, n, n, ntau=SOLVER_TAU_FACTOR * n + 1), m


def _solve_and_verify(ctx: SuiteContext) -> None:
    for i in range(ctx.spec.samples):
        key = ctx.key(1)
        if i % 2:
            p = _smooth_problem(ctx, key, i, (0.1, math.pi - 0.1))
        else:
            p, _ = _separable_problem(ctx, key, i, (0.1, math.pi - 0.1))
        inputs = (p.boundary.g0.values, p.boundary.gl.values, np.asarray([p.c]))
        try:
            sol = solve_dsl_dirichlet_detailed(p, ctx.solver)
            report = verify_dsl_solution(sol.u, p.c, p.boundary, ctx.tolerances, ctx.solver, envelopes=sol.envelopes)
        except DslkitError as e:
            ctx.failed(e, inputs, 1, "solve")
            continue
        ctx.flag(report.passed, inputs, 1, "verify: " + ",".join(report.violations))
        ctx.record(report.boundary_residual, ctx.tolerances.boundary_residual, True, inputs, 1, "boundary residual")


def _smooth_problem(ctx: SuiteContext, key: str, i: int, c_range: Tuple[float, float]) -> DslDirichletProblem:
    """g = alpha (t - beta)^2 + q cosh(x) / 2 + s t sin(x): time-convex, not separable."""
    rng = sample_stream(ctx.seed, key, i)
    c = float(rng.uniform(*c_range))
    alpha = float(rng.uniform(0.5, 1.5))
    beta = float(rng.uniform(0.25, 0.75))
    q = float(rng.uniform(0.5, 2.0))
    s = float(rng.uniform(-0.3, 0.3))

    def g(t, x):
        return alpha * (t - beta) ** 2 + 0.5 * q * np.cosh(x) + s * t * np.sin(x)

    return DslDirichletProblem.from_function(g, c, SOLVER_GRID, SOLVER_GRID)


def _min_principle(ctx: SuiteContext) -> None:
    tol = ctx.tolerances.second_difference
    for i in range(ctx.spec.samples):
        p = _smooth_problem(ctx, ctx.key(1), i, (0.1, math.pi - 0.1))
        inputs = (p.boundary.g0.values, p.boundary.gl.values, np.asarray([p.c]))
        try:
            u = solve_dsl_dirichlet_detailed(p, ctx.solver).u
        except DslkitError as e:
            ctx.failed(e, inputs, 1, "min-principle")
            continue
        _, mp = extract_min_principle(u, p.c, tol)
        ctx.record(mp.envelope_gap, mp.gap_tolerance, True, inputs, 1, "min principle")

    ts = uniform_grid(0.0, 1.0, SOLVER_GRID)
    xs = uniform_grid(-1.0, 1.0, SOLVER_GRID)
    kink = GridFunction2D.from_function(lambda t, x: t * x, ts, xs)
    # t*x has Theta = 0, so at c = pi/2 its time-infimum min(0, x) must be rejected
    _, mp = extract_min_principle(kink, HALF_PI, tol)
    ctx.flag(not mp.passed, (kink.values,), 1, "kink t*x rejected")


def _joint_convexity(ctx: SuiteContext) -> None:
    worst_eig = math.inf
    for i in range(ctx.spec.samples):
        rng = sample_stream(ctx.seed, ctx.key(1), i)
        c = float(rng.uniform(HALF_PI, math.pi - 0.1))
        alpha, b, q = rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5), rng.uniform(0.0, 2.0)
        amp = rng.uniform(0.0, 0.3)

        def g(t, x):
            return alpha * t * t + b * t * x + 0.5 * q * x * x + amp * np.cos(2.0 * x) * (1.0 + t)

        p = DslDirichletProblem.from_function(g, c, SOLVER_GRID, SOLVER_GRID)
        inputs = (p.boundary.g0.values, p.boundary.gl.values, np.asarray([c]))
        try:
            sol = solve_dsl_dirichlet_detailed(p, ctx.solver)
            report = verify_dsl_solution(sol.u, c, p.boundary, ctx.tolerances, ctx.solver, envelopes=sol.envelopes)
        except DslkitError as e:
            ctx.failed(e, inputs, 1, "joint-convexity")
            continue
        joint = report.joint_convexity or {}
        ctx.flag(bool(joint.get("pass")), inputs, 1, "joint convexity")
        worst_eig = min(worst_eig, float(joint.get("min_hessian_eig", math.inf)))
    ctx.report.merge_details("min_joint_hessian_eig", worst_eig)


def _entry(name: str, body: SuiteBody, description: str, result: str) -> Tuple[str, SuiteDefinition]:
    return name, SuiteDefinition(name, body, description, result)


SUITES: Dict[str, SuiteDefinition] = dict(
    [
        _entry("rotation-invariance", _rotation_invariance,
               "Theta unchanged by diag(1, U) conjugation, theta by U conjugation",
               "angles: invariance under space rotations"),
        _entry("shear-invariance", _shear_invariance,
               "Theta(A) = Theta(A_V) for random shears", "transforms: shear invariance of Theta"),
        _entry("affine-slice-bound", _affine_slice_bound,
               "theta(l_V^* A) >= c - pi/2 for A in the top two branches", "subequations: slices of branch members"),
        _entry("eigenvalue-lemma", _eigenvalue_lemma,
               "theta >= (n-1)pi/2 gives PSD; theta >= (n-2)pi/2 gives lambda_{n-1} >= |lambda_n|",
               "subequations: eigenvalue consequences"),
        _entry("time-slot-sign", _time_slot_sign,
               "a00 >= 0, and a00 > 0 when the coupling is nonzero", "subequations: time-slot sign"),
        _entry("star-product", _star_product,
               "membership agrees with P_1 * F_{c - pi/2}", "subequations: star-product identity"),
        _entry("usc-at-S", _usc_at_singular_class,
               "one-sided limits at the singular class are theta(A+) -+ pi/2", "angles: upper semi-continuity"),
        _entry("legendre-involution", _legendre_involution,
               "u** = u for t-convex grid functions, within 2(dt + dtau)L", "transforms: Legendre involution"),
        _entry("rooftop-props", _rooftop_props,
               "envelope below obstacles, semiconvex and locally maximal", "envelope-solver: rooftop envelope"),
        _entry("solve-and-verify", _solve_and_verify,
               "solver output on separable and coupled smooth data passes verification", "envelope-solver: Dirichlet solution"),
        _entry("min-principle", _min_principle,
               "v = min_t u admits an F_{c - pi/2} function inside its convexity bracket", "envelope-solver: minimum principle"),
        _entry("joint-convexity", _joint_convexity,
               "top-branch solutions are convex along t, every grid-aligned slice and every tau-slice", "envelope-solver: joint convexity"),
    ]
)


def suite_names() -> List[str]:
    return list(SUITES)


def run_suite(
    spec: SuiteSpec,
    tolerances: ToleranceConfig = ToleranceConfig(),
    eigen: EigenConfig = EigenConfig(),
    star: StarSearchConfig = StarSearchConfig(),
    solver: SolverConfig = SolverConfig(),
    harness: HarnessConfig = HarnessConfig(),
) -> VerificationReport:
    """Run one suite; deterministic in (spec, settings) apart from ``runtime_ms``."""
    definition = SUITES.get(spec.name)
    if definition is None:
        raise UnknownSuiteError(f"unknown suite '{spec.name}'", context={"value": spec.name})
    log = structlog.get_logger("dslkit.harness").bind(suite=spec.name, seed=spec.seed, dims=spec.dims)
    report = VerificationReport(suite=spec.model_dump())
    ctx = SuiteContext(
        spec=spec,
        tolerances=spec.resolve_tolerances(tolerances),
        eigen=eigen,
        star=star,
        solver=solver,
        harness=harness,
        report=report,
        log=log,
    )
    log.info("suite started", samples=spec.samples)
    started = time.perf_counter()
    definition.body(ctx)
    report.runtime_ms = 1000.0 * (time.perf_counter() - started)
    log.info(
        "suite finished",
        passed=report.passed,
        violations=report.violations,
        checks=report.checks,
        excluded=report.near_singular_excluded,
    )
    return report
