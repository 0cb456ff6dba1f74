import math

import numpy as np
import pytest

from conftest import quadratic_boundary
from dslkit.angles.lifted import spacetime_angle
from dslkit.core.exceptions import CornerMismatch, GridFormatError, ProblemFormatError
from dslkit.core.schema import SolverConfig
from dslkit.linalg.matrices import SpaceTimeMatrix
from dslkit.solver.dirichlet import data_lipschitz, solve_dsl_dirichlet, solve_dsl_dirichlet_detailed
from dslkit.solver.envelope import convex_envelope_1d, lower_hull, rooftop_envelope
from dslkit.solver.problems import (
    BoundaryData,
    DslDirichletProblem,
    RooftopProblem,
    load_dsl_problem,
    load_rooftop_problem,
)
from dslkit.solver.verification import (
    boundary_residual,
    convex_floor,
    extract_min_principle,
    legendre_joint_convexity,
    planar_spacetime_angles,
    slice_node_angles,
    verify_dsl_solution,
)
from dslkit.transforms.grids import GridFunction1D, GridFunction2D, uniform_grid

HALF_PI = 0.5 * math.pi


def _coupled(t, x):
    return (t - 0.4) ** 2 + 0.5 * np.cosh(x) + 0.1 * t * np.sin(x)


def _rational(t, x, m):
    """(x - t/2)^2 / (2 + t/2) + m x^2 / 2: a rank-one Hessian plus diag(0, m), so Theta = pi/2 + arctan(m)."""
    return (x - 0.5 * t) ** 2 / (2.0 + 0.5 * t) + 0.5 * m * x * x


class TestEnvelope:
    def test_lower_hull(self):
        hx, hy = lower_hull(np.array([0.0, 1.0, 2.0, 3.0]), np.array([0.0, -1.0, 5.0, 0.0]))
        np.testing.assert_array_equal(hx, [0.0, 1.0, 3.0])
        np.testing.assert_array_equal(hy, [0.0, -1.0, 0.0])

    def test_convex_envelope(self):
        w = convex_envelope_1d([(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)])
        np.testing.assert_array_equal(w.values, [0.0, 0.0, 0.0])

    def test_convex_envelope_needs_points(self):
        with pytest.raises(GridFormatError):
            convex_envelope_1d([(0.0, 1.0)])

    @pytest.mark.parametrize("a", [-1.2, 0.0, 0.9])
    def test_rooftop_properties(self, a):
        xs = uniform_grid(-1.0, 1.0, 41)
        h = np.sin(3.0 * xs) + 0.3 * np.cos(7.0 * xs)
        p = RooftopProblem(GridFunction1D(xs, h), (0.2, -0.4), a)
        w = rooftop_envelope(p).values
        dx = xs[1] - xs[0]
        assert np.all(w[1:-1] <= h[1:-1] + 1e-12)
        assert w[0] == pytest.approx(0.2) and w[-1] == pytest.approx(-0.4)
        d2 = (w[2:] - 2.0 * w[1:-1] + w[:-2]) / dx ** 2
        assert np.min(d2) >= math.tan(a) - 1e-6

    @pytest.mark.parametrize("a", [-0.7, 0.7])
    def test_shift_identity(self, a):
        xs = uniform_grid(-1.0, 1.0, 33)
        h = np.cos(4.0 * xs) + 0.2 * xs
        cap = (0.4, -0.1)
        m = math.tan(a)
        shift = 0.5 * m * xs * xs
        direct = rooftop_envelope(RooftopProblem(GridFunction1D(xs, h), cap, a)).values
        flat = rooftop_envelope(
            RooftopProblem(GridFunction1D(xs, h - shift), (cap[0] - shift[0], cap[1] - shift[-1]), 0.0)
        ).values
        np.testing.assert_allclose(direct, flat + shift, atol=1e-12)

    def test_semiconvex_obstacle_is_its_own_envelope(self):
        xs = uniform_grid(-1.0, 1.0, 21)
        h = 0.5 * xs * xs
        p = RooftopProblem(GridFunction1D(xs, h), (0.5, 0.5), 0.5)
        np.testing.assert_allclose(rooftop_envelope(p).values, h, atol=1e-12)

    def test_unconstrained_phase(self):
        xs = uniform_grid(0.0, 1.0, 5)
        h = np.array([9.0, 1.0, -2.0, 3.0, 9.0])
        p = RooftopProblem(GridFunction1D(xs, h), (0.0, 1.0), -HALF_PI)
        np.testing.assert_array_equal(rooftop_envelope(p).values, [0.0, 1.0, -2.0, 3.0, 1.0])
        assert p.slope_floor == -math.inf

    def test_phase_range(self):
        xs = uniform_grid(0.0, 1.0, 3)
        with pytest.raises(ProblemFormatError):
            RooftopProblem(GridFunction1D(xs, np.zeros(3)), (0.0, 0.0), HALF_PI)


class TestProblems:
    def test_corner_mismatch(self):
        ts = uniform_grid(0.0, 1.0, 5)
        xs = uniform_grid(-1.0, 1.0, 5)
        boundary = BoundaryData(
            GridFunction1D(xs, np.zeros(5)),
            GridFunction1D(xs, np.zeros(5)),
            GridFunction1D(ts, np.zeros(5)),
            GridFunction1D(ts, np.r_[0.1, np.zeros(4)]),
        )
        assert boundary.corner_gaps()["(0, xr)"] == pytest.approx(0.1)
        with pytest.raises(CornerMismatch):
            DslDirichletProblem(c=1.0, boundary=boundary)

    def test_phase_range(self):
        g, _ = quadratic_boundary(1.0, 1.0)
        with pytest.raises(ProblemFormatError):
            DslDirichletProblem.from_function(g, math.pi, 5, 5)

    def test_document_round_trip(self, write_json):
        g, _ = quadratic_boundary(1.0, 2.0)
        p = DslDirichletProblem.from_function(g, 2.0, 9, 7, ntau=41)
        loaded = load_dsl_problem(write_json("p.json", p.to_document()))
        assert loaded.c == 2.0 and loaded.ntau == 41
        np.testing.assert_allclose(loaded.boundary.gl.values, p.boundary.gl.values, atol=1e-15)

    def test_wrong_trace_length(self, write_json):
        g, _ = quadratic_boundary(1.0, 2.0)
        doc = DslDirichletProblem.from_function(g, 2.0, 9, 7).to_document()
        doc["boundary"]["g0"] = doc["boundary"]["g0"][:-1]
        with pytest.raises(ProblemFormatError):
            load_dsl_problem(write_json("p.json", doc))

    def test_rooftop_document(self, write_json):
        path = write_json("r.json", {"a": 0.0, "domain": {"xl": -1, "xr": 1}, "obstacle": [1, 0, 1], "cap": [1, 1]})
        p = load_rooftop_problem(path)
        np.testing.assert_allclose(p.xs, [-1.0, 0.0, 1.0])
        with pytest.raises(ProblemFormatError):
            load_rooftop_problem(write_json("bad.json", {"a": 0.0, "obstacle": [1, 0, 1], "cap": [1, 1]}))


class TestDirichlet:
    @pytest.mark.parametrize("c", [0.6, HALF_PI + 0.3])
    def test_recovers_quadratic(self, c):
        g, _ = quadratic_boundary(1.0, c)
        p = DslDirichletProblem.from_function(g, c, 33, 33, ntau=1001)
        sol = solve_dsl_dirichlet_detailed(p)
        exact = GridFunction2D.from_function(g, p.ts, p.xs)
        assert np.max(np.abs(sol.u.values - exact.values)) <= 1e-4
        assert sol.taus.shape[0] >= 1001
        assert sol.envelopes.shape == (sol.taus.shape[0], 33)

        report = verify_dsl_solution(sol.u, c, p.boundary, envelopes=sol.envelopes)
        assert report.passed, report.violations
        assert report.boundary_residual <= 1e-4
        if c < HALF_PI:
            assert report.slices_ok
        else:
            assert report.joint_convexity["pass"]

    @pytest.mark.parametrize("theta", [0.3, -0.4])
    def test_recovers_quadratic_on_fine_grid(self, theta):
        c = spacetime_angle(SpaceTimeMatrix.from_full([[1.0, 0.0], [0.0, math.tan(theta)]])).radians
        g, _ = quadratic_boundary(1.0, c)
        p = DslDirichletProblem.from_function(g, c, 129, 129)
        u = solve_dsl_dirichlet(p)
        exact = GridFunction2D.from_function(g, p.ts, p.xs)
        assert np.max(np.abs(u.values - exact.values)) <= 1e-4

    def test_lateral_traces_are_exact(self):
        p = DslDirichletProblem.from_function(lambda t, x: np.exp(t) + 0.25 * x ** 4 + 0.3 * t * x, 2.0, 33, 33)
        sol = solve_dsl_dirichlet_detailed(p)
        assert boundary_residual(sol.u, p.boundary) <= 1e-10
        for trace in (p.boundary.gl.values, p.boundary.gr.values):
            assert np.all(np.isin(np.diff(trace) / np.diff(p.ts), sol.taus))

    @pytest.mark.parametrize("c", [1.0, 2.6])
    def test_coupled_data_passes_verification(self, c):
        p = DslDirichletProblem.from_function(_coupled, c, 33, 33)
        sol = solve_dsl_dirichlet_detailed(p)
        report = verify_dsl_solution(sol.u, c, p.boundary, envelopes=sol.envelopes)
        assert report.passed, report.violations
        assert report.subsolution_rate == pytest.approx(1.0)
        assert report.min_principle.envelope_gap <= 1e-8
        assert ("joint_convexity" in report.checks) == (c >= HALF_PI)

    @pytest.mark.parametrize("amp", [0.1, 0.3])
    def test_top_branch_joint_convexity_is_gated(self, amp):
        c = 2.2

        def g(t, x):
            return t * t + 0.3 * t * x + 0.5 * x * x + amp * np.cos(2.0 * x) * (1.0 + t)

        p = DslDirichletProblem.from_function(g, c, 33, 33)
        sol = solve_dsl_dirichlet_detailed(p)
        report = verify_dsl_solution(sol.u, c, p.boundary, envelopes=sol.envelopes)
        assert report.checks["joint_convexity"]
        assert report.joint_convexity["min_slice_second_diff"] >= -report.joint_convexity["tolerance"]
        assert report.passed, report.violations

    @pytest.mark.parametrize("m", [-0.3, 0.4])
    def test_refinement_on_a_rational_solution(self, m):
        c = HALF_PI + math.atan(m)
        errors = []
        for n in (17, 65):
            p = DslDirichletProblem.from_function(lambda t, x: _rational(t, x, m), c, n, n)
            sol = solve_dsl_dirichlet_detailed(p)
            exact = GridFunction2D.from_function(lambda t, x: _rational(t, x, m), p.ts, p.xs)
            errors.append(float(np.max(np.abs(sol.u.values - exact.values))))
            assert verify_dsl_solution(sol.u, c, p.boundary, envelopes=sol.envelopes).passed
        assert errors[0] >= 1.5 * errors[1]

    def test_monotone_in_data(self):
        c = 1.0
        low = DslDirichletProblem.from_function(_coupled, c, 33, 33)
        high = DslDirichletProblem.from_function(lambda t, x: _coupled(t, x) + 0.1 * (1.0 - x * x), c, 33, 33)
        u = solve_dsl_dirichlet(low).values
        v = solve_dsl_dirichlet(high).values
        assert np.all(u <= v + 1e-12)
        assert np.max(v - u) > 1e-3

    def test_time_independent_data_is_exact(self):
        c = HALF_PI + 0.3
        g, _ = quadratic_boundary(0.0, c)
        p = DslDirichletProblem.from_function(g, c, 17, 17)
        u = solve_dsl_dirichlet(p)
        exact = GridFunction2D.from_function(g, p.ts, p.xs)
        np.testing.assert_allclose(u.values, exact.values, atol=1e-12)
        assert boundary_residual(u, p.boundary) <= 1e-12

    def test_workers_do_not_change_the_answer(self):
        g, _ = quadratic_boundary(1.0, 2.0)
        p = DslDirichletProblem.from_function(g, 2.0, 17, 17)
        serial = solve_dsl_dirichlet(p, SolverConfig(workers=1))
        threaded = solve_dsl_dirichlet(p, SolverConfig(workers=3))
        np.testing.assert_array_equal(serial.values, threaded.values)

    def test_data_lipschitz(self):
        g, _ = quadratic_boundary(2.0, 2.0)
        p = DslDirichletProblem.from_function(g, 2.0, 11, 5)
        assert data_lipschitz(p) == pytest.approx(1.9, abs=1e-9)


class TestVerification:
    @pytest.mark.parametrize("a00,b,lam", [(1.0, 0.3, -0.5), (-2.0, 1.0, 0.4), (0.2, -3.0, 2.0)])
    def test_planar_angles_match_general_route(self, a00, b, lam):
        expected = spacetime_angle(SpaceTimeMatrix.from_full([[a00, b], [b, lam]])).radians
        assert float(planar_spacetime_angles(a00, b, lam)) == pytest.approx(expected, abs=1e-10)

    def test_planar_singular_class(self):
        value = planar_spacetime_angles(np.array([0.0]), np.array([0.0]), np.array([1.0]), 1e-12)
        assert value[0] == pytest.approx(math.atan(1.0) + HALF_PI)

    def test_min_principle_on_separable_data(self):
        ts = uniform_grid(0.0, 1.0, 17)
        xs = uniform_grid(-1.0, 1.0, 17)
        c = 2.0
        m = math.tan(c - HALF_PI)
        u = GridFunction2D.from_function(lambda t, x: (t - 0.5) ** 2 + 0.5 * m * x * x, ts, xs)
        v, report = extract_min_principle(u, c)
        np.testing.assert_allclose(v.values, 0.5 * m * xs * xs, atol=1e-12)
        assert report.passed
        assert report.threshold == pytest.approx(m)

    def test_min_principle_detects_concavity(self):
        ts = uniform_grid(0.0, 1.0, 17)
        xs = uniform_grid(-1.0, 1.0, 17)
        u = GridFunction2D.from_function(lambda t, x: t * x, ts, xs)
        _, report = extract_min_principle(u, HALF_PI)
        assert not report.passed

    def test_min_principle_with_moving_minimiser(self):
        # exact solution whose time-minimiser drifts by a quarter cell per x-step
        q = 0.5
        ts = uniform_grid(0.0, 1.0, 9)
        xs = uniform_grid(-1.0, 1.0, 17)
        u = GridFunction2D.from_function(lambda t, x: 0.5 * (t - 0.5 - 0.25 * x) ** 2 + 0.5 * q * x * x, ts, xs)
        v, report = extract_min_principle(u, HALF_PI + math.atan(q))
        assert report.min_second_diff < report.threshold - report.tolerance
        assert report.passed
        assert report.bracket > 0.0
        assert np.all(v.values >= 0.5 * q * xs * xs - 1e-12)

    def test_convex_floor(self):
        ts = np.array([0.0, 1.0, 2.0, 3.0])
        assert convex_floor(ts, ts) == pytest.approx(0.0)
        assert convex_floor(ts, np.array([3.0, 1.0, 1.0, 3.0])) == pytest.approx(0.0)
        assert convex_floor(ts[:2], np.array([1.0, 2.0])) == -math.inf

    def test_slice_node_angles_of_quadratic(self):
        ts = uniform_grid(0.0, 1.0, 9)
        xs = uniform_grid(-1.0, 1.0, 9)
        u = GridFunction2D.from_function(lambda t, x: t * t + 0.5 * t * x + x * x, ts, xs)
        angles = slice_node_angles(u)
        exact = spacetime_angle(SpaceTimeMatrix.from_full([[2.0, 0.5], [0.5, 2.0]])).radians
        assert angles.shape == (7, 7)
        assert np.min(angles) >= exact - 1e-9

    def test_slice_node_angles_flag_time_concavity(self):
        ts = uniform_grid(0.0, 1.0, 9)
        xs = uniform_grid(-1.0, 1.0, 9)
        u = GridFunction2D.from_function(lambda t, x: -t * t + x * x, ts, xs)
        np.testing.assert_array_equal(slice_node_angles(u), -math.pi)

    def test_joint_convexity_of_envelopes(self):
        xs = uniform_grid(-1.0, 1.0, 9)
        convex = np.vstack([xs * xs, xs * xs + 1.0])
        assert legendre_joint_convexity(convex, xs[1] - xs[0])["pass"]
        assert not legendre_joint_convexity(-convex, xs[1] - xs[0])["pass"]

    def test_rejects_time_concave_candidate(self):
        c = HALF_PI + 0.3
        m = math.tan(0.3)
        g, _ = quadratic_boundary(0.0, c)
        p = DslDirichletProblem.from_function(g, c, 17, 17)
        bumped = GridFunction2D.from_function(
            lambda t, x: 0.5 * m * x * x + 0.5 * np.sin(math.pi * t) * (1.0 - x * x), p.ts, p.xs
        )
        report = verify_dsl_solution(bumped, c, p.boundary)
        assert report.boundary_residual <= 1e-12
        assert not report.passed
        assert "time_convexity" in report.violations

    def test_shape_mismatch(self):
        g, _ = quadratic_boundary(1.0, 2.0)
        p = DslDirichletProblem.from_function(g, 2.0, 9, 9)
        u = GridFunction2D.from_function(g, uniform_grid(0.0, 1.0, 5), uniform_grid(-1.0, 1.0, 5))
        with pytest.raises(GridFormatError):
            verify_dsl_solution(u, 2.0, p.boundary)
