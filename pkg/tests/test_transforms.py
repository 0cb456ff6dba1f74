import math

import numpy as np
import pytest

from dslkit.angles.lifted import lifted_angle, spacetime_angle
from dslkit.core.exceptions import GridFormatError, MatrixFormatError
from dslkit.linalg.matrices import SpaceTimeMatrix, SymMatrix
from dslkit.solver.verification import grid_aligned_slices
from dslkit.transforms.convexity import discrete_convexity_report, discrete_hessians, slice_second_differences
from dslkit.transforms.grids import GridFunction1D, GridFunction2D, read_grid_csv, uniform_grid
from dslkit.transforms.legendre import legendre_down, legendre_up, tau_grid, time_lipschitz
from dslkit.transforms.slices import (
    AffineSlice,
    QuadraticFunction,
    SinCosFunction,
    hessian_pullback_check,
    pullback_block,
    pullback_slice,
    shear_conjugate,
)


def _random_spacetime(rng, n):
    g = rng.standard_normal((n + 1, n + 1))
    return SpaceTimeMatrix.from_full(0.5 * (g + g.T))


class TestSlices:
    def test_embed(self):
        sl = AffineSlice(1.0, [2.0, -1.0])
        t, x = sl.embed(np.array([[1.0, 1.0], [0.0, 2.0]]))
        np.testing.assert_allclose(t, [2.0, -1.0])
        assert sl.to_dict() == {"t0": 1.0, "V": [2.0, -1.0]}

    def test_pullback_formula(self):
        a = SpaceTimeMatrix(2.0, np.array([1.0]), SymMatrix.diag([3.0]))
        # 2 v^2 + 2 v + 3 at v = 0.5
        assert pullback_slice(a, [0.5]).tolist() == [[4.5]]

    def test_block_pullback_matches_slice(self, rng):
        a = _random_spacetime(rng, 3)
        v = rng.standard_normal(3)
        block = pullback_block(a.as_sym(), 1, v.reshape(3, 1))
        np.testing.assert_allclose(block.entries, pullback_slice(a, v).entries, atol=1e-12)

    def test_block_pullback_zero_gamma_is_space_block(self, rng):
        g = rng.standard_normal((5, 5))
        a = SymMatrix(0.5 * (g + g.T))
        block = pullback_block(a, 2, np.zeros((3, 2)))
        np.testing.assert_array_equal(block.entries, a.entries[2:, 2:])

    @pytest.mark.parametrize("m", [0, 4])
    def test_block_size_range(self, m):
        with pytest.raises(MatrixFormatError):
            pullback_block(SymMatrix.identity(4), m, np.zeros((4 - m, max(m, 1))))

    def test_direction_length_checked(self):
        with pytest.raises(MatrixFormatError):
            pullback_slice(SpaceTimeMatrix.diag([1.0, 1.0]), [1.0, 2.0])

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_shear_invariance(self, rng, n):
        for _ in range(4):
            a = _random_spacetime(rng, n)
            v = rng.standard_normal(n)
            sheared = shear_conjugate(a, v)
            assert spacetime_angle(sheared).radians == pytest.approx(spacetime_angle(a).radians, abs=1e-8)

    def test_shear_is_a_congruence(self, rng):
        a = _random_spacetime(rng, 2)
        v = rng.standard_normal(2)
        m = np.eye(3)
        m[0, 1:] = v
        np.testing.assert_allclose(shear_conjugate(a, v).full(), m.T @ a.full() @ m, atol=1e-12)

    def test_hessian_of_quadratic(self, rng):
        a = _random_spacetime(rng, 2)
        u = QuadraticFunction(a, rng.standard_normal(3))
        gap = hessian_pullback_check(u, 0.3, [0.5, -1.0], [0.2, 0.1], 1e-3)
        assert gap < 1e-5

    def test_hessian_of_smooth_function(self):
        gap = hessian_pullback_check(SinCosFunction(1), 0.4, [0.7], [0.3], 1e-3)
        assert gap < 1e-4


class TestGrids:
    def test_uniform_grid(self):
        np.testing.assert_allclose(uniform_grid(-1.0, 1.0, 5), [-1.0, -0.5, 0.0, 0.5, 1.0])
        with pytest.raises(GridFormatError):
            uniform_grid(1.0, 1.0, 5)

    def test_second_differences(self):
        xs = uniform_grid(0.0, 1.0, 11)
        f = GridFunction1D.from_function(lambda x: 3.0 * x * x, xs)
        np.testing.assert_allclose(f.second_differences(), 6.0, atol=1e-9)
        assert f.is_uniform()

    def test_rejects_unordered(self):
        with pytest.raises(GridFormatError):
            GridFunction1D(np.array([0.0, 2.0, 1.0]), np.zeros(3))

    def test_rejects_non_uniform_2d(self):
        with pytest.raises(GridFormatError):
            GridFunction2D(np.array([0.0, 0.1, 1.0]), uniform_grid(0.0, 1.0, 3), np.zeros((3, 3)))

    def test_csv_parse(self):
        ts = uniform_grid(0.0, 1.0, 3)
        xs = uniform_grid(-1.0, 1.0, 4)
        u = GridFunction2D.from_function(lambda t, x: t + x * x, ts, xs)
        parsed = read_grid_csv(u.to_csv())
        assert isinstance(parsed, GridFunction2D) and parsed.axis == "t"
        np.testing.assert_array_equal(parsed.values, u.values)

    def test_csv_from_file(self, tmp_path):
        f = GridFunction1D(uniform_grid(0.0, 1.0, 4), np.arange(4.0))
        path = tmp_path / "f.csv"
        path.write_text(f.to_csv(), encoding="utf-8")
        parsed = read_grid_csv(path)
        assert isinstance(parsed, GridFunction1D)
        np.testing.assert_array_equal(parsed.values, f.values)

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "a,b\n1,2\n",
            "t,x,value\n0,0,1\n0,1,oops\n",
            "t,x,value\n0,0,1\n0,1,1\n1,0,1\n",
        ],
    )
    def test_csv_errors(self, text):
        with pytest.raises(GridFormatError):
            read_grid_csv(text.splitlines())

    @pytest.mark.parametrize(
        "text",
        [
            "t,x,value\n0,0,1\n1,0,1\n0,1,1\n1,1,1\n",
            "t,x,value\n0,0,1\n0,0,2\n1,1,1\n1,0,1\n",
        ],
    )
    def test_csv_rejects_misordered_rows(self, text):
        with pytest.raises(GridFormatError, match="row 2"):
            read_grid_csv(text.splitlines())

    def test_csv_large_grid(self):
        ts = uniform_grid(0.0, 1.0, 129)
        xs = uniform_grid(-1.0, 1.0, 129)
        u = GridFunction2D.from_function(lambda t, x: t * t + x, ts, xs)
        parsed = read_grid_csv(u.to_csv())
        assert parsed.values.shape == (129, 129)
        np.testing.assert_array_equal(parsed.xs, u.xs)

    def test_interpolation_is_exact_for_bilinear(self):
        ts = uniform_grid(0.0, 1.0, 5)
        xs = uniform_grid(-1.0, 1.0, 5)
        u = GridFunction2D.from_function(lambda t, x: 1.0 + 2.0 * t - x + t * x, ts, xs)
        t = np.array([0.13, 0.77])
        x = np.array([-0.4, 0.9])
        np.testing.assert_allclose(u.interpolate(t, x), 1.0 + 2.0 * t - x + t * x, atol=1e-12)


class TestLegendre:
    def test_tau_grid(self):
        taus = tau_grid(2.0, 10)
        assert taus.shape == (11,)
        assert taus[5] == 0.0
        assert taus[0] == -3.0 and taus[-1] == 3.0
        assert tau_grid(0.0, 4, bound=0.5)[-1] == 0.5
        with pytest.raises(GridFormatError):
            tau_grid(1.0, 5, bound=0.0)

    def test_time_lipschitz(self):
        ts = uniform_grid(0.0, 1.0, 11)
        assert time_lipschitz(ts, 3.0 * ts - 1.0) == pytest.approx(3.0)

    def test_involution_on_convex_profile(self):
        ts = uniform_grid(0.0, 1.0, 21)
        xs = uniform_grid(-1.0, 1.0, 5)
        u = GridFunction2D.from_function(lambda t, x: (t - 0.3) ** 2 * (1.0 + x * x) + x, ts, xs)
        lip = time_lipschitz(ts, u.values)
        taus = tau_grid(lip, 4 * 21 + 1)
        back = legendre_up(legendre_down(u, taus), ts)
        err = back.values - u.values
        assert np.max(err) <= 1e-12
        assert np.max(np.abs(err)) <= 2.0 * (u.dt + (taus[1] - taus[0])) * lip

    def test_double_conjugate_is_convex_minorant(self):
        ts = uniform_grid(0.0, 1.0, 21)
        xs = uniform_grid(0.0, 1.0, 3)
        u = GridFunction2D.from_function(lambda t, x: np.sin(6.0 * t) + 0.0 * x, ts, xs)
        taus = tau_grid(time_lipschitz(ts, u.values), 201)
        back = legendre_up(legendre_down(u, taus), ts)
        assert np.all(back.values <= u.values + 1e-12)
        assert discrete_convexity_report(back).time_convex()

    def test_axis_checked(self):
        ts = uniform_grid(0.0, 1.0, 3)
        u = GridFunction2D.from_function(lambda t, x: t + x, ts, ts)
        with pytest.raises(GridFormatError):
            legendre_up(u, ts)
        with pytest.raises(GridFormatError):
            legendre_down(legendre_down(u, tau_grid(1.0, 5)), ts)


class TestConvexity:
    def test_hessians_of_quadratic(self):
        ts = uniform_grid(0.0, 1.0, 9)
        xs = uniform_grid(-1.0, 1.0, 9)
        u = GridFunction2D.from_function(lambda t, x: t * t + 0.5 * t * x - x * x, ts, xs)
        h = discrete_hessians(u)
        np.testing.assert_allclose(h[..., 0, 0], 2.0, atol=1e-9)
        np.testing.assert_allclose(h[..., 0, 1], 0.5, atol=1e-9)
        np.testing.assert_allclose(h[..., 1, 1], -2.0, atol=1e-9)

    def test_report(self):
        ts = uniform_grid(0.0, 1.0, 11)
        xs = uniform_grid(-1.0, 1.0, 11)
        convex = GridFunction2D.from_function(lambda t, x: t * t + x * x, ts, xs)
        report = discrete_convexity_report(convex)
        assert report.time_convex() and report.jointly_convex()
        assert report.min_second_diff_t == pytest.approx(2.0, abs=1e-8)
        concave = GridFunction2D.from_function(lambda t, x: -t * t + x * x, ts, xs)
        assert not discrete_convexity_report(concave).time_convex()

    def test_slices_along_level_direction(self):
        ts = uniform_grid(0.0, 1.0, 11)
        xs = uniform_grid(0.0, 1.0, 11)
        u = GridFunction2D.from_function(lambda t, x: (t - x) ** 2, ts, xs)
        for sl in grid_aligned_slices(u, [1]):
            d2 = slice_second_differences(u, sl)
            np.testing.assert_allclose(d2, 0.0, atol=1e-8)

    def test_slice_threshold(self):
        ts = uniform_grid(0.0, 1.0, 11)
        xs = uniform_grid(-1.0, 1.0, 21)
        u = GridFunction2D.from_function(lambda t, x: t * t - 0.5 * x * x, ts, xs)
        report = discrete_convexity_report(u, grid_aligned_slices(u, [0]))
        assert report.min_slice_second_diff == pytest.approx(-1.0, abs=1e-8)
        assert report.slices_above(-1.0)
        assert not report.slices_above(0.0)

    def test_slices_need_one_space_dimension(self):
        ts = uniform_grid(0.0, 1.0, 3)
        u = GridFunction2D.from_function(lambda t, x: t + x, ts, ts)
        with pytest.raises(GridFormatError):
            slice_second_differences(u, AffineSlice(0.0, [1.0, 1.0]))


def test_lifted_angle_is_rotation_invariant(rng):
    g = rng.standard_normal((4, 4))
    b = SymMatrix(0.5 * (g + g.T))
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    assert lifted_angle(b.conjugate(q)).radians == pytest.approx(lifted_angle(b).radians, abs=1e-10)
    assert math.isfinite(lifted_angle(b).radians)
