import math

import numpy as np
import pytest
from pydantic import ValidationError

from dslkit.angles.lifted import schur_coupling
from dslkit.core.exceptions import HypothesisViolation, MatrixFormatError, NoSlice
from dslkit.linalg.matrices import SpaceTimeMatrix, SymMatrix
from dslkit.subequations.branches import DslBranch, SlBranch, Tier
from dslkit.subequations.planes import AffinePlane2D, line_to_slice, plane_to_slice
from dslkit.subequations.predicates import (
    eigenvalue_consequences,
    in_dual_F,
    in_F,
    in_Fcal,
    in_P,
    in_T,
    is_two_convex,
    schur_decomposition_terms,
    time_slot_sign,
)
from dslkit.subequations.star import critical_direction, in_star_product, slice_angles

HALF_PI = 0.5 * math.pi


class TestBranches:
    def test_sl_phase_range(self):
        SlBranch(n=2, c=3.0)
        with pytest.raises(ValidationError):
            SlBranch(n=2, c=math.pi)
        with pytest.raises(ValidationError):
            SlBranch(n=0, c=0.0)

    def test_dsl_phase_range(self):
        DslBranch(n=1, c=3.0)
        with pytest.raises(ValidationError):
            DslBranch(n=1, c=-math.pi)

    @pytest.mark.parametrize(
        "n,c,tier",
        [
            (1, HALF_PI, Tier.TOP),
            (1, 0.0, Tier.SECOND),
            (1, -0.1, Tier.INNER),
            (3, math.pi + 0.1, Tier.SECOND),
            (3, 1.5 * math.pi, Tier.TOP),
        ],
    )
    def test_tiers(self, n, c, tier):
        b = DslBranch(n=n, c=c)
        assert b.tier is tier
        assert b.in_top_two == (tier is not Tier.INNER)

    def test_constructors(self):
        assert DslBranch.second(2).c == pytest.approx(HALF_PI)
        assert DslBranch.top(2, 0.1).c == pytest.approx(math.pi + 0.1)
        assert DslBranch(n=2, c=1.0).slice_phase == pytest.approx(1.0 - HALF_PI)
        assert SlBranch(n=2, c=0.7).dual_phase == -0.7


class TestPredicates:
    def test_in_F(self):
        b = SymMatrix.diag([1.0, 1.0])
        assert in_F(b, SlBranch(n=2, c=HALF_PI))
        assert not in_F(b, SlBranch(n=2, c=HALF_PI + 0.01))

    def test_dimension_mismatch(self):
        with pytest.raises(MatrixFormatError):
            in_F(SymMatrix.identity(3), SlBranch(n=2, c=0.0))

    def test_dual(self):
        b = SymMatrix.diag([-0.5])
        branch = SlBranch(n=1, c=0.6)
        assert not in_F(b, branch)
        assert in_dual_F(b, branch)

    @pytest.mark.parametrize("n,c", [(1, 0.4), (2, -0.8), (3, 2.0)])
    def test_dual_matches_negated_interior_complement(self, rng, n, c):
        branch = SlBranch(n=n, c=c)
        checked = 0
        for _ in range(200):
            g = rng.standard_normal((n, n))
            a = SymMatrix.from_upper(g + g.T)
            negated = float(np.sum(np.arctan(np.linalg.eigvalsh(-a.entries))))
            if abs(negated - c) <= 1e-6:
                continue
            assert in_dual_F(a, branch) == (not negated > c)
            checked += 1
        assert checked > 150

    def test_in_Fcal_golden(self, golden):
        assert in_Fcal(golden.matrix(), golden.branch())
        assert not in_Fcal(golden.matrix(), DslBranch(n=3, c=golden.phase + 1e-6))

    def test_convex_cones(self):
        assert in_P(SymMatrix.diag([0.0, 1.0]))
        assert not in_P(SymMatrix.diag([-0.1, 1.0]))
        assert in_T(SymMatrix.diag([-0.1, 1.0]))
        assert not in_T(SpaceTimeMatrix.diag([-2.0, 1.0]))

    def test_two_convexity(self, golden):
        assert is_two_convex(SymMatrix.diag([3.0]))
        assert is_two_convex(SymMatrix.diag([-1.0, 1.0, 5.0]))
        assert not is_two_convex(golden.matrix())
        assert golden.two_convexity_gap < 0

    def test_eigenvalue_consequences(self):
        r = eigenvalue_consequences(SymMatrix.diag([2.0, 1.0]))
        assert r.top_hypothesis and r.top_branch_psd_ok
        r = eigenvalue_consequences(SymMatrix.diag([5.0, -0.1]))
        assert not r.top_hypothesis and r.second_hypothesis
        assert r.second_branch_dominance_ok


class TestSchurTerms:
    def test_matches_schur_coupling(self, rng):
        g = rng.standard_normal((4, 4))
        a = SpaceTimeMatrix.from_full(0.5 * (g + g.T))
        terms = schur_decomposition_terms(a)
        z = schur_coupling(a)
        assert terms.real == pytest.approx(z.real, abs=1e-10)
        assert terms.imag == pytest.approx(z.imag, abs=1e-10)

    def test_weighted_mean(self):
        a = SpaceTimeMatrix(0.0, np.array([1.0, 0.0]), SymMatrix.diag([2.0, -1.0]))
        terms = schur_decomposition_terms(a)
        assert terms.weighted_mean == pytest.approx(2.0)
        assert schur_decomposition_terms(SpaceTimeMatrix.diag([1.0, 2.0])).weighted_mean is None


class TestTimeSlotSign:
    def test_member_of_second_branch(self, golden):
        r = time_slot_sign(golden.matrix(), golden.branch())
        assert r.a00_nonneg and r.a00_pos_given_avec and r.average_bound_ok

    def test_inner_branch_rejected(self):
        with pytest.raises(HypothesisViolation):
            time_slot_sign(SpaceTimeMatrix.diag([1.0, 1.0, 1.0]), DslBranch(n=2, c=0.1))

    def test_non_member_rejected(self):
        with pytest.raises(HypothesisViolation):
            time_slot_sign(SpaceTimeMatrix.diag([-1.0, 1.0]), DslBranch(n=1, c=0.5))


class TestStarProduct:
    def test_critical_direction_blocks_the_matrix(self):
        a = SpaceTimeMatrix(2.0, np.array([1.0, -4.0]), SymMatrix.identity(2))
        v = critical_direction(a)
        np.testing.assert_allclose(a.a00 * v + a.a_vec, 0.0, atol=1e-15)

    def test_slice_angle_at_origin(self, golden):
        a = golden.matrix()
        theta = slice_angles(a, np.zeros((1, 3)))[0]
        assert theta == pytest.approx(golden.phase - HALF_PI, abs=1e-12)

    def test_agrees_with_membership(self, golden):
        member = golden.matrix().shift(0.1)
        outsider = golden.matrix().shift(-0.5)
        b = golden.branch()
        assert in_Fcal(member, b) and in_star_product(member, b, rng=0).member
        assert not in_Fcal(outsider, b)
        assert not in_star_product(outsider, b, rng=0).member

    def test_negative_time_entry(self):
        a = SpaceTimeMatrix.diag([-1.0, 5.0])
        result = in_star_product(a, DslBranch(n=1, c=HALF_PI))
        assert not result.member and not result.a00_ok

    def test_inner_branch_rejected(self):
        with pytest.raises(HypothesisViolation):
            in_star_product(SpaceTimeMatrix.diag([1.0, 1.0, 1.0]), DslBranch(n=2, c=0.0))


class TestPlanes:
    def test_plane_lies_in_slice(self):
        plane = AffinePlane2D(0.5, np.array([1.0, 0.0, 2.0]), (1.0, [1.0, 0.0, 0.0]), (2.0, [0.0, 1.0, 0.0]))
        sl = plane_to_slice(plane)
        for s1, s2 in [(0.0, 0.0), (1.0, 0.0), (0.3, -2.0)]:
            x = plane.base_x + s1 * plane.h1[1] + s2 * plane.h2[1]
            t = plane.base_t + s1 * plane.h1[0] + s2 * plane.h2[0]
            assert sl.time_at(x) == pytest.approx(t, abs=1e-12)

    def test_minimum_norm_direction(self):
        plane = AffinePlane2D(0.0, np.zeros(3), (1.0, [1.0, 0.0, 0.0]), (2.0, [0.0, 1.0, 0.0]))
        np.testing.assert_allclose(plane_to_slice(plane).V, [1.0, 2.0, 0.0], atol=1e-12)

    def test_time_like_plane(self):
        plane = AffinePlane2D(0.0, np.zeros(2), (1.0, [0.0, 0.0]), (0.0, [1.0, 0.0]))
        with pytest.raises(NoSlice):
            plane_to_slice(plane)

    def test_one_space_dimension(self):
        plane = AffinePlane2D(0.0, np.zeros(1), (1.0, [0.0]), (0.0, [1.0]))
        with pytest.raises(NoSlice):
            plane_to_slice(plane)

    def test_dependent_spanning_vectors(self):
        with pytest.raises(MatrixFormatError):
            AffinePlane2D(0.0, np.zeros(2), (1.0, [1.0, 0.0]), (2.0, [2.0, 0.0]))

    def test_line(self):
        sl = line_to_slice((1.0, [0.0, 1.0]), (3.0, [2.0, 0.0]))
        np.testing.assert_allclose(sl.V, [1.5, 0.0])
        assert sl.time_at(np.array([2.0, 1.0])) == pytest.approx(4.0)

    def test_time_like_line(self):
        with pytest.raises(NoSlice):
            line_to_slice((0.0, [0.0]), (1.0, [0.0]))
