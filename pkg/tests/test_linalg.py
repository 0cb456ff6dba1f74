import numpy as np
import pytest
import scipy.linalg

from dslkit.core.exceptions import (
    BranchCutViolation,
    CrossCheckMismatch,
    MatrixFormatError,
    NonConvergence,
    SingularSystem,
)
from dslkit.linalg.codec import load_matrix, matrix_from_document, matrix_to_document
from dslkit.linalg.jacobi import jacobi_eigh
from dslkit.linalg.matrices import SpaceTimeMatrix, SymMatrix
from dslkit.linalg.polynomial import aberth_roots, faddeev_leverrier, polynomial_backward_error
from dslkit.linalg.spectral import (
    det_lu,
    eig_complex_spacetime,
    eig_sym,
    principal_arg,
    solve_complex_linear,
    spacetime_pencil,
    spectrum_gap,
)


def _goe(rng, n):
    g = rng.standard_normal((n, n))
    return 0.5 * (g + g.T)


class TestSymMatrix:
    def test_rejects_asymmetric(self):
        with pytest.raises(MatrixFormatError):
            SymMatrix(np.array([[1.0, 2.0], [2.0 + 1e-12, 1.0]]))

    def test_rejects_non_finite(self):
        with pytest.raises(MatrixFormatError):
            SymMatrix(np.array([[np.inf]]))

    def test_from_upper_mirrors(self):
        a = SymMatrix.from_upper([[1.0, 2.0], [99.0, 3.0]])
        assert a.tolist() == [[1.0, 2.0], [2.0, 3.0]]

    def test_arithmetic(self):
        a = SymMatrix.diag([1.0, 2.0])
        assert (a + SymMatrix.identity(2)).trace() == 5.0
        assert (2.0 * a - a) == a
        assert SymMatrix.zeros(3).norm() == 0.0

    def test_entries_are_read_only(self):
        a = SymMatrix.identity(2)
        with pytest.raises(ValueError):
            a.entries[0, 0] = 5.0


class TestSpaceTimeMatrix:
    def test_blocks_round_trip_full(self, rng):
        m = _goe(rng, 4)
        a = SpaceTimeMatrix.from_full(m)
        assert a.n == 3
        np.testing.assert_array_equal(a.full(), m)

    def test_block_diag_has_zero_coupling(self):
        a = SpaceTimeMatrix.block_diag(2.0, SymMatrix.diag([1.0, -1.0]))
        np.testing.assert_array_equal(a.a_vec, [0.0, 0.0])
        assert a.coupling_scale() == 2.0

    def test_shift_adds_identity(self):
        a = SpaceTimeMatrix.diag([1.0, 2.0, 3.0]).shift(0.5)
        np.testing.assert_array_equal(np.diag(a.full()), [1.5, 2.5, 3.5])

    def test_needs_a_space_dimension(self):
        with pytest.raises(MatrixFormatError):
            SpaceTimeMatrix.from_full([[1.0]])

    def test_mismatched_blocks(self):
        with pytest.raises(MatrixFormatError):
            SpaceTimeMatrix(1.0, np.zeros(3), SymMatrix.identity(2))


class TestJacobi:
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_eigenvalues_match_lapack(self, rng, n):
        a = _goe(rng, n)
        values, vecs = jacobi_eigh(a)
        np.testing.assert_allclose(values, np.linalg.eigvalsh(a)[::-1], atol=1e-12)
        np.testing.assert_allclose(vecs.T @ vecs, np.eye(n), atol=1e-12)
        np.testing.assert_allclose(vecs @ np.diag(values) @ vecs.T, a, atol=1e-12)

    def test_descending_order(self, rng):
        values = eig_sym(SymMatrix(_goe(rng, 6)))
        assert np.all(np.diff(values) <= 0.0)

    def test_sweep_budget_exhausted(self, rng):
        with pytest.raises(NonConvergence):
            jacobi_eigh(_goe(rng, 6), threshold=1e-14, max_sweeps=1)


class TestPolynomial:
    def test_characteristic_polynomial(self, rng):
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        np.testing.assert_allclose(faddeev_leverrier(m), np.poly(m), atol=1e-10)

    def test_known_roots(self):
        coeffs = np.poly([1.0, 2.0, -3.0, 0.5j])
        roots, _ = aberth_roots(coeffs)
        expected = np.array([1.0, 2.0, -3.0, 0.5j])
        np.testing.assert_allclose(np.sort_complex(roots), np.sort_complex(expected), atol=1e-10)
        assert polynomial_backward_error(coeffs, roots) < 1e-12

    def test_degenerate_degrees(self):
        assert aberth_roots(np.array([2.0]))[0].size == 0
        np.testing.assert_allclose(aberth_roots(np.array([2.0, -4.0]))[0], [2.0])


class TestComplexSpectrum:
    def test_product_is_determinant(self, rng):
        a = SpaceTimeMatrix.from_full(_goe(rng, 4))
        spectrum = eig_complex_spacetime(a)
        assert len(spectrum) == 4
        assert spectrum.residual < 1e-10
        det = det_lu(spacetime_pencil(a))
        assert abs(spectrum.product() - det) <= 1e-9 * max(1.0, abs(det))

    def test_matches_lapack(self, rng):
        a = SpaceTimeMatrix.from_full(_goe(rng, 4))
        spectrum = eig_complex_spacetime(a)
        assert spectrum_gap(spectrum.values, scipy.linalg.eigvals(spacetime_pencil(a))) <= 1e-9

    def test_spectrum_gap_pairs_roots(self):
        assert spectrum_gap(np.array([1.0, 2.0j]), np.array([2.0j + 1e-3, 1.0])) == pytest.approx(1e-3)

    def test_lapack_disagreement_raises(self, rng, monkeypatch):
        a = SpaceTimeMatrix.from_full(_goe(rng, 3))
        monkeypatch.setattr(scipy.linalg, "eigvals", lambda m: np.linalg.eigvals(m) + 1e-3)
        with pytest.raises(CrossCheckMismatch):
            eig_complex_spacetime(a)

    def test_pencil_has_degenerate_time_slot(self):
        a = SpaceTimeMatrix.diag([2.0, 3.0])
        np.testing.assert_allclose(spacetime_pencil(a), np.diag([2.0j, 1.0 + 3.0j]))

    def test_det_lu_matches_numpy(self, rng):
        m = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        assert abs(det_lu(m) - np.linalg.det(m)) <= 1e-10 * abs(np.linalg.det(m))


class TestPrincipalArg:
    def test_values(self):
        assert principal_arg(1j) == pytest.approx(np.pi / 2)
        assert principal_arg(-1j) == pytest.approx(-np.pi / 2)
        assert principal_arg(1.0) == 0.0

    @pytest.mark.parametrize("z", [-1.0, 0.0, 1e-20])
    def test_branch_cut(self, z):
        with pytest.raises(BranchCutViolation):
            principal_arg(z, threshold=1e-15)


class TestSolveComplexLinear:
    def test_solves(self, rng):
        m = np.eye(3) + 1j * _goe(rng, 3)
        b = rng.standard_normal(3).astype(complex)
        np.testing.assert_allclose(m @ solve_complex_linear(m, b), b, atol=1e-12)

    def test_singular(self):
        m = np.array([[1.0, 1.0], [1.0, 1.0]], dtype=complex)
        with pytest.raises(SingularSystem):
            solve_complex_linear(m, np.ones(2))


class TestCodec:
    def test_parse_kinds(self):
        sym = matrix_from_document({"n": 2, "kind": "sym", "rows": [[1, 0], [0, 2]]})
        st = matrix_from_document({"n": 2, "rows": [[1, 0.5], [0.5, 2]]})
        assert isinstance(sym, SymMatrix) and sym.n == 2
        assert isinstance(st, SpaceTimeMatrix) and st.n == 1

    def test_document_shape(self):
        doc = matrix_to_document(SpaceTimeMatrix.diag([1.0, 2.0, 3.0]))
        assert doc["n"] == 3 and doc["kind"] == "spacetime"

    @pytest.mark.parametrize(
        "doc",
        [
            {"n": 2, "rows": [[1, 2], [3, 4]]},
            {"n": 3, "rows": [[1, 0], [0, 1]]},
            {"rows": [[1]]},
            {"n": 2, "kind": "dense", "rows": [[1, 0], [0, 1]]},
        ],
    )
    def test_rejects_malformed(self, doc):
        with pytest.raises(MatrixFormatError):
            matrix_from_document(doc)

    def test_invalid_json_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(MatrixFormatError):
            load_matrix(path)
