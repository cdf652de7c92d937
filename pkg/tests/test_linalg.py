import numpy as np
import pytest

from cssp.errors import DegenerateDirection
from cssp.instances import hard_instance
from cssp.linalg import (
    char_poly,
    complement_projector,
    gram,
    numerical_rank,
    projector_update,
    rank_tolerance,
    residual_spectral_sq,
    spectral_norm_sq,
    sym_eigenvalues,
    symmetrize,
)
from cssp.polynomial import poly_eval


def random_matrix(rng, n, d):
    return rng.standard_normal((n, d))


class TestGram:
    def test_identity(self):
        assert np.array_equal(gram(np.eye(2)), np.eye(2))

    def test_two_columns(self):
        a = np.array([[1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
        assert np.allclose(gram(a), [[2, 1], [1, 2]])

    def test_hard_instance_closed_form(self):
        a = hard_instance(2, 1.0)
        assert np.allclose(gram(a), [[2, 1], [1, 2]])
        b = hard_instance(3, 2.0)
        assert np.array_equal(gram(b), 4.0 * np.eye(3) + np.ones((3, 3)))

    def test_rows_orientation(self):
        a = np.arange(6.0).reshape(2, 3)
        assert np.allclose(gram(a, by="rows"), a @ a.T)

    def test_exactly_symmetric(self):
        rng = np.random.default_rng(0)
        g = gram(random_matrix(rng, 5, 7))
        assert np.array_equal(g, g.T)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            gram(np.array([[np.nan, 0.0], [0.0, 1.0]]))


class TestEigenvalues:
    def test_diagonal(self):
        assert np.allclose(sym_eigenvalues(np.diag([3.0, 1.0])), [3, 1])

    def test_two_by_two(self):
        assert np.allclose(sym_eigenvalues([[2.0, 1.0], [1.0, 2.0]]), [3, 1])

    def test_hard_instance_spectrum(self):
        eigs = sym_eigenvalues(gram(hard_instance(4, 1.0)))
        assert np.allclose(eigs, [5, 1, 1, 1], atol=1e-10)

    def test_matches_numpy_on_random(self):
        rng = np.random.default_rng(1)
        for _ in range(30):
            n = int(rng.integers(1, 9))
            m = symmetrize(rng.standard_normal((n, n)))
            mine = sym_eigenvalues(m)
            ref = np.sort(np.linalg.eigvalsh(m))[::-1]
            norm = 1.0 + np.abs(ref).max()
            assert np.max(np.abs(mine - ref)) <= 1e-10 * norm

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            sym_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_sweep_budget_exhaustion_raises(self):
        from cssp.errors import NoConvergence

        with pytest.raises(NoConvergence):
            sym_eigenvalues([[2.0, 1.0], [1.0, 2.0]], max_sweeps=0)

    def test_high_relative_accuracy_on_graded_spectrum(self):
        # Jacobi keeps small eigenvalues of a PSD matrix relatively accurate
        rng = np.random.default_rng(9)
        target = np.array([1.0, 1e-3, 1e-6, 1e-9])
        q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        m = symmetrize((q * target) @ q.T)
        eigs = sym_eigenvalues(m)
        assert np.all(np.abs(eigs - target) <= 1e-8 * target + 1e-15)


class TestCharPoly:
    def test_identity(self):
        assert np.allclose(char_poly(np.eye(2)), [1, -2, 1])

    def test_diagonal(self):
        assert np.allclose(char_poly(np.diag([3.0, 1.0])), [3, -4, 1])

    def test_ones_plus_identity(self):
        m = np.eye(4) + np.ones((4, 4))
        assert np.allclose(char_poly(m), [5, -16, 18, -8, 1])

    def test_monic(self):
        rng = np.random.default_rng(2)
        for n in (1, 2, 5, 9):
            m = symmetrize(rng.standard_normal((n, n)))
            assert char_poly(m)[-1] == 1.0

    def test_vanishes_at_eigenvalues(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            n = int(rng.integers(1, 9))
            m = symmetrize(rng.standard_normal((n, n)))
            c = char_poly(m)
            top = np.max(np.abs(c))
            for lam in sym_eigenvalues(m):
                assert abs(poly_eval(c, lam)) <= 1e-6 * top

    def test_coefficients_against_eigenvalue_product(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            n = int(rng.integers(2, 8))
            m = symmetrize(rng.standard_normal((n, n)))
            ref = np.polynomial.polynomial.polyfromroots(np.linalg.eigvalsh(m))
            c = char_poly(m)
            assert np.max(np.abs(c - ref)) <= 1e-8 * np.max(np.abs(ref))


class TestProjectorUpdate:
    def test_single_direction(self):
        assert np.allclose(projector_update(np.eye(2), [1.0, 0.0]), np.diag([0.0, 1.0]))

    def test_uniform_direction(self):
        q = projector_update(np.eye(3), [1.0, 1.0, 1.0])
        assert np.allclose(q, np.eye(3) - np.ones((3, 3)) / 3.0)

    def test_degenerate_direction(self):
        with pytest.raises(DegenerateDirection):
            projector_update(np.diag([0.0, 1.0]), [1.0, 0.0])

    def test_symmetry_idempotency_trace(self):
        rng = np.random.default_rng(5)
        for _ in range(15):
            n = int(rng.integers(2, 10))
            q = np.eye(n)
            steps = int(rng.integers(1, n + 1))
            for _ in range(steps):
                b = rng.standard_normal(n)
                before = np.trace(q)
                try:
                    q = projector_update(q, b)
                except DegenerateDirection:
                    continue
                assert np.array_equal(q, q.T)
                assert np.linalg.norm(q @ q - q) <= 1e-9 * n
                assert abs(before - np.trace(q) - 1.0) <= 1e-8


class TestResidual:
    def test_identity_single_column(self):
        assert residual_spectral_sq(np.eye(2), [0]) == pytest.approx(1.0)

    def test_diagonal(self):
        a = np.diag([np.sqrt(3.0), 1.0])
        assert residual_spectral_sq(a, [1]) == pytest.approx(3.0)

    def test_empty_subset_is_squared_norm(self):
        rng = np.random.default_rng(6)
        a = random_matrix(rng, 4, 3)
        assert residual_spectral_sq(a, []) == pytest.approx(spectral_norm_sq(a))

    def test_hard_instance_value(self):
        a = hard_instance(4, 1.0)
        assert residual_spectral_sq(a, [0, 1]) == pytest.approx(5.0 / 3.0, rel=1e-9)

    def test_matches_svd_route(self):
        rng = np.random.default_rng(7)
        for _ in range(30):
            n, d = (int(x) for x in rng.integers(2, 9, size=2))
            a = random_matrix(rng, n, d)
            size = int(rng.integers(0, d + 1))
            s = list(rng.choice(d, size=size, replace=False))
            mine = residual_spectral_sq(a, s)
            sub = a[:, s] if s else np.zeros((n, 1))
            resid = a - sub @ np.linalg.pinv(sub) @ a
            ref = np.linalg.svd(resid, compute_uv=False)[0] ** 2
            assert abs(mine - ref) <= 1e-7 * max(1.0, ref)

    def test_monotone_under_superset(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            a = random_matrix(rng, 6, 6)
            order = list(rng.permutation(6))
            prev = residual_spectral_sq(a, [])
            for j in range(1, 7):
                cur = residual_spectral_sq(a, order[:j])
                assert cur <= prev + 1e-9 * max(1.0, prev)
                prev = cur

    def test_duplicate_subset_rejected(self):
        with pytest.raises(ValueError):
            residual_spectral_sq(np.eye(3), [0, 0])


class TestRank:
    def test_full_and_deficient(self):
        assert numerical_rank(hard_instance(4, 1.0)) == 4
        a = np.ones((5, 3))
        assert numerical_rank(a) == 1

    def test_rank_tolerance_scales_with_norm(self):
        a = np.eye(3)
        assert rank_tolerance(1000 * a) == pytest.approx(1000 * rank_tolerance(a))

    def test_complement_projector_skips_dependent_columns(self):
        a = np.array([[1.0, 2.0, 0.0], [0.0, 0.0, 1.0]])
        q = complement_projector(a, [0, 1, 2])
        assert np.allclose(q, 0.0, atol=1e-12)
