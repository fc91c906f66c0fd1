import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tracebound import linalg
from tracebound.errors import ConvergenceFailure, InvalidMatrix, NonHermitianInput, NotPositiveSemidefinite

from conftest import random_hermitian


class TestEigh:
    def test_identity(self):
        w, v = linalg.eigh(np.eye(3))
        np.testing.assert_array_equal(w, [1, 1, 1])
        np.testing.assert_allclose(v.conj().T @ v, np.eye(3), atol=1e-15)

    def test_diagonal_sorted(self):
        w, v = linalg.eigh(np.diag([2.0, -1.0]))
        np.testing.assert_array_equal(w, [-1, 2])
        np.testing.assert_allclose(np.abs(v), [[0, 1], [1, 0]])

    def test_pauli_x(self):
        # characteristic polynomial l^2 - 1
        w, v = linalg.eigh([[0, 1], [1, 0]])
        np.testing.assert_allclose(w, [-1, 1], atol=1e-15)
        minus = np.array([1, -1]) / np.sqrt(2)
        plus = np.array([1, 1]) / np.sqrt(2)
        assert abs(abs(np.vdot(minus, v[:, 0])) - 1) < 1e-12
        assert abs(abs(np.vdot(plus, v[:, 1])) - 1) < 1e-12

    def test_complex_entries(self):
        # Pauli-Y: eigenvectors (1, -i)/sqrt2 and (1, i)/sqrt2
        w, v = linalg.eigh([[0, -1j], [1j, 0]])
        np.testing.assert_allclose(w, [-1, 1], atol=1e-15)
        assert abs(abs(np.vdot(np.array([1, 1j]) / np.sqrt(2), v[:, 1])) - 1) < 1e-12

    def test_zero_matrix(self):
        w, v = linalg.eigh(np.zeros((4, 4)))
        np.testing.assert_array_equal(w, 0)
        np.testing.assert_array_equal(v, np.eye(4))

    def test_one_by_one(self):
        w, v = linalg.eigh([[3.5]])
        assert w.tolist() == [3.5]

    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitianInput):
            linalg.eigh([[0, 1], [0, 0]])

    def test_rejects_bad_shapes(self):
        with pytest.raises(InvalidMatrix):
            linalg.eigh(np.zeros((2, 3)))
        with pytest.raises(InvalidMatrix):
            linalg.eigh([[np.nan]])

    def test_sweep_cap(self, rng):
        m = random_hermitian(rng, 6)
        with pytest.raises(ConvergenceFailure):
            linalg.eigh(m, max_sweeps=1)

    def test_deterministic(self, rng):
        m = random_hermitian(rng, 7)
        a, b = linalg.eigh(m), linalg.eigh(m)
        np.testing.assert_array_equal(a.eigenvalues, b.eigenvalues)
        np.testing.assert_array_equal(a.eigenvectors, b.eigenvectors)

    @pytest.mark.parametrize("n", range(2, 17))
    def test_reconstruction_corpus(self, n):
        rng = np.random.default_rng(1000 + n)
        for _ in range(1000):
            m = random_hermitian(rng, n, scale=float(rng.uniform(0.1, 10)))
            dec = linalg.eigh(m)
            err = np.linalg.norm(dec.reconstruct() - m)
            assert err <= 1e-10 * (1 + np.linalg.norm(m))
            unit = np.max(np.abs(dec.eigenvectors.conj().T @ dec.eigenvectors - np.eye(n)))
            assert unit <= 1e-10
            assert np.all(np.diff(dec.eigenvalues) >= 0)

    @pytest.mark.parametrize("n", [2, 5, 12])
    def test_matches_lapack(self, rng, n):
        for _ in range(50):
            m = random_hermitian(rng, n)
            np.testing.assert_allclose(linalg.eigvalsh(m), np.linalg.eigvalsh(m), atol=1e-11)

    def test_degenerate_spectrum(self, rng):
        q, _ = np.linalg.qr(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
        m = q @ np.diag([1, 1, 1, -2, -2]) @ q.conj().T
        dec = linalg.eigh(m)
        np.testing.assert_allclose(dec.eigenvalues, [-2, -2, 1, 1, 1], atol=1e-12)
        np.testing.assert_allclose(dec.reconstruct(), m, atol=1e-12)


class TestMatrixSqrt:
    def test_identity(self):
        np.testing.assert_allclose(linalg.matrix_sqrt_psd(np.eye(3)), np.eye(3), atol=1e-15)

    def test_diagonal(self):
        np.testing.assert_allclose(linalg.matrix_sqrt_psd(np.diag([4.0, 9.0])), np.diag([2, 3]), atol=1e-14)

    def test_tiny_negative_clamped(self):
        s = linalg.matrix_sqrt_psd(np.diag([1.0, -1e-12]))
        np.testing.assert_allclose(s, np.diag([1, 0]), atol=1e-15)

    def test_negative_rejected(self):
        with pytest.raises(NotPositiveSemidefinite):
            linalg.matrix_sqrt_psd(np.diag([1.0, -1e-6]))

    @pytest.mark.parametrize("n", range(2, 17))
    def test_square_corpus(self, n):
        rng = np.random.default_rng(2000 + n)
        for _ in range(200):
            k = int(rng.integers(1, n + 1))
            g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
            m = g @ g.conj().T
            s = linalg.matrix_sqrt_psd(m)
            assert np.linalg.norm(s @ s - m) <= 1e-9 * (1 + np.linalg.norm(m))
            assert linalg.hermiticity_error(s) <= 1e-12
            assert np.linalg.eigvalsh(s).min() >= -1e-10


class TestTraceNorm:
    def test_examples(self):
        assert linalg.trace_norm(np.zeros((3, 3))) == 0
        assert linalg.trace_norm(np.diag([1.0, -1.0])) == 2
        # |0><0| - 1/2 has eigenvalues +-1/2
        assert linalg.trace_norm(np.diag([0.5, -0.5])) == pytest.approx(1, abs=1e-15)

    def test_matches_independent_spectrum(self, rng):
        for n in range(1, 10):
            m = random_hermitian(rng, n)
            assert linalg.trace_norm(m) == pytest.approx(np.abs(np.linalg.eigvalsh(m)).sum(), abs=1e-11)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitianInput):
            linalg.trace_norm([[1, 2], [3, 4]])


class TestSplitProjectors:
    def test_diagonal(self):
        p, m = linalg.split_projectors(np.diag([1.0, -1.0]))
        np.testing.assert_allclose(p, np.diag([1, 0]), atol=1e-15)
        np.testing.assert_allclose(m, np.diag([0, 1]), atol=1e-15)

    def test_zero(self):
        p, m = linalg.split_projectors(np.zeros((3, 3)))
        assert not p.any() and not m.any()

    def test_kernel_belongs_to_neither(self):
        p, m = linalg.split_projectors(np.diag([1.0, 0.0, -2.0]))
        np.testing.assert_allclose(p + m, np.diag([1, 0, 1]), atol=1e-15)

    def test_orthogonal_pure_difference(self):
        psi = np.array([1, 1j]) / np.sqrt(2)
        phi = np.array([1, -1j]) / np.sqrt(2)
        pp, pm = np.outer(psi, psi.conj()), np.outer(phi, phi.conj())
        p, m = linalg.split_projectors(pp - pm)
        np.testing.assert_allclose(p, pp, atol=1e-12)
        np.testing.assert_allclose(m, pm, atol=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_projector_identities(self, rng, n):
        for _ in range(200):
            h = random_hermitian(rng, n)
            p, m = linalg.split_projectors(h, 1e-12)
            for q in (p, m):
                assert np.max(np.abs(q @ q - q)) <= 1e-10
                assert linalg.hermiticity_error(q) <= 1e-10
            assert np.max(np.abs(p @ m)) <= 1e-10
            value = np.trace(p @ h).real - np.trace(m @ h).real
            assert value == pytest.approx(linalg.trace_norm(h), abs=1e-9)

    def test_negative_tol_rejected(self):
        with pytest.raises(ValueError):
            linalg.split_projectors(np.eye(2), -1.0)


class TestKronecker:
    def test_examples(self):
        np.testing.assert_array_equal(linalg.kronecker(np.eye(2), np.eye(2)), np.eye(4))
        np.testing.assert_array_equal(linalg.kronecker(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 4, 6, 8]))
        out = linalg.kronecker(np.diag([1, 0]), np.eye(2) / 2)
        np.testing.assert_array_equal(out, np.diag([0.5, 0.5, 0, 0]))

    def test_matches_numpy(self, rng):
        for n, m in [(1, 3), (2, 3), (3, 2), (4, 4)]:
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            b = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
            np.testing.assert_array_equal(linalg.kronecker(a, b), np.kron(a, b))

    @pytest.mark.parametrize("n", [2, 3])
    def test_mixed_product(self, rng, n):
        for _ in range(50):
            a, b, c, d = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for _ in range(4))
            left = linalg.kronecker(a, b) @ linalg.kronecker(c, d)
            np.testing.assert_allclose(left, linalg.kronecker(a @ c, b @ d), atol=1e-10)


class TestHsInner:
    def test_examples(self):
        assert linalg.hs_inner(np.diag([1, 0]), np.diag([0, 1])) == 0
        rho = np.array([[0.7, 0.1j], [-0.1j, 0.3]])
        assert linalg.hs_inner(rho, np.eye(2) / 2) == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("n", [2, 4, 9])
    def test_rho_alpha_overlap(self, n):
        alpha = 0.37
        rho = alpha * np.diag(np.eye(n)[0]) + (1 - alpha) * np.eye(n) / n
        assert linalg.hs_inner(np.diag(np.eye(n)[0]), rho) == pytest.approx(alpha + (1 - alpha) / n, abs=1e-15)

    def test_errors(self):
        from tracebound.errors import DimensionMismatch

        with pytest.raises(DimensionMismatch):
            linalg.hs_inner(np.eye(2), np.eye(3))
        with pytest.raises(NonHermitianInput):
            linalg.hs_inner([[0, 1], [0, 0]], np.eye(2))


hermitian_2x2 = st.tuples(
    st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3)
).map(lambda t: np.array([[t[0], t[2] + 1j * t[3]], [t[2] - 1j * t[3], t[1]]]))


@settings(max_examples=300, deadline=None)
@given(hermitian_2x2)
def test_eigh_2x2_closed_form(m):
    a, d = m[0, 0].real, m[1, 1].real
    r = np.hypot((a - d) / 2, abs(m[0, 1]))
    expected = [(a + d) / 2 - r, (a + d) / 2 + r]
    np.testing.assert_allclose(linalg.eigvalsh(m), expected, atol=1e-12 * (1 + np.abs(m).max()))
