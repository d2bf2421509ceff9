import itertools
import math

import numpy as np
import pytest

from lunmeb import (
    TOLERANCES,
    Tolerances,
    combination,
    combine,
    determinant,
    fourier_matrix,
    gram_matrix,
    hermitian_eigenvalues,
    nullspace,
    tensor_product,
)


def basis_ket(dim, index):
    vec = np.zeros(dim, dtype=complex)
    vec[index] = 1.0
    return vec


def brute_force_determinant(matrix):
    """Permutation-expansion determinant, independent of the library path."""
    n = matrix.shape[0]
    total = 0.0 + 0.0j
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        # parity via cycle decomposition
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = sign
        for i in range(n):
            term = term * matrix[i, perm[i]]
        total += term
    return total


class TestTolerances:
    def test_defaults(self):
        tol = Tolerances()
        assert tol.rank_tol == 1e-10
        assert tol.unit_tol == 1e-12
        assert tol.psd_tol == 1e-10

    @pytest.mark.parametrize("bad", [0.0, -1e-6, 1e-3, 0.5])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ValueError):
            Tolerances(rank_tol=bad)


class TestTensorProduct:
    def test_basis_indices(self):
        assert np.allclose(tensor_product(basis_ket(2, 0), basis_ket(2, 1)), basis_ket(4, 1))
        assert np.allclose(tensor_product(basis_ket(2, 1), basis_ket(2, 1)), basis_ket(4, 3))

    def test_bilinearity(self):
        alpha, beta = 0.3 + 0.1j, -0.5 + 2.0j
        out = tensor_product(alpha * basis_ket(2, 0), beta * basis_ket(2, 0))
        assert out[0] == pytest.approx(alpha * beta)
        assert np.allclose(out[1:], 0.0)

    def test_norm_multiplicativity(self, rng):
        for _ in range(20):
            a = rng.normal(size=4) + 1j * rng.normal(size=4)
            b = rng.normal(size=5) + 1j * rng.normal(size=5)
            lhs = np.linalg.norm(tensor_product(a, b))
            rhs = np.linalg.norm(a) * np.linalg.norm(b)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, rhs)


class TestGramMatrix:
    def test_orthonormal_family(self):
        vs = [basis_ket(3, i) for i in range(3)]
        assert np.allclose(gram_matrix(vs), np.eye(3))

    def test_repeated_unit_vector(self):
        v = np.array([1.0, 1.0j]) / math.sqrt(2)
        assert np.allclose(gram_matrix([v, v]), np.ones((2, 2)))

    def test_qubit_class_pair(self):
        # the two shift labels of the first qubit class are exactly orthonormal
        c0, c1 = math.sqrt(0.3), math.sqrt(0.7)
        psi_00 = np.array([c0, 0, 0, c1], dtype=complex)
        psi_01 = np.array([0, c1, c0, 0], dtype=complex)
        assert np.allclose(gram_matrix([psi_00, psi_01]), np.eye(2), atol=1e-15)

    def test_hermitian_psd(self, rng):
        for _ in range(10):
            vs = rng.normal(size=(4, 6)) + 1j * rng.normal(size=(4, 6))
            g = gram_matrix(list(vs))
            assert np.allclose(g, g.conj().T)
            assert np.linalg.eigvalsh(g).min() >= -TOLERANCES.psd_tol

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            gram_matrix([basis_ket(2, 0), basis_ket(3, 0)])


class TestHermitianEigenvalues:
    def test_diag_plus_minus(self):
        w, _ = hermitian_eigenvalues(np.diag([1.0, -1.0]))
        assert np.allclose(w, [-1.0, 1.0])

    def test_identity(self):
        w, _ = hermitian_eigenvalues(np.eye(3))
        assert np.allclose(w, [1.0, 1.0, 1.0])

    def test_rank_one_projector(self, rng):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        v /= np.linalg.norm(v)
        w, _ = hermitian_eigenvalues(np.outer(v, v.conj()))
        assert np.allclose(w, [0.0, 0.0, 0.0, 1.0], atol=1e-12)

    def test_reconstruction(self, rng):
        z = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        m = z + z.conj().T
        w, q = hermitian_eigenvalues(m)
        rebuilt = q @ np.diag(w) @ q.conj().T
        assert np.linalg.norm(m - rebuilt) <= 1e-9 * np.linalg.norm(m)

    def test_conjugation_invariance(self, rng):
        # unitary built by orthonormalizing a random operator combination
        z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        fc = combination(3, z / np.linalg.norm(z))
        q, _ = np.linalg.qr(combine(fc).matrix)
        z2 = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        a = z2 + z2.conj().T
        w_a, _ = hermitian_eigenvalues(a)
        w_b, _ = hermitian_eigenvalues(q @ a @ q.conj().T)
        assert np.abs(w_a - w_b).max() <= 1e-9

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            hermitian_eigenvalues(np.zeros((2, 3)))


class TestNullspace:
    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_fourier_matrix_has_trivial_kernel(self, d):
        dim, _ = nullspace(fourier_matrix(d))
        assert dim == 0

    def test_zero_matrix(self):
        dim, basis = nullspace(np.zeros((4, 4)))
        assert dim == 4
        assert np.allclose(basis.conj().T @ basis, np.eye(4))

    def test_all_real_three_level_system(self):
        # the +/-1 pattern of the three-level extension equations
        m = np.array([[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0]])
        dim, _ = nullspace(m)
        assert dim == 0

    def test_kernel_vectors_are_annihilated(self, rng):
        a = rng.normal(size=(3, 6)) + 1j * rng.normal(size=(3, 6))
        dim, basis = nullspace(a)
        assert dim == 3
        scale = np.linalg.norm(a)
        for col in basis.T:
            assert np.linalg.norm(a @ col) <= TOLERANCES.rank_tol * scale

    def test_rank_plus_kernel_dimension(self, rng):
        for cols in [1, 4, 9, 16, 25, 36]:
            rows = int(rng.integers(1, cols + 3))
            inner = int(rng.integers(1, min(rows, cols) + 1))
            left = rng.normal(size=(rows, inner)) + 1j * rng.normal(size=(rows, inner))
            right = rng.normal(size=(inner, cols)) + 1j * rng.normal(size=(inner, cols))
            m = left @ right
            dim, basis = nullspace(m)
            s = np.linalg.svd(m, compute_uv=False)
            rank = int(np.sum(s > TOLERANCES.rank_tol * s[0]))
            assert dim + rank == cols
            assert basis.shape == (cols, dim)


class TestDeterminant:
    def test_two_level_fourier_by_hand(self):
        # cofactor expansion of [[1, 1], [1, -1]] gives -2
        f2 = fourier_matrix(2)
        assert np.allclose(f2, [[1, 1], [1, -1]])
        assert determinant(f2) == pytest.approx(-2.0)

    def test_identity(self):
        assert determinant(np.eye(5)) == pytest.approx(1.0)

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_fourier_magnitude(self, d):
        f = fourier_matrix(d)
        expected = d ** (d / 2)
        assert abs(determinant(f)) == pytest.approx(expected, rel=1e-10)
        assert abs(brute_force_determinant(f)) == pytest.approx(expected, rel=1e-10)

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            determinant(np.zeros((2, 3)))
