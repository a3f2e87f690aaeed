"""Tests for the dense linear-algebra kernels.

The eigensolver is checked against numpy.linalg.eigh (an independent LAPACK
route) and against direct reconstruction residuals; the two matrix
exponential routes cross-check each other.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from entrodyn.errors import DomainError, ShapeError
from entrodyn.linalg import (
    EigenDecomposition,
    adjoint,
    expm_hermitian,
    expm_oracle,
    frobenius,
    hermitian_eig,
    identity,
    kron,
    matmul,
    partial_trace,
    trace,
)
from entrodyn.sampling import random_hermitian, rng_for
from entrodyn.systems import pauli

SX, SY, SZ = pauli()


class TestAdjoint:
    def test_identity_self_adjoint(self):
        np.testing.assert_array_equal(adjoint(identity(2)), identity(2))

    def test_sigma_y_hermitian(self):
        np.testing.assert_array_equal(adjoint(SY), SY)

    def test_raising_lowering_swap(self):
        raising = np.array([[0, 1], [0, 0]], dtype=complex)
        lowering = np.array([[0, 0], [1, 0]], dtype=complex)
        np.testing.assert_array_equal(adjoint(raising), lowering)

    @given(st.integers(0, 2**32 - 1), st.integers(1, 12))
    def test_involution(self, seed, dim):
        rng = rng_for(seed)
        m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        np.testing.assert_array_equal(adjoint(adjoint(m)), m)


class TestMatmul:
    def test_identity_neutral(self):
        m = np.array([[1, 2j], [3, 4]], dtype=complex)
        np.testing.assert_array_equal(matmul(identity(2), m), m)

    def test_sigma_x_squared(self):
        # by hand: [[0,1],[1,0]] @ [[0,1],[1,0]] = [[1,0],[0,1]]
        np.testing.assert_allclose(matmul(SX, SX), identity(2), atol=0)

    def test_sigma_x_sigma_y(self):
        # by hand: [[0,1],[1,0]] @ [[0,-i],[i,0]] = [[i,0],[0,-i]] = i sigma_z
        np.testing.assert_allclose(matmul(SX, SY), 1j * SZ, atol=0)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            matmul(np.ones((2, 3)), np.ones((2, 2)))


class TestKron:
    def test_identity_blocks(self):
        np.testing.assert_array_equal(kron(identity(2), identity(2)), identity(4))

    def test_diagonal_weights(self):
        # by hand: diag(p1, p2) ⊗ diag(q1, q2) = diag(p1 q1, p1 q2, p2 q1, p2 q2)
        left = np.diag([0.75, 0.25]).astype(complex)
        right = np.diag([0.6, 0.4]).astype(complex)
        expected = np.diag([0.45, 0.3, 0.15, 0.1]).astype(complex)
        np.testing.assert_allclose(kron(left, right), expected, atol=1e-16)

    def test_trace_multiplicative(self):
        rng = rng_for(7)
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        # independent evaluation of both sides
        lhs = complex(sum(kron(a, b)[i, i] for i in range(9)))
        rhs = complex(sum(a[i, i] for i in range(3))) * complex(sum(b[i, i] for i in range(3)))
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


class TestTrace:
    def test_identity(self):
        assert trace(identity(2)) == 2

    def test_unit_weights(self):
        assert abs(trace(np.diag([0.3, 0.7]).astype(complex)) - 1.0) < 1e-15

    def test_sigma_z_traceless(self):
        assert trace(SZ) == 0

    def test_non_square(self):
        with pytest.raises(ShapeError):
            trace(np.ones((2, 3)))

    @given(st.integers(0, 2**32 - 1), st.integers(1, 16))
    def test_cyclicity(self, seed, dim):
        rng = rng_for(seed)
        a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        b = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        lhs = trace(matmul(a, b))
        rhs = trace(matmul(b, a))
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


class TestHermitianEig:
    def test_sigma_z_splitting(self):
        w, v = hermitian_eig(SZ)  # (delta/2) sigma_z with delta = 2
        np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-15)
        # phase convention makes the columns exactly beta=(0,1) and alpha=(1,0)
        np.testing.assert_allclose(v, np.array([[0, 1], [1, 0]], dtype=complex), atol=1e-15)

    def test_degenerate_identity_subspace(self):
        w, v = hermitian_eig(identity(3))
        np.testing.assert_allclose(w, [1.0, 1.0, 1.0], atol=1e-15)
        # only the spanned subspace is promised
        np.testing.assert_allclose(v @ v.conj().T, identity(3), atol=1e-12)

    def test_reconstruction_residual(self):
        rng = rng_for(2024)
        h = random_hermitian(rng, 8)
        w, v = hermitian_eig(h)
        residual = frobenius((v * w) @ v.conj().T - h)
        assert residual <= 1e-10 * frobenius(h)

    def test_matches_lapack_eigenvalues(self):
        rng = rng_for(99)
        h = random_hermitian(rng, 12)
        w, _ = hermitian_eig(h)
        np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-11)

    def test_ascending_and_orthonormal(self):
        rng = rng_for(5)
        h = random_hermitian(rng, 10)
        w, v = hermitian_eig(h)
        assert np.all(np.diff(w) >= 0)
        assert frobenius(v.conj().T @ v - identity(10)) <= 1e-10 * 10

    def test_deterministic(self):
        rng = rng_for(11)
        h = random_hermitian(rng, 7)
        first = hermitian_eig(h)
        second = hermitian_eig(h)
        np.testing.assert_array_equal(first.eigenvalues, second.eigenvalues)
        np.testing.assert_array_equal(first.eigenvectors, second.eigenvectors)

    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_phase_convention(self):
        rng = rng_for(77)
        _, v = hermitian_eig(random_hermitian(rng, 9))
        for k in range(9):
            pivot = v[int(np.argmax(np.abs(v[:, k]))), k]
            assert abs(pivot.imag) <= 1e-15  # real-positive up to rounding
            assert pivot.real > 0.0

    def test_returns_named_tuple(self):
        out = hermitian_eig(SZ)
        assert isinstance(out, EigenDecomposition)

    @given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5, 8, 16, 32]))
    def test_reconstruction_property(self, seed, dim):
        h = random_hermitian(rng_for(seed), dim)
        w, v = hermitian_eig(h)
        assert frobenius((v * w) @ v.conj().T - h) <= 1e-10 * frobenius(h)
        assert frobenius(v.conj().T @ v - identity(dim)) <= 1e-10 * dim


class TestExpmHermitian:
    def test_zero_time(self):
        rng = rng_for(3)
        h = random_hermitian(rng, 4)
        np.testing.assert_allclose(expm_hermitian(h, 0.0), identity(4), atol=1e-14)

    def test_sigma_z_half_period(self):
        # eigenvalues ±1, so t = pi gives diag(e^{-i pi}, e^{i pi}) = -1
        np.testing.assert_allclose(expm_hermitian(SZ, np.pi), -identity(2), atol=1e-13)

    def test_cross_oracle(self):
        rng = rng_for(17)
        h = random_hermitian(rng, 6)
        lhs = expm_hermitian(h, 0.7)
        rhs = expm_oracle(-1j * h * 0.7)
        assert frobenius(lhs - rhs) <= 1e-9

    def test_unitarity(self):
        rng = rng_for(23)
        h = random_hermitian(rng, 9)
        u = expm_hermitian(h, 1.3)
        assert frobenius(u.conj().T @ u - identity(9)) <= 1e-10 * 9

    @given(st.integers(0, 2**32 - 1))
    def test_group_property(self, seed):
        rng = rng_for(seed)
        dim = int(rng.integers(2, 9))
        h = random_hermitian(rng, dim)
        t, s = rng.uniform(-3, 3, size=2)
        lhs = expm_hermitian(h, t) @ expm_hermitian(h, s)
        rhs = expm_hermitian(h, t + s)
        assert frobenius(lhs - rhs) <= 1e-9


class TestExpmOracle:
    def test_zero_matrix(self):
        np.testing.assert_allclose(expm_oracle(np.zeros((3, 3))), identity(3), atol=0)

    def test_diagonal_logs(self):
        out = expm_oracle(np.diag([np.log(2.0), 0.0]).astype(complex))
        np.testing.assert_allclose(out, np.diag([2.0, 1.0]).astype(complex), atol=1e-14)

    def test_matches_eigen_route(self):
        rng = rng_for(31)
        h = random_hermitian(rng, 5)
        t = 1.9
        assert frobenius(expm_oracle(-1j * h * t) - expm_hermitian(h, t)) <= 1e-9

    def test_non_square(self):
        with pytest.raises(ShapeError):
            expm_oracle(np.ones((2, 3)))


class TestPartialTrace:
    def test_product_reduction(self):
        rng = rng_for(41)
        rho_a = np.diag([0.2, 0.8]).astype(complex)
        u = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        rho_b = u @ u.conj().T
        rho_b /= np.trace(rho_b)
        joint = np.kron(rho_a, rho_b)
        np.testing.assert_allclose(partial_trace(joint, 2, 3, "A"), rho_a, atol=1e-12)
        np.testing.assert_allclose(partial_trace(joint, 2, 3, "B"), rho_b, atol=1e-12)

    def test_maximally_mixed(self):
        np.testing.assert_allclose(
            partial_trace(identity(4) / 4, 2, 2, "A"), identity(2) / 2, atol=0
        )

    def test_bell_reduction(self):
        # |(alpha beta - beta alpha)/sqrt(2)> expanded by hand:
        # amplitudes (0, 1, -1, 0)/sqrt(2); projector has 1/2 on the
        # (1,1), (2,2) diagonal and -1/2 on (1,2), (2,1).
        bell = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
        rho = np.outer(bell, bell.conj())
        expected = np.zeros((4, 4), dtype=complex)
        expected[1, 1] = expected[2, 2] = 0.5
        expected[1, 2] = expected[2, 1] = -0.5
        np.testing.assert_allclose(rho, expected, atol=1e-15)
        np.testing.assert_allclose(partial_trace(rho, 2, 2, "A"), identity(2) / 2, atol=1e-15)

    @given(st.integers(0, 2**32 - 1), st.sampled_from([(2, 2), (2, 3), (3, 4)]))
    def test_trace_preserved(self, seed, dims):
        dim_a, dim_b = dims
        rng = rng_for(seed)
        d = dim_a * dim_b
        m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        for keep in ("A", "B"):
            reduced = partial_trace(m, dim_a, dim_b, keep)
            assert abs(np.trace(reduced) - np.trace(m)) <= 1e-12 * max(1.0, abs(np.trace(m)))

    def test_bad_factorization(self):
        with pytest.raises(ShapeError):
            partial_trace(identity(6), 4, 2, "A")

    def test_bad_selector(self):
        with pytest.raises(ValueError):
            partial_trace(identity(4), 2, 2, "C")
