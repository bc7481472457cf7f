import numpy as np
import pytest

from numrad.dilation import (
    Polynomial,
    build_unitary_dilation,
    verify_two_dilation,
    von_neumann_check,
)
from numrad.linalg import matrix_power
from numrad.radius import operator_norm

from conftest import random_complex, scaled_to_norm, scaled_to_radius, shift_matrix


class TestUnitaryDilation:
    def test_unitary_input(self, rng):
        Q, _ = np.linalg.qr(random_complex(rng, 3))
        bundle = build_unitary_dilation(Q, 4)
        for k in range(1, 5):
            assert operator_norm(bundle.compression(k) - matrix_power(Q, k)) <= 1e-7

    def test_scalar_half(self):
        bundle = build_unitary_dilation(np.array([[0.5]]), 3)
        assert bundle.U.shape == (4, 4)
        for k in range(1, 4):
            assert abs(bundle.compression(k)[0, 0] - 0.5**k) <= 1e-9

    def test_nilpotent(self):
        A = np.array([[0.0, 1.0], [0.0, 0.0]])
        bundle = build_unitary_dilation(A, 2)
        assert operator_norm(bundle.compression(1) - A) <= 1e-7
        assert operator_norm(bundle.compression(2)) <= 1e-7  # A^2 = 0

    def test_random_contractions(self, rng):
        for _ in range(8):
            d = int(rng.integers(1, 5))
            A = scaled_to_norm(rng, d, float(rng.uniform(0.2, 1.0)))
            horizon = int(rng.integers(1, 7))
            bundle = build_unitary_dilation(A, horizon)
            m = (horizon + 1) * d
            assert operator_norm(bundle.U.conj().T @ bundle.U - np.eye(m)) <= 1e-9
            assert operator_norm(bundle.U @ bundle.U.conj().T - np.eye(m)) <= 1e-9
            for k in range(1, horizon + 1):
                assert operator_norm(bundle.compression(k) - matrix_power(A, k)) <= 1e-7

    def test_rejects_expansion(self):
        with pytest.raises(ValueError):
            build_unitary_dilation(1.1 * np.eye(2), 2)

    def test_power_bound_on_radius_one_corpus(self, rng):
        for d in range(2, 7):
            A = scaled_to_radius(rng, d, 1.0)
            for m in range(1, 21):
                assert operator_norm(matrix_power(A, m)) <= 2.0 + 1e-6


class TestTwoDilation:
    def test_negative_control(self):
        # the doubled compression of the identity is 2I, never 0
        A = np.zeros((2, 2))
        U = np.eye(4)
        V = np.vstack([np.eye(2), np.zeros((2, 2))])
        rep = verify_two_dilation(A, U, V, 3)
        assert not rep.identity_ok
        assert rep.averaging_idempotent_ok
        assert rep.gamma_certificate.is_positive

    def test_block_average_idempotent(self, rng):
        A = scaled_to_norm(rng, 2, 0.5)
        bundle = build_unitary_dilation(A, 3)
        V = np.vstack([np.eye(2), np.zeros((6, 2))])
        rep = verify_two_dilation(np.zeros((2, 2)), bundle.U, V, 3)
        assert rep.averaging_idempotent_ok

    def test_doubled_nilpotent_pair(self, rng):
        # B^2 = 0 makes A = 2B a genuine doubled compression of any
        # unitary dilation of B
        B = np.array([[0.0, 0.5], [0.0, 0.0]])
        horizon = 4
        bundle = build_unitary_dilation(B, horizon)
        V = np.vstack([np.eye(2), np.zeros((horizon * 2, 2))])
        A = 2 * B
        rep = verify_two_dilation(A, bundle.U, V, horizon)
        assert rep.identity_ok
        assert rep.gamma_match_residual <= 1e-7
        assert rep.gamma_certificate.is_positive
        assert rep.all_ok

    def test_gamma_positivity_holds_without_identity(self, rng):
        # arbitrary contraction: identity fails but the compressed
        # conjugation stays positive
        A = scaled_to_norm(rng, 2, 0.8)
        bundle = build_unitary_dilation(A, 5)
        V = np.vstack([np.eye(2), np.zeros((10, 2))])
        rep = verify_two_dilation(2 * A, bundle.U, V, 5)
        assert rep.gamma_certificate.is_positive

    def test_rejects_non_unitary(self, rng):
        A = np.zeros((2, 2))
        with pytest.raises(ValueError):
            verify_two_dilation(A, 0.5 * np.eye(4), np.vstack([np.eye(2), np.zeros((2, 2))]), 2)

    def test_rejects_non_isometry(self):
        with pytest.raises(ValueError):
            verify_two_dilation(np.zeros((2, 2)), np.eye(4), 0.5 * np.vstack([np.eye(2), np.zeros((2, 2))]), 2)


class TestVonNeumann:
    def test_linear(self, rng):
        A = scaled_to_norm(rng, 3, 0.9)
        rep = von_neumann_check(A, Polynomial([0.0, 1.0]))
        assert rep.holds
        assert abs(rep.polynomial_norm - 0.9) <= 1e-8

    def test_shift_powers(self):
        S = shift_matrix(4)
        for n, expected in ((1, 1.0), (2, 1.0), (3, 1.0), (4, 0.0)):
            p = Polynomial([0.0] * n + [1.0])
            rep = von_neumann_check(S, p)
            assert rep.holds
            assert abs(rep.polynomial_norm - expected) <= 1e-9

    def test_random_degree_five(self, rng):
        for _ in range(25):
            A = scaled_to_norm(rng, int(rng.integers(1, 5)), float(rng.uniform(0.1, 1.0)))
            coeffs = rng.standard_normal(6) + 1j * rng.standard_normal(6)
            assert von_neumann_check(A, Polynomial(coeffs)).holds

    def test_rejects_expansion(self):
        with pytest.raises(ValueError):
            von_neumann_check(2 * np.eye(2), Polynomial([1.0]))

    def test_polynomial_validation(self):
        with pytest.raises(ValueError):
            Polynomial([])
        with pytest.raises(ValueError):
            Polynomial([np.nan])
