import numpy as np
import pytest

from numrad.radius import numerical_radius, operator_norm


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_complex(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_hermitian(rng, d):
    G = random_complex(rng, d)
    return (G + G.conj().T) / 2


def random_psd(rng, d):
    G = random_complex(rng, d)
    return G.conj().T @ G


def scaled_to_norm(rng, d, target):
    A = random_complex(rng, d)
    return A * (target / operator_norm(A))


def scaled_to_radius(rng, d, target):
    A = random_complex(rng, d)
    return A * (target / numerical_radius(A).value)


def shift_matrix(d):
    S = np.zeros((d, d), dtype=complex)
    for i in range(d - 1):
        S[i + 1, i] = 1.0
    return S


def char_poly_eigs(M):
    """Eigenvalues from the characteristic polynomial, via Faddeev-LeVerrier
    coefficients and companion-matrix roots. Independent of the Jacobi path."""
    A = np.asarray(M, dtype=complex)
    d = A.shape[0]
    coeffs = [1.0 + 0j]
    Mk = np.zeros_like(A)
    for k in range(1, d + 1):
        Mk = A @ Mk + coeffs[-1] * np.eye(d)
        coeffs.append(-np.trace(A @ Mk) / k)
    roots = np.roots(np.array(coeffs))
    return np.sort(roots.real)


def power_iteration_norm(M, iters=2000, seed=0):
    """Largest singular value by power iteration on M* M."""
    A = np.asarray(M, dtype=complex)
    g = np.random.default_rng(seed)
    x = g.standard_normal(A.shape[1]) + 1j * g.standard_normal(A.shape[1])
    x /= np.linalg.norm(x)
    B = A.conj().T @ A
    lam = 0.0
    for _ in range(iters):
        y = B @ x
        lam = np.linalg.norm(y)
        if lam == 0.0:
            return 0.0
        x = y / lam
    return float(np.sqrt(lam))
