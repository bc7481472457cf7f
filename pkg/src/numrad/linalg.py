"""Dense complex linear algebra on top of the cyclic-Jacobi eigensolver.

All operations are pure functions; inputs are never mutated and every
returned array is freshly allocated, so values are safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .kernel import jacobi_eigh

DEFAULT_TOL = 1e-9


class NotPositiveSemidefinite(ValueError):
    """Raised when an operation requires a PSD matrix and the input is not."""


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # unitary, columns match eigenvalues


@dataclass(frozen=True)
class PositivityCertificate:
    """Verdict for a claim 'M is positive semidefinite'.

    ``is_positive`` holds exactly when
    ``min_eigenvalue >= -tolerance * max(1, matrix_norm)``.
    """

    is_positive: bool
    min_eigenvalue: float
    matrix_norm: float
    tolerance: float


def as_matrix(M) -> np.ndarray:
    """Validate and convert to a fresh complex 2-D array."""
    A = np.array(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise ValueError(f"expected a 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def require_square(M) -> np.ndarray:
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A


def hermitian_part(M) -> np.ndarray:
    A = require_square(M)
    return (A + A.conj().T) / 2


def hermitian_eig(M) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix (symmetrized first).

    The reconstruction ``V diag(w) V*`` agrees with the symmetrized input
    to about 1e-13 relative; eigenvalues come back ascending.
    """
    H = hermitian_part(M)
    w, V = jacobi_eigh(H)
    return EigenDecomposition(w, V)


def is_psd(M, tol: float = DEFAULT_TOL) -> PositivityCertificate:
    """Certify positive semidefiniteness of a (symmetrized) square matrix."""
    w, _ = hermitian_eig(M)
    min_eig = float(w[0])
    norm = float(max(abs(w[0]), abs(w[-1])))
    return PositivityCertificate(
        is_positive=min_eig >= -tol * max(1.0, norm),
        min_eigenvalue=min_eig,
        matrix_norm=norm,
        tolerance=tol,
    )


def psd_sqrt(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Hermitian PSD square root.

    Eigenvalues in [-tol * norm, 0) are clipped to zero; anything more
    negative raises :class:`NotPositiveSemidefinite`.
    """
    w, V = hermitian_eig(M)
    norm = max(abs(w[0]), abs(w[-1]))
    if w[0] < -tol * max(1.0, norm):
        raise NotPositiveSemidefinite(
            f"matrix has eigenvalue {w[0]:.3e} below -tol*norm = {-tol * max(1.0, norm):.3e}"
        )
    root = np.sqrt(np.clip(w, 0.0, None))
    S = (V * root) @ V.conj().T
    return (S + S.conj().T) / 2


def gram_factor(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    """A factor L with L* L = M for PSD M (the Hermitian square root)."""
    return psd_sqrt(M, tol=tol)


def polar_decompose(X, tol: float = DEFAULT_TOL):
    """Polar decomposition X = U P with U unitary and P = (X* X)^(1/2) PSD.

    For singular X the unitary factor is completed on the kernel of P by
    orthonormal basis extension, so U is always a full unitary.
    """
    A = require_square(X)
    d = A.shape[0]
    w, V = hermitian_eig(A.conj().T @ A)
    sigma = np.sqrt(np.clip(w, 0.0, None))
    P = (V * sigma) @ V.conj().T
    P = (P + P.conj().T) / 2

    rank_tol = 1e-10 * max(1.0, float(sigma[-1]))
    cols = []
    kernel_idx = []
    for k in range(d):
        if sigma[k] > rank_tol:
            cols.append((A @ V[:, k]) / sigma[k])
        else:
            cols.append(None)
            kernel_idx.append(k)
    basis = [c for c in cols if c is not None]
    for k in kernel_idx:
        cols[k] = _complete_orthonormal(basis, d)
        basis.append(cols[k])
    W = np.column_stack(cols)
    U = W @ V.conj().T
    return U, P


def matrix_power(A, k: int) -> np.ndarray:
    """A^k for integer k >= 0, with A^0 = I."""
    M = require_square(A)
    if k < 0:
        raise ValueError("matrix_power requires k >= 0")
    return np.linalg.matrix_power(M, k)


def _complete_orthonormal(basis, dim: int, candidates=None) -> np.ndarray:
    """One unit vector orthogonal to ``basis``, drawn from candidate columns
    (canonical basis by default)."""
    if candidates is None:
        candidates = [np.eye(dim, dtype=np.complex128)[:, i] for i in range(dim)]
    for cand in candidates:
        u = cand.astype(np.complex128).copy()
        for b in basis:
            u -= np.vdot(b, u) * b
        for b in basis:  # second pass for numerical orthogonality
            u -= np.vdot(b, u) * b
        nrm = np.linalg.norm(u)
        if nrm > 1e-6:
            return u / nrm
    raise RuntimeError("orthonormal completion failed")
