"""Constructors for the structured block matrices used by the certificates.

Everything is materialized densely; the intended scale is d <= 16 blocks of
up to a few dozen block rows.
"""

from __future__ import annotations

import numpy as np

from .linalg import matrix_power, require_square


def power_sequence(A, k: int) -> np.ndarray:
    """Two-sided power sequence: A^k for k >= 0, (A*)^|k| for k < 0."""
    M = require_square(A)
    if k >= 0:
        return matrix_power(M, k)
    return matrix_power(M, -k).conj().T


def block_shift(A, n: int) -> np.ndarray:
    """(n+1) x (n+1) block matrix with A repeated on the first subdiagonal.

    Nilpotent of degree n+1, with operator norm equal to ||A||.
    """
    M = require_square(A)
    if n < 1:
        raise ValueError("block_shift requires n >= 1")
    d = M.shape[0]
    out = np.zeros(((n + 1) * d, (n + 1) * d), dtype=np.complex128)
    for j in range(n):
        out[(j + 1) * d:(j + 2) * d, j * d:(j + 1) * d] = M
    return out


def block_toeplitz(coefficients, n_blocks: int, enforce_hermitian: bool = False) -> np.ndarray:
    """Assemble the block-Toeplitz matrix with (r, s) block = coefficients[r - s].

    Missing offsets default to the zero block. With ``enforce_hermitian``,
    the block at -j is overwritten by the adjoint of the block at j.
    """
    if n_blocks < 1:
        raise ValueError("need at least one block row")
    coeffs = {}
    d = None
    for j, blk in coefficients.items():
        B = require_square(blk)
        if d is None:
            d = B.shape[0]
        elif B.shape[0] != d:
            raise ValueError("all blocks must share one dimension")
        coeffs[int(j)] = B
    if d is None:
        raise ValueError("at least one coefficient block is required")
    if enforce_hermitian:
        for j in [j for j in coeffs if j > 0]:
            coeffs[-j] = coeffs[j].conj().T
        if 0 in coeffs:
            coeffs[0] = (coeffs[0] + coeffs[0].conj().T) / 2

    zero = np.zeros((d, d), dtype=np.complex128)
    out = np.zeros((n_blocks * d, n_blocks * d), dtype=np.complex128)
    for r in range(n_blocks):
        for s in range(n_blocks):
            out[r * d:(r + 1) * d, s * d:(s + 1) * d] = coeffs.get(r - s, zero)
    return out


def tridiagonal_toeplitz(A, n: int) -> np.ndarray:
    """Hermitian block tridiagonal with 2I diagonal, A below and A* above.

    Positivity of this family for every n certifies numerical radius <= 1.
    """
    M = require_square(A)
    if n < 1:
        raise ValueError("need n >= 1")
    d = M.shape[0]
    return block_toeplitz({0: 2 * np.eye(d), 1: M, -1: M.conj().T}, n + 1)


def power_toeplitz(A, n: int) -> np.ndarray:
    """Hermitian block Toeplitz with 2I diagonal and A^k / (A*)^k off-diagonals."""
    M = require_square(A)
    if n < 1:
        raise ValueError("need n >= 1")
    d = M.shape[0]
    coeffs = {0: 2 * np.eye(d)}
    for j in range(1, n + 1):
        coeffs[j] = matrix_power(M, j)
        coeffs[-j] = coeffs[j].conj().T
    return block_toeplitz(coeffs, n + 1)


def unit_diagonal_power_toeplitz(A, n: int) -> np.ndarray:
    """Like :func:`power_toeplitz` but with identity diagonal blocks.

    Positivity of this family for every n certifies operator norm <= 1.
    """
    M = require_square(A)
    if n < 1:
        raise ValueError("need n >= 1")
    d = M.shape[0]
    coeffs = {0: np.eye(d, dtype=np.complex128)}
    for j in range(1, n + 1):
        coeffs[j] = matrix_power(M, j)
        coeffs[-j] = coeffs[j].conj().T
    return block_toeplitz(coeffs, n + 1)


def fejer_toeplitz(A, N: int) -> np.ndarray:
    """(N+1) x (N+1) block Hermitian Toeplitz with triangularly weighted powers.

    First block row (2I, N A*, (N-1) A*^2, ..., A*^N), everything scaled
    by 1/(N+1).
    """
    M = require_square(A)
    if N < 1:
        raise ValueError("need N >= 1")
    d = M.shape[0]
    coeffs = {0: 2 * np.eye(d)}
    for j in range(1, N + 1):
        coeffs[j] = (N + 1 - j) * matrix_power(M, j)
        coeffs[-j] = coeffs[j].conj().T
    return block_toeplitz(coeffs, N + 1) / (N + 1)


def principal_submatrix(M, indices) -> np.ndarray:
    """M[indices, indices] for a strictly increasing index list."""
    A = require_square(M)
    idx = list(indices)
    if not idx:
        raise ValueError("index list must be nonempty")
    if any(j < 0 or j >= A.shape[0] for j in idx):
        raise IndexError("index out of range")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError("indices must be strictly increasing")
    sel = np.array(idx)
    return A[np.ix_(sel, sel)]


def block_indices(blocks, d: int):
    """Expand block positions into element indices for blocks of size d."""
    out = []
    for b in blocks:
        out.extend(range(b * d, (b + 1) * d))
    return out
