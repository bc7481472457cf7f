"""Finite-horizon unitary dilations, 2-dilation verification and the
polynomial sup-norm inequality for contractions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .blockforms import power_toeplitz
from .linalg import (
    DEFAULT_TOL,
    PositivityCertificate,
    hermitian_eig,
    is_psd,
    matrix_power,
    require_square,
)
from .radius import operator_norm


def _defect_sqrt(G: np.ndarray) -> np.ndarray:
    """PSD square root of a defect I - B*B, flooring rounding-level
    eigenvalues to exact zero so unitary inputs give a zero defect."""
    w, V = hermitian_eig(G)
    floor = 1e-13 * max(1.0, float(abs(w[-1])))
    root = np.where(w > floor, np.sqrt(np.clip(w, 0.0, None)), 0.0)
    S = (V * root) @ V.conj().T
    return (S + S.conj().T) / 2


@dataclass
class DilationBundle:
    U: np.ndarray  # unitary on (horizon+1) blocks
    embed_dim: int  # number of blocks
    horizon: int
    source: np.ndarray

    def compression(self, k: int) -> np.ndarray:
        """Top-left block of U^k."""
        d = self.source.shape[0]
        return matrix_power(self.U, k)[:d, :d]


def build_unitary_dilation(A, horizon: int, tol: float = DEFAULT_TOL) -> DilationBundle:
    """Block companion unitary U with A^k = P U^k P on the first block,
    for every k up to the horizon.

    Layout on (horizon+1) block rows: A in the corner, the defect
    (I - A*A)^{1/2} below it, an identity chain down the subdiagonal, and
    the last block column carrying (I - AA*)^{1/2} and -A*.
    """
    M = require_square(A)
    if horizon < 1:
        raise ValueError("need horizon >= 1")
    nrm = operator_norm(M)
    if nrm > 1.0 + 1e-9:
        raise ValueError(f"operator norm {nrm:.12g} exceeds 1; not a contraction")
    d = M.shape[0]
    n = horizon
    eye = np.eye(d)
    defect = _defect_sqrt(eye - M.conj().T @ M)
    defect_adj = _defect_sqrt(eye - M @ M.conj().T)

    U = np.zeros(((n + 1) * d, (n + 1) * d), dtype=np.complex128)
    U[0:d, 0:d] = M
    U[d:2 * d, 0:d] = defect
    for j in range(1, n):
        U[(j + 1) * d:(j + 2) * d, j * d:(j + 1) * d] = eye
    U[0:d, n * d:] = defect_adj
    U[d:2 * d, n * d:] = -M.conj().T

    resid = operator_norm(U.conj().T @ U - np.eye((n + 1) * d))
    if resid > 1e-9:
        raise RuntimeError(f"unitarity residual {resid:.3e} above tolerance")
    return DilationBundle(U=U, embed_dim=n + 1, horizon=n, source=M)


@dataclass
class TwoDilationReport:
    identity_residuals: list[float]
    identity_ok: bool
    averaging_idempotent_ok: bool  # E = E^2/(n+1), exactly
    gamma_match_residual: float
    gamma_certificate: PositivityCertificate

    @property
    def all_ok(self) -> bool:
        return (
            self.identity_ok
            and self.averaging_idempotent_ok
            and self.gamma_certificate.is_positive
        )


def verify_two_dilation(A, U, V, horizon: int, tol: float = 1e-7) -> TwoDilationReport:
    """Check A^k = 2 V* U^k V for k <= horizon and rebuild the positivity
    argument behind it.

    The all-identity block matrix E satisfies E = E^2/(n+1) and is
    positive; conjugating 2E by diag(I, U, ..., U^n) and compressing by
    diag(V, ..., V) must reproduce the power-Toeplitz certificate matrix,
    which is positive regardless of whether the identity itself holds.
    """
    M = require_square(A)
    U = require_square(U)
    V = np.asarray(V, dtype=np.complex128)
    n = horizon
    if n < 1:
        raise ValueError("need horizon >= 1")
    dU = U.shape[0]
    if operator_norm(U.conj().T @ U - np.eye(dU)) > 1e-9:
        raise ValueError("U is not unitary within tolerance")
    if V.shape[0] != dU or V.shape[1] != M.shape[0]:
        raise ValueError("V must map the A space into the U space")
    if operator_norm(V.conj().T @ V - np.eye(M.shape[0])) > 1e-9:
        raise ValueError("V is not an isometry within tolerance")

    residuals = []
    for k in range(1, n + 1):
        residuals.append(
            operator_norm(matrix_power(M, k) - 2.0 * V.conj().T @ matrix_power(U, k) @ V)
        )
    identity_ok = all(r <= tol for r in residuals)

    ones = np.ones((n + 1, n + 1))
    E = np.kron(ones, np.eye(dU))
    idempotent_ok = bool(np.array_equal(E, (E @ E) / (n + 1)))

    D = np.zeros(((n + 1) * dU, (n + 1) * dU), dtype=np.complex128)
    for j in range(n + 1):
        D[j * dU:(j + 1) * dU, j * dU:(j + 1) * dU] = matrix_power(U, j)
    conjugated = 2.0 * D @ E @ D.conj().T
    Vbar = np.kron(np.eye(n + 1), V)
    compressed = Vbar.conj().T @ conjugated @ Vbar

    gamma_resid = float(np.abs(compressed - power_toeplitz(M, n)).max())
    return TwoDilationReport(
        identity_residuals=residuals,
        identity_ok=identity_ok,
        averaging_idempotent_ok=idempotent_ok,
        gamma_match_residual=gamma_resid,
        gamma_certificate=is_psd(compressed, DEFAULT_TOL),
    )


@dataclass(frozen=True)
class Polynomial:
    """Coefficients b_0..b_m, constant term first."""

    coefficients: tuple

    def __init__(self, coefficients):
        coeffs = tuple(complex(c) for c in coefficients)
        if not coeffs:
            raise ValueError("need at least one coefficient")
        if any(not (math.isfinite(c.real) and math.isfinite(c.imag)) for c in coeffs):
            raise ValueError("non-finite coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z: complex) -> complex:
        out = 0j
        for c in reversed(self.coefficients):
            out = out * z + c
        return out

    def of_matrix(self, A: np.ndarray) -> np.ndarray:
        d = A.shape[0]
        out = np.zeros((d, d), dtype=np.complex128)
        for c in reversed(self.coefficients):
            out = out @ A + c * np.eye(d)
        return out

    def derivative_weight(self) -> float:
        """Sum of k |b_k|, a circle Lipschitz bound for |p(e^{it})|."""
        return float(sum(k * abs(c) for k, c in enumerate(self.coefficients)))


@dataclass
class VonNeumannReport:
    polynomial_norm: float
    circle_sup_estimate: float
    lipschitz_pad: float
    holds: bool


def von_neumann_check(A, p: Polynomial, samples: int = 4096) -> VonNeumannReport:
    """Check ||p(A)|| <= sup_{|z|=1} |p(z)| for a contraction A.

    The sup is sampled on the circle and padded by a Lipschitz term so the
    sampled bound is sound for the inequality direction.
    """
    M = require_square(A)
    nrm = operator_norm(M)
    if nrm > 1.0 + 1e-9:
        raise ValueError(f"operator norm {nrm:.12g} exceeds 1; not a contraction")
    z = np.exp(2j * np.pi * np.arange(samples) / samples)
    vals = np.zeros(samples, dtype=np.complex128)
    for c in reversed(p.coefficients):
        vals = vals * z + c
    sup = float(np.abs(vals).max())
    pad = p.derivative_weight() * (2.0 * math.pi / samples)
    norm_p = operator_norm(p.of_matrix(M))
    return VonNeumannReport(
        polynomial_norm=norm_p,
        circle_sup_estimate=sup,
        lipschitz_pad=pad,
        holds=norm_p <= sup + pad + 1e-6,
    )
