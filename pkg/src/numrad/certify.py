"""Executable positivity certificates for norm and radius bounds.

Each check builds the relevant block matrix and certifies it with
:func:`numrad.linalg.is_psd`; families over a block-count parameter n are
reported per n together with the first refuting n, if any.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .blockforms import (
    block_toeplitz,
    power_sequence,
    power_toeplitz,
    tridiagonal_toeplitz,
    unit_diagonal_power_toeplitz,
)
from .linalg import (
    DEFAULT_TOL,
    PositivityCertificate,
    hermitian_eig,
    is_psd,
    require_square,
)
from .radius import operator_norm

GRID_POSITIVITY_TOL = 1e-10
CIRCLE_ROOT_TOL = 1e-7
MAX_CONDITION = 1e12


class SingularMatrix(ValueError):
    """Raised when a required inverse does not exist within tolerance."""


# ---------------------------------------------------------------------------
# trigonometric polynomials


@dataclass(frozen=True)
class TrigPolynomial:
    """Finitely supported coefficient sequence c_{-N..N}, scalar or matrix valued."""

    coefficients: dict

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", {int(j): c for j, c in self.coefficients.items()}
        )

    @property
    def half_degree(self) -> int:
        return max((abs(j) for j in self.coefficients), default=0)

    @property
    def is_operator(self) -> bool:
        return any(isinstance(c, np.ndarray) for c in self.coefficients.values())

    def coeff(self, j: int):
        c = self.coefficients.get(j)
        if c is not None:
            return c
        if self.is_operator:
            d = self.block_dim
            return np.zeros((d, d), dtype=np.complex128)
        return 0j

    @property
    def block_dim(self) -> int:
        for c in self.coefficients.values():
            if isinstance(c, np.ndarray):
                return c.shape[0]
        return 1

    def hermitian_symmetric(self, tol: float = 1e-12) -> bool:
        scale = max(1.0, self.weight())
        for j in range(self.half_degree + 1):
            a, b = self.coeff(j), self.coeff(-j)
            diff = np.conj(np.atleast_2d(a)).T - np.atleast_2d(b)
            if np.abs(diff).max() > tol * scale:
                return False
        return True

    def weight(self) -> float:
        """Sum of coefficient magnitudes (operator norms in the matrix case)."""
        total = 0.0
        for c in self.coefficients.values():
            total += operator_norm(c) if isinstance(c, np.ndarray) else abs(c)
        return total

    def eval(self, t: float):
        """Value at e^{it}."""
        if self.is_operator:
            d = self.block_dim
            out = np.zeros((d, d), dtype=np.complex128)
        else:
            out = 0j
        for j, c in self.coefficients.items():
            out = out + c * cmath.exp(1j * j * t)
        return out

    @classmethod
    def fejer_kernel(cls, N: int) -> "TrigPolynomial":
        """Positive kernel with triangular weights (N+1-|j|)/(N+1)."""
        if N < 0:
            raise ValueError("need N >= 0")
        return cls({j: complex(N + 1 - abs(j)) / (N + 1) for j in range(-N, N + 1)})


# ---------------------------------------------------------------------------
# certificate families


@dataclass
class CertificateReport:
    claim: str
    tested_n: list[int] = field(default_factory=list)
    verdicts: list[PositivityCertificate] = field(default_factory=list)
    refuting_n: int | None = None

    @property
    def overall(self) -> bool:
        return all(v.is_positive for v in self.verdicts)

    def rows(self):
        for n, v in zip(self.tested_n, self.verdicts):
            yield {
                "claim": self.claim,
                "n": n,
                "min_eigenvalue": v.min_eigenvalue,
                "verdict": v.is_positive,
                "tolerance": v.tolerance,
            }


def _family_report(claim, build, n_max, tol, stop_at_refutation) -> CertificateReport:
    report = CertificateReport(claim=claim)
    for n in range(1, n_max + 1):
        cert = is_psd(build(n), tol)
        report.tested_n.append(n)
        report.verdicts.append(cert)
        if not cert.is_positive and report.refuting_n is None:
            report.refuting_n = n
            if stop_at_refutation:
                break
    return report


def norm_block2_certificate(A, tol: float = DEFAULT_TOL) -> PositivityCertificate:
    """Certificate for [[I, A*], [A, I]] >= 0, equivalent to ||A|| <= 1."""
    M = require_square(A)
    d = M.shape[0]
    block = np.block([[np.eye(d), M.conj().T], [M, np.eye(d)]])
    return is_psd(block, tol)


def norm_chain_report(
    A, n: int, tol: float = DEFAULT_TOL, stop_at_refutation: bool = True
) -> CertificateReport:
    """Certificates for the identity-diagonal power Toeplitz family, k = 1..n."""
    M = require_square(A)
    return _family_report(
        "norm_power_toeplitz", lambda k: unit_diagonal_power_toeplitz(M, k), n, tol, stop_at_refutation
    )


def radius_tridiagonal_report(
    A, n: int, tol: float = DEFAULT_TOL, stop_at_refutation: bool = True
) -> CertificateReport:
    """Certificates for the tridiagonal family, k = 1..n (radius <= 1 test)."""
    M = require_square(A)
    return _family_report(
        "radius_tridiagonal", lambda k: tridiagonal_toeplitz(M, k), n, tol, stop_at_refutation
    )


def radius_power_toeplitz_report(
    A, n: int, tol: float = DEFAULT_TOL, stop_at_refutation: bool = True
) -> CertificateReport:
    """Certificates for the full power-Toeplitz family, k = 1..n."""
    M = require_square(A)
    return _family_report(
        "radius_power_toeplitz", lambda k: power_toeplitz(M, k), n, tol, stop_at_refutation
    )


# ---------------------------------------------------------------------------
# resolvent and real-part checks


def _checked_inverse(M):
    try:
        inv = np.linalg.inv(M)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(str(exc)) from None
    cond = operator_norm(M) * operator_norm(inv)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularMatrix(f"condition number {cond:.3e} exceeds {MAX_CONDITION:.0e}")
    return inv


def resolvent_certificate(A, tol: float = DEFAULT_TOL) -> PositivityCertificate:
    """Certificate for (I-A)^{-1} + (I-A*)^{-1} - I >= 0, equivalent to ||A|| <= 1.

    Raises :class:`SingularMatrix` when I - A is not safely invertible.
    """
    M = require_square(A)
    d = M.shape[0]
    inv = _checked_inverse(np.eye(d) - M)
    return is_psd(inv + inv.conj().T - np.eye(d), tol)


def real_part_inverse_certificates(A, tol: float = DEFAULT_TOL):
    """Certificates for Re A >= 0 and Re A^{-1} >= 0; the verdicts agree."""
    M = require_square(A)
    inv = _checked_inverse(M)
    return is_psd((M + M.conj().T) / 2, tol), is_psd((inv + inv.conj().T) / 2, tol)


def angle_sweep_check(A, angle_grid: int = 720, tol: float = DEFAULT_TOL) -> bool:
    """True iff max over sampled t of lambda_max(Re e^{it} A) <= 1 + tol."""
    M = require_square(A)
    if angle_grid < 8:
        raise ValueError("need angle_grid >= 8")
    worst = -math.inf
    for k in range(angle_grid):
        t = 2.0 * math.pi * k / angle_grid
        H = (np.exp(1j * t) * M + np.exp(-1j * t) * M.conj().T) / 2
        w, _ = hermitian_eig(H)
        worst = max(worst, float(w[-1]))
    return worst <= 1.0 + tol


# ---------------------------------------------------------------------------
# Toeplitz positivity of operator trigonometric polynomials


@dataclass
class HerglotzReport:
    function_min_eigenvalue: float
    function_nonnegative: bool
    toeplitz: CertificateReport
    forward_implication_ok: bool


def herglotz_check(
    F: TrigPolynomial, N: int, grid: int = 1024, tol: float = DEFAULT_TOL
) -> HerglotzReport:
    """Sample min eigenvalue of F(t) and certify its block Toeplitz sections.

    A nonnegative F forces every Toeplitz section positive; the report
    carries both sides and whether the implication held.
    """
    if not F.is_operator:
        F = TrigPolynomial({j: np.atleast_2d(c) for j, c in F.coefficients.items()})
    if not F.hermitian_symmetric(1e-10):
        raise ValueError("operator coefficients are not Hermitian symmetric")
    worst = math.inf
    for k in range(grid):
        w, _ = hermitian_eig(F.eval(2.0 * math.pi * k / grid))
        worst = min(worst, float(w[0]))
    scale = max(1.0, F.weight())
    nonneg = worst >= -tol * scale

    coeffs = {j: np.atleast_2d(F.coeff(j)) for j in range(-F.half_degree, F.half_degree + 1)}
    report = _family_report(
        "herglotz_toeplitz", lambda k: block_toeplitz(coeffs, k), N, tol, stop_at_refutation=False
    )
    return HerglotzReport(
        function_min_eigenvalue=worst,
        function_nonnegative=nonneg,
        toeplitz=report,
        forward_implication_ok=(not nonneg) or report.overall,
    )


# ---------------------------------------------------------------------------
# scalar spectral factorization


def _grid_values(q: TrigPolynomial, grid: int) -> np.ndarray:
    ts = 2.0 * np.pi * np.arange(grid) / grid
    vals = np.zeros(grid, dtype=np.complex128)
    for j, c in q.coefficients.items():
        vals += c * np.exp(1j * j * ts)
    return vals


def _require_positive_scalar(q: TrigPolynomial, grid: int) -> np.ndarray:
    if q.is_operator:
        raise ValueError("expected scalar coefficients")
    if not q.hermitian_symmetric(1e-10):
        raise ValueError("coefficients are not Hermitian symmetric (q not real valued)")
    vals = _grid_values(q, grid)
    floor = -GRID_POSITIVITY_TOL * max(1.0, q.weight())
    if float(vals.real.min()) < floor:
        raise ValueError(
            f"polynomial is negative on the circle (min {vals.real.min():.3e})"
        )
    return vals.real


def fejer_riesz(q: TrigPolynomial, grid: int = 4096) -> np.ndarray:
    """Factor a nonnegative scalar trigonometric polynomial as |p|^2.

    Returns the coefficients b_0..b_N of p. Roots of z^N q(z) come in
    pairs (r, 1/conj(r)); the factor takes the roots inside the disc plus
    one from each on-circle pair, paired greedily by angle.
    """
    qvals = _require_positive_scalar(q, grid)

    coeffs = {j: complex(q.coeff(j)) for j in range(-q.half_degree, q.half_degree + 1)}
    N = q.half_degree
    while N > 0 and abs(coeffs.get(N, 0j)) <= 1e-14 * max(1.0, q.weight()):
        coeffs.pop(N, None)
        coeffs.pop(-N, None)
        N -= 1
    if N == 0:
        c0 = coeffs.get(0, 0j).real
        return np.array([math.sqrt(max(c0, 0.0))], dtype=np.complex128)

    # z^N q(z), highest degree first for the companion-matrix root finder
    poly = np.array([coeffs.get(j, 0j) for j in range(N, -N - 1, -1)])
    roots = np.roots(poly)
    if len(roots) != 2 * N:
        raise RuntimeError("root finding lost roots (leading coefficient underflow)")

    inside = [r for r in roots if abs(abs(r) - 1.0) > CIRCLE_ROOT_TOL and abs(r) < 1.0]
    circle = sorted(
        (r for r in roots if abs(abs(r) - 1.0) <= CIRCLE_ROOT_TOL),
        key=lambda r: cmath.phase(r),
    )
    if len(circle) % 2:
        raise RuntimeError("odd number of unit-circle roots; cannot pair")
    paired = []
    remaining = list(circle)
    while remaining:
        r0 = remaining.pop(0)
        j = min(range(len(remaining)), key=lambda i: abs(remaining[i] - r0))
        r1 = remaining.pop(j)
        # snap the pair to the circle along the chord midpoint (wrap safe)
        mid = r0 + r1
        paired.append(mid / abs(mid) if abs(mid) > 1e-12 else r0 / abs(r0))
    selected = inside + paired
    if len(selected) != N:
        raise RuntimeError(
            f"root selection found {len(selected)} factor roots, expected {N}"
        )

    lead = abs(coeffs[N])
    prod = 1.0
    for r in selected:
        prod *= abs(r) if abs(r) > 0 else 1.0
    alpha = math.sqrt(lead / prod)
    b = alpha * np.poly(selected)  # highest degree first
    b = b[::-1].astype(np.complex128)  # ascending: b_0..b_N

    ts = 2.0 * np.pi * np.arange(grid) / grid
    z = np.exp(1j * ts)
    pvals = np.polyval(b[::-1], z)
    resid = float(np.abs(np.abs(pvals) ** 2 - qvals).max())
    if resid > 1e-7 * max(1.0, float(np.abs(qvals).max())):
        raise RuntimeError(f"factorization residual {resid:.3e} out of tolerance")
    return b


# ---------------------------------------------------------------------------
# the trig-polynomial functional


def trig_functional_certificate(
    A, g: TrigPolynomial, grid: int = 4096, tol: float = DEFAULT_TOL
) -> PositivityCertificate:
    """Certificate for sum_j c_j Apow(j) + c_0 I >= 0, for positive scalar g.

    The doubled constant term matches the doubled identity diagonal of the
    power-Toeplitz certificates. Raises ValueError when g is not
    nonnegative on the circle.
    """
    M = require_square(A)
    _require_positive_scalar(g, grid)
    d = M.shape[0]
    out = complex(g.coeff(0)) * np.eye(d, dtype=np.complex128)
    for j, c in g.coefficients.items():
        out = out + complex(c) * power_sequence(M, j)
    return is_psd(out, tol)


# ---------------------------------------------------------------------------
# scalar tridiagonal spectrum


@dataclass(frozen=True)
class TridiagonalSpectrum:
    computed: np.ndarray
    closed_form: np.ndarray  # 2 + 2|a| cos(j pi / (n+2)), j = 1..n+1, ascending
    max_deviation: float


def scalar_tridiagonal_spectrum(a: complex, n: int) -> TridiagonalSpectrum:
    """Spectrum of the (n+1) x (n+1) scalar tridiagonal certificate matrix.

    Returns the Jacobi-computed eigenvalues alongside the closed-form
    candidates 2 + 2|a| cos(j pi/(n+2)) and their maximum deviation.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    M = tridiagonal_toeplitz(np.array([[a]], dtype=np.complex128), n)
    w, _ = hermitian_eig(M)
    closed = np.sort(
        np.array([2.0 + 2.0 * abs(a) * math.cos(j * math.pi / (n + 2)) for j in range(1, n + 2)])
    )
    return TridiagonalSpectrum(
        computed=w, closed_form=closed, max_deviation=float(np.abs(w - closed).max())
    )
