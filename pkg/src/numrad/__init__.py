"""Dense complex-matrix toolkit certifying operator-norm and
numerical-radius bounds through block-matrix positivity, with constructive
factorization witnesses and finite unitary dilations."""

from .ando import (
    AndoFactorization,
    FactorizationFailure,
    HermitianWitness,
    RadiusBoundExceeded,
    contraction_factor,
    factor_witness,
    run_pipeline,
    solve_witness,
    stack_isometry,
    tridiagonal_splitting,
    verify_condition,
)
from .blockforms import (
    block_shift,
    block_toeplitz,
    fejer_toeplitz,
    power_sequence,
    power_toeplitz,
    principal_submatrix,
    tridiagonal_toeplitz,
    unit_diagonal_power_toeplitz,
)
from .certify import (
    CertificateReport,
    TrigPolynomial,
    angle_sweep_check,
    fejer_riesz,
    herglotz_check,
    norm_block2_certificate,
    norm_chain_report,
    radius_power_toeplitz_report,
    radius_tridiagonal_report,
    real_part_inverse_certificates,
    resolvent_certificate,
    scalar_tridiagonal_spectrum,
    trig_functional_certificate,
)
from .dilation import (
    DilationBundle,
    Polynomial,
    build_unitary_dilation,
    verify_two_dilation,
    von_neumann_check,
)
from .harness import CorpusSpec, SweepConfig, generate_corpus, golden_regression, run_equivalence_sweep
from .io import MatrixFileError, load_matrix, save_matrix
from .kernel import BACKEND
from .linalg import (
    EigenDecomposition,
    NotPositiveSemidefinite,
    PositivityCertificate,
    gram_factor,
    hermitian_eig,
    is_psd,
    matrix_power,
    polar_decompose,
    psd_sqrt,
)
from .radius import (
    RadiusResult,
    check_power_inequality,
    check_shift_radius_bound,
    numerical_radius,
    numerical_range_boundary,
    operator_norm,
)

__version__ = "0.1.0"
