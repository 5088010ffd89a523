"""Exact p-adic toolkit: supersingular trace ladders, half-logarithms, and
Coleman-map decomposition over one cyclotomic character component."""

from .curves import CurveData, ap, count_points, discriminant, is_supersingular
from .errors import (
    BadReduction,
    DivisionByZero,
    HasseViolation,
    IdentityViolation,
    InexactDivision,
    MixedExtension,
    NonIntegralCoefficient,
    NonPrimeModulus,
    NotConverged,
    NotSupersingular,
    PadicLaddersError,
    PrecisionExhausted,
    SerializationError,
)
from .coleman import (
    KernelBasis,
    LambdaPair,
    decompose,
    kernel_basis,
    kernel_member,
    limit_lemma_check,
    phi_apply,
    projection_compatibility_check,
)
from .ladders import (
    HalfLogPair,
    LadderMatrix,
    QuadExtSeries,
    half_logs,
    kappa_identity_check,
    ladder,
    ladder_infinity,
    pollack_product,
)
from .padics import (
    PadicScalar,
    QuadExtScalar,
    padic_arith,
    padic_from_rational,
    padic_valuation,
    quadext_arith,
    quadext_conj,
)
from .report import CheckReport
from .series import (
    LambdaElement,
    PowerSeries,
    eval_at_root,
    exact_divide,
    gauss_norm_log,
    log_series,
    omega,
    omega_congruent,
    phi,
    reduce_mod,
    series_arith,
)
from .trace import (
    DeltaCoeffs,
    PeriodConstants,
    a_matrix,
    beta,
    delta_coeffs,
    delta_table,
    period_constants,
    y_beta_identity_check,
)

__version__ = "0.1.0"
