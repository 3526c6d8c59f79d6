"""Numerical companion to a study of primitive sets: Mertens-product
envelopes with certified rounding budgets, L-set densities and their
disjointness structure, the constant pipeline built on them, and
brute-force verification suites for all of it.
"""

from .accum import Neumaier
from .bounds import (
    BqEntry,
    ConstantsReport,
    b_value,
    bq_entry,
    bq_table,
    constants,
    deep_fsum_check,
    double_ratio_check,
    exponent_savings,
    is_deep,
    mass_lemma_check,
    pi4_partition_sum,
    shallow_density_check,
    total_fbound,
)
from .errors import (
    BoundaryAmbiguityError,
    DomainError,
    IntegrityError,
    PreconditionError,
)
from .lsets import (
    CheckedSet,
    CSetSpec,
    DickmanStat,
    LRelation,
    LSetDescriptor,
    beta,
    c_set,
    c_set_harmonic,
    c_spec,
    check_set,
    d_v_set,
    dickman_integral,
    dickman_rho,
    dickman_statistic,
    generating_set,
    is_l_multiple,
    l_density,
    trichotomy,
)
from .mertens import (
    M_envelope,
    MuValue,
    ScanReport,
    ScanSample,
    m_envelope,
    m_true,
    mu,
    mu_scan,
    r_ratio,
    rs_lower,
    rs_upper,
)
from .primes import (
    Factorization,
    PrimeTable,
    factorize,
    iter_odd_prime_segments,
    omega_sieve,
    sieve_primes,
    smallest_prime_factor,
    spf_table,
)
from .report import VerificationReport
from .series import (
    SeriesValue,
    f_nk_partial,
    f_prime_total,
    f_sum,
    f_t_sum,
    prime_zeta,
    semiprime_power_sum,
    solve_tau,
    zeta_minus_1,
)
from .verify import (
    ChainResult,
    DensityEstimate,
    LFamily,
    density_estimate,
    exhaustive_primitive_max,
    longest_l_chain,
    run_suite,
    suite_names,
    sum_dln_smooth,
    validate_chain,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryAmbiguityError",
    "BqEntry",
    "ChainResult",
    "CheckedSet",
    "ConstantsReport",
    "CSetSpec",
    "DensityEstimate",
    "DickmanStat",
    "DomainError",
    "Factorization",
    "IntegrityError",
    "LFamily",
    "LRelation",
    "LSetDescriptor",
    "M_envelope",
    "MuValue",
    "Neumaier",
    "PreconditionError",
    "PrimeTable",
    "ScanReport",
    "ScanSample",
    "SeriesValue",
    "VerificationReport",
    "b_value",
    "beta",
    "bq_entry",
    "bq_table",
    "c_set",
    "c_set_harmonic",
    "c_spec",
    "check_set",
    "constants",
    "d_v_set",
    "deep_fsum_check",
    "density_estimate",
    "dickman_integral",
    "dickman_rho",
    "dickman_statistic",
    "double_ratio_check",
    "exhaustive_primitive_max",
    "exponent_savings",
    "f_nk_partial",
    "f_prime_total",
    "f_sum",
    "f_t_sum",
    "factorize",
    "generating_set",
    "is_deep",
    "is_l_multiple",
    "iter_odd_prime_segments",
    "l_density",
    "longest_l_chain",
    "m_envelope",
    "m_true",
    "mass_lemma_check",
    "mu",
    "mu_scan",
    "omega_sieve",
    "pi4_partition_sum",
    "prime_zeta",
    "r_ratio",
    "rs_lower",
    "rs_upper",
    "run_suite",
    "semiprime_power_sum",
    "shallow_density_check",
    "sieve_primes",
    "smallest_prime_factor",
    "solve_tau",
    "spf_table",
    "suite_names",
    "sum_dln_smooth",
    "total_fbound",
    "trichotomy",
    "validate_chain",
    "zeta_minus_1",
    "__version__",
]
