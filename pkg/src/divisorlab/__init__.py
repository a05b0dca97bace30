"""divisorlab: exact divisor-convolution sums and their conjectured constants.

A small laboratory for the triple convolution sum of the divisor function:
fast exact computation of S(x;h), T(x;h,k) and the Ingham pair sums;
exact-rational local Euler factors and the finite products delta(h),
delta(h,k); high-precision convergent Euler products; generalized CRT
solving; smooth-number counting; and convergence diagnostics, all surfaced
through a reproducible CLI.
"""

__version__ = "0.1.0"

from .arith import (
    DivisorWindow,
    Factorization,
    divisor_count,
    divisor_sieve,
    divisors,
    factorize,
    is_prime,
    omega,
    omega_sieve,
    primes_up_to,
    sigma,
    three_omega_sums,
)
from .congruence import (
    CongruenceSystem,
    CrtSolution,
    count_in_progression,
    count_poly_roots,
    g_indicator,
    g_indicator_crt,
    solve_crt,
)
from .conv_sums import (
    ConvergenceReport,
    ReportRow,
    additive_pair_sum,
    convergence_report,
    decomposition_terms,
    elementary_lower_bound,
    general_triple_sum,
    lattice_sum,
    shifted_pair_sum,
    triple_sum,
)
from .euler_constants import BoundedValue, c_h, leading_constant_general, universal_product
from .local_factors import (
    LocalFactorResult,
    delta_h,
    delta_hk,
    f_browning,
    f_correction,
    local_sum_truncated,
    s_2_closed,
    s_p_closed,
    verify_delta_identity,
)
from .smooth import (
    SmoothBoundCheck,
    SmoothQuery,
    psi,
    smooth_iter,
    smooth_numbers,
    smooth_weighted_sum,
    smoothness_bound_check,
)

__all__ = [
    "BoundedValue",
    "CongruenceSystem",
    "ConvergenceReport",
    "CrtSolution",
    "DivisorWindow",
    "Factorization",
    "LocalFactorResult",
    "ReportRow",
    "SmoothBoundCheck",
    "SmoothQuery",
    "additive_pair_sum",
    "c_h",
    "convergence_report",
    "count_in_progression",
    "count_poly_roots",
    "decomposition_terms",
    "delta_h",
    "delta_hk",
    "divisor_count",
    "divisor_sieve",
    "divisors",
    "elementary_lower_bound",
    "f_browning",
    "f_correction",
    "factorize",
    "g_indicator",
    "g_indicator_crt",
    "general_triple_sum",
    "is_prime",
    "lattice_sum",
    "leading_constant_general",
    "local_sum_truncated",
    "omega",
    "omega_sieve",
    "primes_up_to",
    "psi",
    "s_2_closed",
    "s_p_closed",
    "shifted_pair_sum",
    "sigma",
    "smooth_iter",
    "smooth_numbers",
    "smooth_weighted_sum",
    "smoothness_bound_check",
    "solve_crt",
    "three_omega_sums",
    "triple_sum",
    "universal_product",
]
