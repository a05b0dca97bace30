"""High-precision evaluation of the convergent Euler products.

The universal constant is C = prod_p (1 - 1/p)^2 (1 + 2/p); per prime the
factor is 1 - 3/p^2 + 2/p^3 = (p-1)^2 (p+2) / p^3.  The conjectured leading
constants are rational multiples of C: (11/8) f(h) C on the diagonal and
delta(h,k) C in general.  Products are evaluated in 96-bit floating point
(gmpy2.mpfr) with a rigorous relative truncation bound, so rounding error
is always dominated by the truncation term.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import gmpy2
from gmpy2 import mpfr

from .arith import primes_up_to
from .local_factors import delta_hk, f_browning

_PRECISION_BITS = 96


@contextmanager
def _precision(bits: int):
    ctx = gmpy2.get_context()
    old = ctx.precision
    ctx.precision = bits
    try:
        yield
    finally:
        ctx.precision = old


@dataclass(frozen=True)
class BoundedValue:
    """A real constant with a rigorous relative error bound.

    The true constant lies in [value*(1 - error_bound), value*(1 + error_bound)].
    ``exact_factor``, when present, is the exact rational multiplier this
    value applies to the bare universal product (useful for exact-ratio
    checks between constants sharing one product evaluation).
    """

    value: mpfr
    error_bound: float
    prime_limit: int
    exact_factor: Optional[Fraction] = None

    def __post_init__(self):
        if self.error_bound < 0:
            raise ValueError("error_bound must be non-negative")

    def __float__(self) -> float:
        return float(self.value)

    def contains(self, x: float) -> bool:
        v = float(self.value)
        return v * (1 - self.error_bound) <= x <= v * (1 + self.error_bound)


def _tail_majorant(prime_limit: int) -> float:
    # sum_{p > P} 3/p^2 <= 3/(P ln P) (1 + 2/ln P)
    lp = math.log(prime_limit)
    return 3.0 / (prime_limit * lp) * (1.0 + 2.0 / lp)


def universal_product(prime_limit: int) -> BoundedValue:
    """prod_{p <= prime_limit} (1 - 3/p^2 + 2/p^3) with a relative tail bound.

    The omitted factors lie in (0, 1), so the truncated product
    overestimates; the relative bound exp(sum of the tail majorant) - 1
    covers both sides.  Factors are multiplied in increasing-prime order,
    so results are reproducible bit for bit.
    """
    if prime_limit < 2:
        raise ValueError(f"prime_limit must be >= 2, got {prime_limit}")
    with _precision(_PRECISION_BITS):
        acc = mpfr(1)
        for p in primes_up_to(prime_limit).tolist():
            acc *= mpfr((p - 1) * (p - 1) * (p + 2)) / mpfr(p * p * p)
    return BoundedValue(acc, math.expm1(_tail_majorant(prime_limit)), prime_limit)


def _scaled(product: BoundedValue, factor: Fraction, extra_rel: float = 0.0) -> BoundedValue:
    with _precision(_PRECISION_BITS):
        value = mpfr(factor.numerator) / mpfr(factor.denominator) * product.value
    err = (1.0 + product.error_bound) * (1.0 + extra_rel) - 1.0
    return BoundedValue(value, err, product.prime_limit, exact_factor=factor)


def c_h(h: int, prime_limit: int = 10**6) -> BoundedValue:
    """The conjectured leading constant (11/8) f(h) C.

    The rational prefactor is exact (kept in ``exact_factor``); the error
    bound is inherited from the universal product.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    return _scaled(universal_product(prime_limit), Fraction(11, 8) * f_browning(h))


def leading_constant_general(
    h: int, k: int, truncation: int = 60, prime_limit: int = 10**6
) -> BoundedValue:
    """The conjectured constant delta(h,k) C for the asymmetric sum.

    delta(h,k) is only available as an interval (truncated local sums), so
    the midpoint is used and its half-width is folded into the relative
    error bound together with the product's truncation bound.
    """
    if min(h, k) < 1:
        raise ValueError("h and k must be positive")
    interval = delta_hk(h, k, truncation)
    mid = interval.midpoint
    rel_half = float(interval.tail_bound / 2 / mid)
    return _scaled(universal_product(prime_limit), mid, extra_rel=rel_half)
