"""Exact local Euler factors of the triple-divisor Dirichlet series.

The local sum at a prime p is

    s_p = sum over nu1, nu2, nu3 >= 0 of  g(p^nu1, p^nu2, p^nu3) / p^max(nu),

where the indicator demands min(nu1,nu2) <= v_p(h), min(nu2,nu3) <= v_p(k)
and min(nu1,nu3) <= v_p(h+k).  Closed forms exist on the diagonal k = h
(s_p_closed / s_2_closed); the general case is evaluated by truncated
enumeration with a rigorous tail bound.  All values are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import factorize, is_prime


@dataclass(frozen=True)
class LocalFactorResult:
    """Truncated local sum: the true value lies in [value, value + tail_bound]."""

    value: Fraction
    tail_bound: Fraction
    truncation: int

    def __post_init__(self):
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be non-negative")

    @property
    def midpoint(self) -> Fraction:
        return self.value + self.tail_bound / 2


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=8)
def _max_grid(n: int) -> np.ndarray:
    v = np.arange(n + 1, dtype=np.int32)
    return np.maximum(np.maximum(v[:, None, None], v[None, :, None]), v[None, None, :])


@lru_cache(maxsize=4096)
def local_sum_truncated(p: int, r_h: int, r_k: int, r_hk: int, N: int) -> LocalFactorResult:
    """Truncated local sum at p for valuations (r_h, r_k, r_hk) of (h, k, h+k).

    Enumerates all triples 0 <= nu_i <= N, keeps those passing the three
    min-conditions, and adds p^-max(nu) exactly.  Omitted terms are
    non-negative; triples with max = m number at most 3(m+1)^2, giving the
    tail bound 3(N+2)^2 p^-(N+1) (1-1/p)^-3.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if min(r_h, r_k, r_hk) < 0:
        raise ValueError("valuations must be non-negative")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    v = np.arange(N + 1, dtype=np.int32)
    v1, v2, v3 = v[:, None, None], v[None, :, None], v[None, None, :]
    mask = (
        (np.minimum(v1, v2) <= r_h)
        & (np.minimum(v2, v3) <= r_k)
        & (np.minimum(v1, v3) <= r_hk)
    )
    counts = np.bincount(_max_grid(N)[mask], minlength=N + 1)
    num = sum(int(c) * p ** (N - m) for m, c in enumerate(counts.tolist()))
    value = Fraction(num, p**N)
    tail = Fraction(3 * (N + 2) ** 2 * p**3, p ** (N + 1) * (p - 1) ** 3)
    return LocalFactorResult(value, tail, N)


def s_p_closed(p: int, r: int) -> Fraction:
    """Exact local sum at an odd prime p on the diagonal, with r = v_p(h).

    Equals (1 + 4/p + 1/p^2 - (3r+4)/p^(r+1) - 4/p^(r+2) + (3r+2)/p^(r+3))
    times (1 - 1/p)^-3; at r = 0 this collapses to (p+2)/(p-1).
    """
    if p == 2:
        raise ValueError("p = 2 has its own closed form, use s_2_closed")
    if not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    num = p ** (r + 3) + 4 * p ** (r + 2) + p ** (r + 1) - (3 * r + 4) * p**2 - 4 * p + 3 * r + 2
    return Fraction(num, p**r * (p - 1) ** 3)


def s_2_closed(r: int) -> Fraction:
    """Exact local sum at p = 2 on the diagonal: 26 - (41 + 15r)/2^(r+1)."""
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    return Fraction(26 * 2 ** (r + 1) - 41 - 15 * r, 2 ** (r + 1))


def f_correction(prime: int, nu: int) -> Fraction:
    """The multiplicative correction factor f at a prime power, nu >= 1."""
    if nu < 1:
        raise ValueError(f"nu must be >= 1, got {nu}")
    p = prime
    if p == 2:
        return Fraction(52 * 2**nu - 41 - 15 * nu, 11 * 2**nu)
    num = p ** (nu + 3) + 4 * p ** (nu + 2) + p ** (nu + 1) - (3 * nu + 4) * p**2 - 4 * p + 3 * nu + 2
    return Fraction(num, p**nu * (p + 2) * (p - 1) ** 2)


def f_browning(h: int) -> Fraction:
    """The multiplicative factor f(h) carrying all h-dependence; f(1) = 1."""
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    out = Fraction(1)
    for p, e in factorize(h).factors:
        out *= f_correction(p, e)
    return out


def delta_h(h: int) -> Fraction:
    """The finite product over p | 2h of (1-1/p)(1+2/p)^-1 s_p, exactly.

    Uses s_2_closed at p = 2 with r = v_2(h) and s_p_closed at odd p | h.
    The factor at an odd prime with v_p(h) = 0 is exactly 1, so the product
    may equivalently be taken over all primes.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    out = Fraction(1, 4) * s_2_closed(_valuation(h, 2))
    for p, e in factorize(h).factors:
        if p != 2:
            out *= Fraction(p - 1, p + 2) * s_p_closed(p, e)
    return out


def verify_delta_identity(h: int) -> bool:
    """True iff delta_h(h) equals 11 f(h) / 8 as exact rationals."""
    return delta_h(h) == Fraction(11, 8) * f_browning(h)


def delta_hk(h: int, k: int, N: int = 60) -> LocalFactorResult:
    """The local product for the asymmetric sum, as a rigorous interval.

    Product over p | lcm(h, k, h+k) of (1-1/p)(1+2/p)^-1 times the
    truncated local sum at level N.  No closed form is available off the
    diagonal, so the result is an interval [value, value + tail_bound]
    containing the true product; on the diagonal it contains delta_h(h).
    """
    if min(h, k) < 1:
        raise ValueError("h and k must be positive")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    primes = {p for p, _ in factorize(h).factors}
    primes |= {p for p, _ in factorize(k).factors}
    primes |= {p for p, _ in factorize(h + k).factors}
    lo = Fraction(1)
    hi = Fraction(1)
    for p in sorted(primes):
        local = local_sum_truncated(p, _valuation(h, p), _valuation(k, p), _valuation(h + k, p), N)
        c = Fraction(p - 1, p + 2)
        lo *= c * local.value
        hi *= c * (local.value + local.tail_bound)
    return LocalFactorResult(lo, hi - lo, N)
