"""Integer factorization, divisor-type multiplicative functions, and a
segmented divisor-count sieve.

Everything in this module is exact: counting functions return Python ints,
rational-valued functions return ``fractions.Fraction``.  The sieve uses
numpy internally but only ever stores integer counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import numpy as np
from gmpy2 import mpq

_TRIAL_LIMIT = 10**6
_SMALL_PRIMES: list[int] | None = None

# Deterministic Miller-Rabin witness set, valid for n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (plain Eratosthenes sieve)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def _small_primes() -> list[int]:
    global _SMALL_PRIMES
    if _SMALL_PRIMES is None:
        _SMALL_PRIMES = primes_up_to(_TRIAL_LIMIT).tolist()
    return _SMALL_PRIMES


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin, exact below 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A non-trivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


@dataclass(frozen=True)
class Factorization:
    """Prime-exponent factorization; ``factors`` is sorted by prime.

    The empty tuple represents 1.
    """

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be >= 1")

    @property
    def n(self) -> int:
        """The integer this factorization reconstructs."""
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def divisor_count(self) -> int:
        out = 1
        for _, e in self.factors:
            out *= e + 1
        return out


def _factor_into(n: int, acc: dict[int, int]) -> None:
    """Accumulate prime -> exponent of n into acc (n > 1, no factor <= 1e6)."""
    if is_prime(n):
        acc[n] = acc.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _factor_into(d, acc)
    _factor_into(n // d, acc)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Canonical factorization of n >= 1.

    Trial division over a cached prime table up to 1e6, then deterministic
    Miller-Rabin plus Pollard rho for any remaining cofactor; deterministic
    for all inputs.  Results are immutable and memoized.
    """
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    acc: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            acc[p] = e
    if m > 1:
        if m <= _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(m):
            # no prime factor <= 1e6 and m <= 1e12 means m is prime
            acc[m] = acc.get(m, 0) + 1
        else:
            _factor_into(m, acc)
    return Factorization(tuple(sorted(acc.items())))


def divisor_count(n: int) -> int:
    """d(n), the number of positive divisors of n."""
    if n < 1:
        raise ValueError(f"divisor_count requires n >= 1, got {n}")
    return factorize(n).divisor_count()


def sigma(n: int, weight: int = 1) -> Fraction:
    """sigma_weight(n) = sum of d^weight over divisors d of n, weight in {+1, -1}.

    Returned exactly as a Fraction; sigma_{-1}(n) = sigma_1(n)/n.
    """
    if n < 1:
        raise ValueError(f"sigma requires n >= 1, got {n}")
    if weight not in (1, -1):
        raise ValueError(f"weight must be +1 or -1, got {weight}")
    s1 = 1
    for p, e in factorize(n).factors:
        s1 *= (p ** (e + 1) - 1) // (p - 1)
    return Fraction(s1) if weight == 1 else Fraction(s1, n)


def omega(n: int) -> int:
    """Number of distinct prime divisors of n (omega(1) = 0)."""
    if n < 1:
        raise ValueError(f"omega requires n >= 1, got {n}")
    return len(factorize(n).factors)


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted."""
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


# --------------------------------------------------------------------------
# Divisor-count sieve.
#
# Within a window [lo, hi] every n gets d(n) = 2 * #{k | n : k <= sqrt(n)}
# minus 1 if n is a square, so only divisors up to sqrt(hi) are marked.
# Work is ~len * ln(sqrt(hi)) element updates, memory is one int64 per entry.
# --------------------------------------------------------------------------

_DEFAULT_BLOCK = 1 << 20


@dataclass(frozen=True)
class DivisorWindow:
    """d(n) for every n in [lo, hi]; counts[i] = d(lo + i)."""

    lo: int
    hi: int
    counts: np.ndarray

    def __post_init__(self):
        if len(self.counts) != self.hi - self.lo + 1:
            raise ValueError("counts length must match window size")

    def __getitem__(self, n: int) -> int:
        if not self.lo <= n <= self.hi:
            raise IndexError(f"{n} outside window [{self.lo}, {self.hi}]")
        return int(self.counts[n - self.lo])


def _divisor_counts(lo: int, hi: int) -> np.ndarray:
    """int64 array of d(n) for n in [lo, hi] (single unsegmented pass)."""
    counts = np.zeros(hi - lo + 1, dtype=np.int64)
    for k in range(1, isqrt(hi) + 1):
        start = max(k * k, lo + (-lo % k))
        if start <= hi:
            counts[start - lo :: k] += 2
    m = isqrt(lo - 1) + 1 if lo > 1 else 1
    for mm in range(m, isqrt(hi) + 1):
        counts[mm * mm - lo] -= 1
    return counts


def divisor_sieve(lo: int, hi: int, block: int = _DEFAULT_BLOCK) -> DivisorWindow:
    """Exact d(n) for all n in [lo, hi].

    Evaluated in blocks of at most ``block`` entries; the output is
    identical for every block size.
    """
    if lo < 1 or lo > hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    if block < 1:
        raise ValueError("block must be positive")
    parts = []
    a = lo
    while a <= hi:
        b = min(a + block - 1, hi)
        parts.append(_divisor_counts(a, b))
        a = b + 1
    counts = parts[0] if len(parts) == 1 else np.concatenate(parts)
    return DivisorWindow(lo, hi, counts)


# --------------------------------------------------------------------------
# 3^omega sums.
# --------------------------------------------------------------------------


def omega_sieve(x: int) -> np.ndarray:
    """omega(n) for n in [0, x] as an int8 array (omega(0) = omega(1) = 0)."""
    om = np.zeros(x + 1, dtype=np.int8)
    for p in primes_up_to(x).tolist():
        om[p::p] += 1
    return om


def _mpq_tree_sum(terms: list) -> mpq:
    """Sum a list of mpq values by pairwise merging (balanced denominators)."""
    if not terms:
        return mpq(0)
    n = len(terms)
    while n > 1:
        half = n // 2
        for i in range(half):
            terms[i] = terms[2 * i] + terms[2 * i + 1]
        if n % 2:
            terms[half] = terms[n - 1]
            n = half + 1
        else:
            n = half
    return terms[0]


def three_omega_sums(x: int) -> tuple[int, Fraction]:
    """(sum of 3^omega(a), sum of 3^omega(a)/a) over 1 <= a <= x, both exact."""
    if x < 1:
        raise ValueError(f"three_omega_sums requires x >= 1, got {x}")
    om = omega_sieve(x)[1:]
    pow3 = [3**j for j in range(int(om.max()) + 1)] if x > 1 else [1]
    unweighted = int(np.sum(np.int64(3) ** om.astype(np.int64)))
    terms = [mpq(pow3[o], a) for a, o in enumerate(om.tolist(), start=1)]
    w = _mpq_tree_sum(terms)
    return unweighted, Fraction(w.numerator, w.denominator)
