"""Independent reference implementations used only as test oracles.

Deliberately dumb: direct definitions, trial division, residue scans and
literal loops.  Nothing here shares code with the library paths it checks.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def trial_division_factors(n: int) -> list[tuple[int, int]]:
    """Factor n by plain trial division over 2, 3, 4, ..."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def naive_divisor_count(n: int) -> int:
    """d(n) by checking every k <= sqrt(n)."""
    count = 0
    k = 1
    while k * k < n:
        if n % k == 0:
            count += 2
        k += 1
    if k * k == n:
        count += 1
    return count


def naive_divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def divisor_sum_floor(x: int) -> int:
    """sum_{n <= x} d(n) = sum_{k <= x} floor(x/k)."""
    return sum(x // k for k in range(1, x + 1))


def naive_omega(n: int) -> int:
    return len(trial_division_factors(n))


def brute_crt(clauses, limit=None) -> tuple[int | None, int]:
    """Scan all residues mod lcm; returns (first solution or None, lcm)."""
    lcm = 1
    for _, m in clauses:
        lcm = lcm * m // math.gcd(lcm, m)
    if limit is not None and lcm > limit:
        raise ValueError("lcm too large for the brute-force oracle")
    n = np.arange(lcm, dtype=np.int64)
    mask = np.ones(lcm, dtype=bool)
    for r, m in clauses:
        mask &= n % m == r % m
    hits = np.nonzero(mask)[0]
    return (int(hits[0]) if hits.size else None), lcm


def brute_solvable_g(u: int, v: int, w: int, h: int, k: int) -> int:
    """Indicator by scanning n over 0..lcm-1 for the three congruences."""
    lcm = math.lcm(u, v, w)
    n = np.arange(lcm, dtype=np.int64)
    ok = ((n + h) % u == 0) & (n % v == 0) & ((n - k) % w == 0)
    return 1 if bool(ok.any()) else 0


def literal_local_sum(p: int, r_h: int, r_k: int, r_hk: int, N: int) -> Fraction:
    """The truncated local sum by a literal triple loop (small N only)."""
    total = Fraction(0)
    for a in range(N + 1):
        for b in range(N + 1):
            for c in range(N + 1):
                if min(a, b) <= r_h and min(b, c) <= r_k and min(a, c) <= r_hk:
                    total += Fraction(1, p ** max(a, b, c))
    return total


def naive_triple_sum(x: int, h: int, k: int, dtable) -> int:
    """T(x;h,k) from a precomputed divisor-count table (index = n)."""
    return sum(dtable[n] * dtable[n + h] * dtable[n - k] for n in range(k + 1, x + 1))


def greatest_prime_factor_table(x: int) -> np.ndarray:
    """gpf[n] for n <= x (gpf[1] = 1), by an ascending prime-assignment sieve."""
    gpf = np.zeros(x + 1, dtype=np.int64)
    gpf[1] = 1
    for p in range(2, x + 1):
        if gpf[p] == 0:
            gpf[p::p] = p
    return gpf


def psi_filter(x: int, y: int, gpf: np.ndarray) -> int:
    """Psi(x,y) by filtering on the greatest-prime-factor table."""
    return int(np.count_nonzero(gpf[1 : x + 1] <= y))


def prime_zeta_universal_constant(dps: int = 30):
    """The universal Euler product via prime-zeta acceleration (mpmath).

    ln C = ln(1/2) + sum_{j >= 2} c_j (P(j) - 2^-j) with
    c_j = (-2 + (-1)^(j+1) 2^j) / j, the p = 2 factor split off so the
    series converges geometrically.
    """
    import mpmath

    with mpmath.workdps(dps):
        ln_c = mpmath.log(mpmath.mpf(1) / 2)
        for j in range(2, 40 + int(3.4 * dps)):
            cj = mpmath.mpf(-2 + (-1) ** (j + 1) * 2**j) / j
            ln_c += cj * (mpmath.primezeta(j) - mpmath.mpf(2) ** (-j))
        return float(mpmath.exp(ln_c))
