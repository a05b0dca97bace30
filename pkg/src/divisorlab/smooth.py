"""Smooth-number counting and the weighted smooth sums.

Psi(x, y) counts n <= x whose prime factors are all <= y; it is computed
by exact recursive enumeration over the primes up to y (time O(Psi), no
floating point).  The weighted sums sum_{x^delta < d <= x, d y-smooth}
3^omega(d)/d power the upper-bound bookkeeping: the smaller the cutoff y,
the smaller the sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from gmpy2 import mpq

from .arith import _mpq_tree_sum, primes_up_to

# Envelope constant for the psi bound diagnostic, pinned by sweeping
# psi(x,y)/(x exp(-u ln u / 2)) over the admissible (x, y) grid: the ratio
# peaks at exactly 1.0 on the u = 1 boundary, so 1.1 gives clean margin.
BOUND_CONSTANT = 1.1

# The bound's stated u-range is 1 <= u <= (1 - eps) ln x / ln ln x.
BOUND_RANGE_EPS = 0.1


@dataclass(frozen=True)
class SmoothQuery:
    """A (x, y) smoothness query, optionally with the x^delta cutoff."""

    x: int
    y: int
    delta: Optional[Fraction] = None

    def __post_init__(self):
        if self.x < 1 or self.y < 1:
            raise ValueError("x and y must be positive")
        if self.delta is not None and not 0 < self.delta <= 1:
            raise ValueError(f"delta must lie in (0, 1], got {self.delta}")


def _smooth_primes(x: int, y: int) -> list[int]:
    return primes_up_to(min(x, y)).tolist()


def psi(x: int, y: int) -> int:
    """Psi(x, y) = #{n <= x : every prime factor of n is <= y}, exact."""
    if x < 1 or y < 1:
        raise ValueError("x and y must be positive")
    ps = _smooth_primes(x, y)

    def count(i: int, rem: int) -> int:
        total = 1  # the empty product contributes n = 1 (scaled)
        for j in range(i, len(ps)):
            p = ps[j]
            if p > rem:
                break
            q = rem // p
            while q >= 1:
                total += count(j + 1, q)
                q //= p
        return total

    return count(0, x)


def smooth_iter(x: int, y: int) -> Iterator[tuple[int, int]]:
    """Yield (d, omega(d)) for every y-smooth d <= x, in DFS order."""
    if x < 1 or y < 1:
        raise ValueError("x and y must be positive")
    ps = _smooth_primes(x, y)

    def rec(i: int, val: int, om: int) -> Iterator[tuple[int, int]]:
        yield val, om
        for j in range(i, len(ps)):
            p = ps[j]
            q = val * p
            if q > x:
                break
            while q <= x:
                yield from rec(j + 1, q, om + 1)
                q *= p

    return rec(0, 1, 0)


def smooth_numbers(x: int, y: int) -> list[int]:
    """All y-smooth integers <= x, sorted."""
    return sorted(d for d, _ in smooth_iter(x, y))


def smooth_weighted_sum(x: int, y: int, delta) -> Fraction:
    """sum of 3^omega(d)/d over y-smooth d with x^delta < d <= x, exact.

    delta must be a rational in (0, 1]; the cutoff comparison d > x^delta
    is done in exact integer arithmetic (d^q > x^p for delta = p/q).
    """
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    if y < 1:
        raise ValueError(f"y must be >= 1, got {y}")
    delta = Fraction(delta)
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    p_, q_ = delta.numerator, delta.denominator
    xp = x**p_
    terms = [mpq(3**om, d) for d, om in smooth_iter(x, y) if d**q_ > xp]
    total = _mpq_tree_sum(terms)
    return Fraction(total.numerator, total.denominator)


@dataclass(frozen=True)
class SmoothBoundCheck:
    """Psi(x,y) against the envelope K x exp(-u ln u / 2)."""

    psi_value: int
    bound: float
    satisfied: bool
    u: float
    constant: float


def smoothness_bound_check(x: int, y: int) -> SmoothBoundCheck:
    """Compare exact Psi(x, y) with the smooth-count envelope.

    Only defined for u = ln x / ln y within [1, (1 - eps) ln x / ln ln x]
    (eps = 0.1); outside that range the envelope shape is not applicable
    and a ValueError is raised.  The constant is a pinned regression
    value, not an asserted theorem constant.
    """
    if x < 3 or y < 2:
        raise ValueError("need x >= 3 and y >= 2")
    u = math.log(x) / math.log(y)
    u_max = (1 - BOUND_RANGE_EPS) * math.log(x) / math.log(math.log(x))
    if not 1.0 <= u <= u_max:
        raise ValueError(f"u = {u:.4f} outside the admissible range [1, {u_max:.4f}]")
    value = psi(x, y)
    bound = BOUND_CONSTANT * x * math.exp(-0.5 * u * math.log(u))
    return SmoothBoundCheck(value, bound, value <= bound, u, BOUND_CONSTANT)
