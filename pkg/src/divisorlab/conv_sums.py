"""Exact convolution sums of the divisor function.

The central objects are

    S(x;h)   = sum_{h < n <= x} d(n) d(n-h) d(n+h)
    T(x;h,k) = sum_{k < n <= x} d(n) d(n+h) d(n-k)

(the summation starts where every argument is a positive integer, so all
three factors are genuine divisor counts), together with Ingham's pair
sums, the exact lattice sum sum_{u,v,w<=x} g(u,v,w)/[u,v,w], the
S1/S2/S3 box decomposition, and convergence diagnostics against the
conjectured constants.  Sums over n run through a block-segmented divisor
sieve, so memory stays O(block) up to x ~ 1e8; block results are exact
integers, hence any evaluation order (including parallel) gives identical
output.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

import numpy as np

from .arith import _DEFAULT_BLOCK, _divisor_counts, divisors
from .euler_constants import c_h

_LATTICE_CAP = 1000  # lattice_sum cost grows as x^3


# --------------------------------------------------------------------------
# Blocked triple-product sums.
# --------------------------------------------------------------------------


def _block_ranges(lo: int, hi: int, block: int) -> list[tuple[int, int]]:
    out = []
    a = lo
    while a <= hi:
        b = min(a + block - 1, hi)
        out.append((a, b))
        a = b + 1
    return out


def _triple_block(a: int, b: int, h: int, k: int) -> int:
    """sum over n in [a, b] of d(n) d(n+h) d(n-k), via one sieved window."""
    win = _divisor_counts(a - k, b + h)
    length = b - a + 1
    dn = win[k : k + length]
    dnh = win[k + h : k + h + length]
    dnk = win[0:length]
    return int(np.sum(dn * dnh * dnk))


def _pair_block(a: int, b: int, h: int) -> int:
    win = _divisor_counts(a, b + h)
    length = b - a + 1
    return int(np.sum(win[0:length] * win[h : h + length]))


def _run_blocks(ranges, worker, threads: int) -> int:
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(lambda r: worker(*r), ranges))
    return sum(worker(*r) for r in ranges)


def general_triple_sum(
    x: int, h: int, k: int, *, threads: int = 0, block: int = _DEFAULT_BLOCK
) -> int:
    """T(x;h,k) = sum_{k < n <= x} d(n) d(n+h) d(n-k), exactly."""
    if min(x, h, k) < 1:
        raise ValueError("x, h, k must be positive")
    if x <= k:
        return 0
    ranges = _block_ranges(k + 1, x, block)
    return _run_blocks(ranges, lambda a, b: _triple_block(a, b, h, k), threads)


def triple_sum(x: int, h: int, *, threads: int = 0, block: int = _DEFAULT_BLOCK) -> int:
    """S(x;h) = sum_{h < n <= x} d(n) d(n-h) d(n+h), exactly."""
    if min(x, h) < 1:
        raise ValueError("x and h must be positive")
    return general_triple_sum(x, h, h, threads=threads, block=block)


def shifted_pair_sum(N: int, h: int, *, threads: int = 0, block: int = _DEFAULT_BLOCK) -> int:
    """Ingham's shifted sum: sum_{n <= N} d(n) d(n+h), exactly."""
    if min(N, h) < 1:
        raise ValueError("N and h must be positive")
    ranges = _block_ranges(1, N, block)
    return _run_blocks(ranges, lambda a, b: _pair_block(a, b, h), threads)


def additive_pair_sum(N: int) -> int:
    """Ingham's additive sum: sum_{0 < n < N} d(n) d(N-n), exactly."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    win = _divisor_counts(1, N - 1)
    return int(np.sum(win * win[::-1]))


def _triple_sum_checkpoints(h: int, k: int, xs: Sequence[int], threads: int, block: int) -> dict[int, int]:
    """T(x;h,k) at several checkpoints from one pass over [k+1, max(xs)]."""
    out: dict[int, int] = {}
    total = 0
    lo = k + 1
    for x in xs:
        if x > lo - 1:
            ranges = _block_ranges(lo, x, block)
            total += _run_blocks(ranges, lambda a, b: _triple_block(a, b, h, k), threads)
            lo = x + 1
        out[x] = total
    return out


# --------------------------------------------------------------------------
# Exact lattice sum over admissible (u, v, w) triples.
# --------------------------------------------------------------------------


def _merge_value_counts(vals_list, cnts_list):
    vals = np.concatenate(vals_list)
    cnts = np.concatenate(cnts_list)
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    cnts = cnts[order]
    starts = np.r_[0, np.flatnonzero(np.diff(vals)) + 1]
    return vals[starts], np.add.reduceat(cnts, starts)


def lattice_sum(x: int, h: int, k: Optional[int] = None) -> Fraction:
    """sum over u, v, w <= x of g(u,v,w) / lcm(u,v,w) as an exact rational.

    g(u,v,w) = 1 iff gcd(u,v) | h, gcd(v,w) | k and gcd(u,w) | h+k.  The
    admissible w for each (u, v) are found with vectorized gcd rows; lcm
    values are tallied and the sum is assembled over the common denominator
    lcm(1..x).  Refuses x > 1000: the triple loop is cubic in x.
    """
    if k is None:
        k = h
    if min(x, h, k) < 1:
        raise ValueError("x, h, k must be positive")
    if x > _LATTICE_CAP:
        raise ValueError(f"lattice_sum is cubic in x; refusing x > {_LATTICE_CAP}")
    w = np.arange(1, x + 1, dtype=np.int64)
    grid = np.gcd.outer(w, w)  # grid[i, j] = gcd(i+1, j+1)
    h_ok = h % grid == 0
    k_ok = k % grid == 0
    hk_ok = (h + k) % grid == 0
    acc_vals = [np.empty(0, dtype=np.int64)]
    acc_cnts = [np.empty(0, dtype=np.int64)]
    pending: list[np.ndarray] = []
    pending_size = 0

    def compress():
        nonlocal pending, pending_size
        if pending:
            vals, cnts = np.unique(np.concatenate(pending), return_counts=True)
            merged = _merge_value_counts(acc_vals + [vals], acc_cnts + [cnts])
            acc_vals[:] = [merged[0]]
            acc_cnts[:] = [merged[1]]
            pending = []
            pending_size = 0

    for u in range(1, x + 1):
        w_u = hk_ok[u - 1]
        for v in (np.nonzero(h_ok[u - 1])[0] + 1).tolist():
            mask = w_u & k_ok[v - 1]
            if not mask.any():
                continue
            m = u * v // gcd(u, v)
            ws = w[mask]
            pending.append(m // np.gcd(m, ws) * ws)
            pending_size += ws.size
        if pending_size > 4_000_000:
            compress()
    compress()
    denom = lcm(*range(1, x + 1))
    num = 0
    for val, cnt in zip(acc_vals[0].tolist(), acc_cnts[0].tolist()):
        num += cnt * (denom // val)
    return Fraction(num, denom)


# --------------------------------------------------------------------------
# Box decomposition and the elementary lower-bound main term.
# --------------------------------------------------------------------------


def decomposition_terms(x: int, h: int) -> tuple[int, int, int]:
    """The three box sums S1, S2, S3 with S(x;h) = S1 + S2 - S3.

    Each counts solutions n in [h+1, x] of u | n+h, v | n, w | n-h over its
    (u, v, w) box: S1 has u, v, w <= x; S2 takes x < u <= x+h with v, w <= x;
    S3 takes u <= x+h, v <= x and x-h < w <= x.  Brute-force enumeration
    over divisors per n; meant for x up to a few hundred.
    """
    if h < 1 or 2 * h > x:
        raise ValueError("need 1 <= h <= x/2")
    s1 = s2 = s3 = 0
    for n in range(h + 1, x + 1):
        du = divisors(n + h)
        u_le = sum(1 for u in du if u <= x)
        u_hi = sum(1 for u in du if x < u <= x + h)
        dv = sum(1 for v in divisors(n) if v <= x)
        dw = divisors(n - h)
        w_le = sum(1 for wd in dw if wd <= x)
        w_hi = sum(1 for wd in dw if x - h < wd <= x)
        s1 += u_le * dv * w_le
        s2 += u_hi * dv * w_le
        s3 += (u_le + u_hi) * dv * w_hi
    return s1, s2, s3


def _icbrt(x: int) -> int:
    m = round(x ** (1 / 3))
    while m**3 > x:
        m -= 1
    while (m + 1) ** 3 <= x:
        m += 1
    return m


def elementary_lower_bound(x: int, h: int) -> Fraction:
    """Main term of the elementary lower-bound argument, for even h.

    sum over d1, d2, d3 <= floor(x^(1/3)) coprime to h of x/(d1 d2 d3),
    exactly: x times the cube of sum_{d <= x^(1/3), gcd(d,h)=1} 1/d.
    """
    if h < 1 or h % 2:
        raise ValueError("h must be a positive even integer")
    if x < 8:
        raise ValueError(f"x must be >= 8, got {x}")
    m = _icbrt(x)
    s = sum((Fraction(1, d) for d in range(1, m + 1) if gcd(d, h) == 1), Fraction(0))
    return x * s**3


# --------------------------------------------------------------------------
# Convergence diagnostics.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ReportRow:
    x: int
    sum_value: int
    ratio: float  # sum_value / normalization(x)
    target: float


@dataclass(frozen=True)
class ConvergenceReport:
    """Normalized partial sums against a target constant, sorted by x."""

    rows: tuple[ReportRow, ...]
    h: int
    k: int
    normalization: str

    def __post_init__(self):
        xs = [r.x for r in self.rows]
        if xs != sorted(set(xs)) or not xs:
            raise ValueError("rows must be sorted with strictly increasing x")


def convergence_report(
    h: int,
    xs: Sequence[int],
    *,
    prime_limit: int = 10**6,
    threads: int = 0,
    block: int = _DEFAULT_BLOCK,
) -> ConvergenceReport:
    """S(x;h) / (x ln^3 x) at each x in xs, with the conjectured target.

    One blocked sieve pass over [h+1, max(xs)] accumulates every checkpoint.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    xs = list(xs)
    if not xs or xs != sorted(set(xs)) or xs[0] < 1:
        raise ValueError("xs must be a non-empty strictly increasing sequence of positive ints")
    target = float(c_h(h, prime_limit).value)
    sums = _triple_sum_checkpoints(h, h, xs, threads, block)
    rows = tuple(
        ReportRow(x, sums[x], sums[x] / (x * math.log(x) ** 3), target) for x in xs
    )
    return ConvergenceReport(rows, h, h, "sum / (x * ln(x)^3)")
