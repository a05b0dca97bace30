"""Simultaneous congruences with non-coprime moduli.

Solver for systems x = a_i (mod d_i) where the moduli need not be coprime
(solvable iff gcd(d_i, d_j) | a_i - a_j for every pair, and then unique
modulo the lcm), the solvability indicator used by the lattice sums, exact
progression counting, and root counting for n(n+h)(n-k) modulo a.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .arith import factorize

# Residue enumeration cap per prime power in count_poly_roots.
_ENUM_LIMIT = 10**7


@dataclass(frozen=True)
class CongruenceSystem:
    """Clauses (residue, modulus); residues are reduced into [0, modulus)."""

    clauses: tuple[tuple[int, int], ...]

    def __init__(self, clauses: Sequence[tuple[int, int]]):
        norm = []
        for r, m in clauses:
            if m < 1:
                raise ValueError(f"modulus must be >= 1, got {m}")
            norm.append((r % m, m))
        object.__setattr__(self, "clauses", tuple(norm))


@dataclass(frozen=True)
class CrtSolution:
    """Solution class: all x with x = residue (mod modulus)."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1 or not 0 <= self.residue < self.modulus:
            raise ValueError("residue must lie in [0, modulus)")


def _merge(r1: int, m1: int, r2: int, m2: int) -> Optional[tuple[int, int]]:
    """Merge two congruence clauses into one mod lcm, or None if they clash."""
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    lcm = m1 // g * m2
    m2g = m2 // g
    t = (r2 - r1) // g * pow(m1 // g, -1, m2g) % m2g
    return (r1 + m1 * t) % lcm, lcm


def solve_crt(system: CongruenceSystem) -> Optional[CrtSolution]:
    """Solve a simultaneous congruence system with arbitrary moduli.

    Returns the unique solution class modulo the lcm of the moduli, or
    None when some pair of clauses is incompatible.  The result does not
    depend on clause order.
    """
    if not system.clauses:
        raise ValueError("cannot solve an empty system")
    r, m = system.clauses[0]
    for r2, m2 in system.clauses[1:]:
        merged = _merge(r, m, r2, m2)
        if merged is None:
            return None
        r, m = merged
    return CrtSolution(r, m)


def g_indicator(u: int, v: int, w: int, h: int, k: int) -> int:
    """1 iff n = -h (mod u), n = 0 (mod v), n = k (mod w) is solvable.

    Evaluated through the pairwise gcd conditions
    gcd(u,v) | h, gcd(v,w) | k, gcd(u,w) | h+k,
    which is O(log) per call; ``g_indicator_crt`` is the slow reference.
    """
    if min(u, v, w, h, k) < 1:
        raise ValueError("all arguments must be positive")
    if h % gcd(u, v) or k % gcd(v, w) or (h + k) % gcd(u, w):
        return 0
    return 1


def g_indicator_crt(u: int, v: int, w: int, h: int, k: int) -> int:
    """Reference route for g_indicator: actually solve the system."""
    if min(u, v, w, h, k) < 1:
        raise ValueError("all arguments must be positive")
    system = CongruenceSystem([(-h, u), (0, v), (k, w)])
    return 0 if solve_crt(system) is None else 1


def count_in_progression(system: CongruenceSystem, x: int) -> int:
    """#{1 <= n <= x} satisfying every clause of the system.

    Always within 1 of x * g / lcm where g is the solvability indicator.
    """
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    sol = solve_crt(system)
    if sol is None:
        return 0
    r, m = sol.residue, sol.modulus
    if r == 0:
        return x // m
    return 0 if r > x else (x - r) // m + 1


@lru_cache(maxsize=1 << 18)
def _prime_power_roots(q: int, h_mod: int, k_mod: int) -> int:
    """#{n mod q : n(n+h)(n-k) = 0 mod q} for a prime power q, by enumeration."""
    if q > _ENUM_LIMIT:
        raise ValueError(f"prime power {q} exceeds the enumeration cap {_ENUM_LIMIT}")
    n = np.arange(q, dtype=np.int64)
    vals = n * ((n + h_mod) % q) % q * ((n - k_mod) % q) % q
    return int(np.count_nonzero(vals == 0))


def count_poly_roots(a: int, h: int, k: int) -> int:
    """Number of n mod a with n(n+h)(n-k) = 0 (mod a).

    Computed per prime power dividing a and recombined multiplicatively
    (the solution counts multiply across coprime moduli).
    """
    if min(a, h, k) < 1:
        raise ValueError("all arguments must be positive")
    total = 1
    for p, e in factorize(a).factors:
        q = p**e
        total *= _prime_power_roots(q, h % q, k % q)
    return total
