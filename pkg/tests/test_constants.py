"""euler_constants module: universal product, c_h, general leading constant."""

from fractions import Fraction

import pytest

from divisorlab import (
    c_h,
    delta_h,
    f_browning,
    leading_constant_general,
    primes_up_to,
    universal_product,
)
from oracles import prime_zeta_universal_constant

# Converged-product regression target, pinned before the build from two
# independent routes (direct product at 1e7 and prime-zeta acceleration).
C_REF = 0.28674742843447873


class TestUniversalProduct:
    def test_single_factor(self):
        u = universal_product(2)
        assert float(u.value) == 0.5
        assert u.error_bound > 0

    def test_two_factors(self):
        import gmpy2

        u = universal_product(3)
        # convert the 96-bit float to an exact rational before comparing
        exact = Fraction(int(gmpy2.mpq(u.value).numerator), int(gmpy2.mpq(u.value).denominator))
        assert abs(exact - Fraction(10, 27)) < Fraction(1, 10**25)

    def test_regression_target(self):
        u = universal_product(10**5)
        assert abs(float(u.value) - C_REF) <= float(u.value) * u.error_bound

    def test_prime_zeta_oracle(self):
        # independent route: prime-zeta accelerated log-product
        c = prime_zeta_universal_constant()
        assert abs(c - C_REF) < 1e-12
        u = universal_product(10**5)
        assert float(u.value) * (1 - u.error_bound) <= c <= float(u.value) * (1 + u.error_bound)

    def test_monotone_refinement(self):
        values = [universal_product(10**j) for j in range(3, 8)]
        for a, b in zip(values, values[1:]):
            assert b.error_bound < a.error_bound
            assert abs(float(b.value) - float(a.value)) < float(a.value) * a.error_bound

    def test_rejects_small_limit(self):
        with pytest.raises(ValueError):
            universal_product(1)


class TestCh:
    def test_rational_part_is_exact(self):
        assert c_h(1, 10**4).exact_factor == Fraction(11, 8)
        assert c_h(2, 10**4).exact_factor == Fraction(3)  # 11/8 * 24/11

    def test_ratio_to_universal_product(self):
        u = universal_product(10**4)
        one = c_h(1, 10**4)
        # 11/8 is exactly representable in binary, so the ratio is clean
        # up to one 96-bit rounding
        assert abs(float(one.value) / float(u.value) - 1.375) < 1e-15

    def test_ratios_are_f_values(self):
        base = c_h(1, 10**4)
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
            assert c_h(p, 10**4).exact_factor / base.exact_factor == f_browning(p)

    def test_agrees_with_delta_route(self):
        # c_h = delta(h) * C, via the closed-form delta on the diagonal
        for h in range(1, 101):
            assert c_h(h, 100).exact_factor == delta_h(h)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            c_h(0)


class TestLeadingConstantGeneral:
    def test_diagonal_matches_c_h(self):
        for h in (1, 2, 3, 6, 10):
            g = leading_constant_general(h, h, 60, 10**4)
            c = c_h(h, 10**4)
            tol = float(g.value) * g.error_bound + float(c.value) * c.error_bound
            assert abs(float(g.value) - float(c.value)) <= tol

    def test_symmetry(self):
        a = leading_constant_general(3, 5, 50, 10**3)
        b = leading_constant_general(5, 3, 50, 10**3)
        assert a.value == b.value and a.exact_factor == b.exact_factor

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            leading_constant_general(0, 1)


def test_tail_majorant_covers_prime_tail():
    # sum_{p > P} 3/p^2 <= 3/(P ln P)(1 + 2/ln P), checked numerically by
    # comparing partial sums against the majorant gap at two cut points
    import math

    ps = primes_up_to(10**6).tolist()
    for P in (10**3, 10**4, 10**5):
        tail = sum(3.0 / (p * p) for p in ps if p > P)
        majorant = 3.0 / (P * math.log(P)) * (1.0 + 2.0 / math.log(P))
        assert tail < majorant
