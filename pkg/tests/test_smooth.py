"""smooth module: psi counting, smooth enumeration, weighted sums, bound check."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from divisorlab import (
    SmoothQuery,
    psi,
    smooth_iter,
    smooth_numbers,
    smooth_weighted_sum,
    smoothness_bound_check,
)
from oracles import psi_filter


class TestPsi:
    def test_y_one(self):
        for x in (1, 7, 1000):
            assert psi(x, 1) == 1

    def test_all_smooth(self):
        assert psi(10, 10) == 10
        for x in (1, 2, 57, 300, 4096):
            assert psi(x, x) == x
            assert psi(x, 2 * x) == x  # y above x changes nothing

    def test_hundred_three(self):
        assert psi(100, 3) == 20

    def test_powers_of_two(self):
        for x in (1, 2, 3, 64, 100, 10**4, 10**6):
            assert psi(x, 2) == int(math.log2(x)) + 1

    def test_monotone(self):
        for x, y in ((100, 5), (999, 30)):
            assert psi(x + 1, y) >= psi(x, y)
            assert psi(x, y + 1) >= psi(x, y)

    def test_recursion_vs_filter(self, gpf_10k, rng):
        # recursive generator against the greatest-prime-factor filter
        ys = [1, 2, 3, 5, 7, 11, 20, 97, 1000, 10**4]
        xs = sorted(set(rng.integers(1, 10**4 + 1, size=40).tolist()) | {1, 2, 10**4})
        for y in ys:
            for x in xs:
                assert psi(x, y) == psi_filter(x, y, gpf_10k)

    def test_exhaustive_small(self, gpf_10k):
        for x in range(1, 200):
            for y in (1, 2, 3, 4, 5, 13, 50):
                assert psi(x, y) == psi_filter(x, y, gpf_10k)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            psi(0, 3)
        with pytest.raises(ValueError):
            psi(3, 0)


class TestSmoothEnumeration:
    def test_small_set(self):
        assert smooth_numbers(30, 3) == [1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27]

    def test_counts_match_psi(self):
        for x, y in ((100, 3), (500, 7), (1000, 31)):
            assert len(smooth_numbers(x, y)) == psi(x, y)

    def test_omega_annotations(self):
        for d, om in smooth_iter(200, 10):
            assert om == len([p for p in (2, 3, 5, 7) if d % p == 0])


class TestSmoothWeightedSum:
    def test_frozen_example(self):
        assert smooth_weighted_sum(16, 2, Fraction(1, 2)) == Fraction(9, 16)

    def test_delta_one_empty(self):
        assert smooth_weighted_sum(100, 5, 1) == 0

    def test_against_double_enumeration(self):
        # independent oracle: filter all integers directly
        x, y, delta = 10**4, 100, Fraction(1, 2)
        cutoff = 100  # x^(1/2)
        expected = Fraction(0)
        for d in range(cutoff + 1, x + 1):
            m, om = d, 0
            for p in range(2, y + 1):
                if m % p == 0:
                    om += 1
                    while m % p == 0:
                        m //= p
            if m == 1:
                expected += Fraction(3**om, d)
        assert smooth_weighted_sum(x, y, delta) == expected

    def test_decreasing_in_delta(self):
        x, y = 2000, 13
        vals = [smooth_weighted_sum(x, y, d) for d in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))
        assert vals[0] > vals[1]

    def test_increasing_in_y(self):
        # smaller smoothness cutoffs kill the sum
        x, delta = 10**4, Fraction(1, 2)
        vals = [smooth_weighted_sum(x, y, delta) for y in (5, 20, 100, 10**4)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))
        assert vals[0] < vals[-1]

    @given(st.integers(2, 500), st.integers(1, 60))
    def test_exact_cutoff_semantics(self, x, y):
        total = smooth_weighted_sum(x, y, Fraction(1, 2))
        direct = Fraction(0)
        for d, om in smooth_iter(x, y):
            if d * d > x:
                direct += Fraction(3**om, d)
        assert total == direct

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            smooth_weighted_sum(1, 2, Fraction(1, 2))
        with pytest.raises(ValueError):
            smooth_weighted_sum(10, 0, Fraction(1, 2))
        with pytest.raises(ValueError):
            smooth_weighted_sum(10, 2, Fraction(3, 2))
        with pytest.raises(ValueError):
            smooth_weighted_sum(10, 2, 0)


class TestSmoothQuery:
    def test_valid(self):
        q = SmoothQuery(100, 10, Fraction(1, 2))
        assert q.delta == Fraction(1, 2)
        assert SmoothQuery(100, 10).delta is None

    def test_invalid(self):
        with pytest.raises(ValueError):
            SmoothQuery(0, 10)
        with pytest.raises(ValueError):
            SmoothQuery(100, 10, Fraction(2, 1))


class TestBoundCheck:
    def test_u_two(self):
        chk = smoothness_bound_check(10**6, 10**3)
        assert abs(chk.u - 2.0) < 1e-12
        assert chk.psi_value == psi(10**6, 10**3)
        assert chk.satisfied

    def test_u_one_boundary(self):
        chk = smoothness_bound_check(100, 100)
        assert chk.psi_value == 100
        assert chk.bound >= 100  # needs constant >= 1
        assert chk.satisfied

    def test_sweep_at_1e5(self):
        # y = 10 gives u = 5, outside the admissible range at x = 1e5
        for y in (30, 100, 300):
            assert smoothness_bound_check(10**5, y).satisfied

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            smoothness_bound_check(10**5, 10)  # u = 5 > 0.9 ln x / ln ln x
        with pytest.raises(ValueError):
            smoothness_bound_check(100, 200)  # u < 1
        with pytest.raises(ValueError):
            smoothness_bound_check(2, 2)
