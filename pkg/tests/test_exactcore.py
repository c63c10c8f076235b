import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asdcong.exactcore import (
    INF,
    NotPIntegralError,
    binomial,
    is_prime,
    pochhammer,
    rat_congruent,
    vp,
)

SMALL_PRIMES = (3, 5, 7, 11, 13)


def pascal_rows(n_max):
    """Independent binomial oracle: Pascal's triangle built row by row."""
    row = [1]
    yield row
    for _ in range(n_max):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
        yield row


def trial_division_valuation(n, p):
    """Independent valuation oracle."""
    assert n != 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class TestBinomial:
    def test_small_cases(self):
        assert binomial(6, 3) == 20
        assert binomial(0, 0) == 1
        assert binomial(4, 5) == 0
        assert binomial(4, -1) == 0

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            binomial(-1, 0)

    def test_matches_pascal_triangle(self):
        for n, row in enumerate(pascal_rows(200)):
            for k, expected in enumerate(row):
                assert binomial(n, k) == expected

    def test_addition_recurrence(self):
        for n in range(1, 201):
            for k in range(1, n + 1):
                assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


class TestPochhammer:
    def test_small_cases(self):
        assert pochhammer(Fraction(1, 2), 0) == 1
        assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
        assert pochhammer(-2, 3) == 0

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            pochhammer(1, -1)

    def test_central_binomial_bridge(self):
        # (1/2)_k 4^k / k! = C(2k, k): the link between the 1F0 terms and
        # the central binomial sums.
        for k in range(501):
            lhs = pochhammer(Fraction(1, 2), k) * 4**k / math.factorial(k)
            assert lhs == binomial(2 * k, k)


class TestVp:
    def test_examples(self):
        assert vp(33000, 5) == trial_division_valuation(33000, 5) == 3
        assert vp(0, 7) == INF
        assert vp(Fraction(7, 2), 3) == 0
        assert vp(Fraction(15, 8), 2) == -3
        assert vp(Fraction(1, 9), 3) == -2

    def test_non_prime_rejected(self):
        for bad in (1, 6, 0, -3):
            with pytest.raises(ValueError):
                vp(10, bad)

    @given(
        p=st.sampled_from(SMALL_PRIMES),
        a=st.integers(-(10**6), 10**6).filter(lambda x: x != 0),
        b=st.integers(-(10**6), 10**6).filter(lambda x: x != 0),
        c=st.integers(1, 10**6),
        d=st.integers(1, 10**6),
    )
    @settings(max_examples=150, deadline=None)
    def test_multiplicative_and_ultrametric(self, p, a, b, c, d):
        x = Fraction(a, c)
        y = Fraction(b, d)
        assert vp(x * y, p) == vp(x, p) + vp(y, p)
        if x + y != 0:
            lo = min(vp(x, p), vp(y, p))
            assert vp(x + y, p) >= lo
            if vp(x, p) != vp(y, p):
                assert vp(x + y, p) == lo


class TestRatCongruent:
    def test_examples(self):
        holds, achieved = rat_congruent(99, -1, 5, 2)
        assert holds and achieved == 2  # 99 + 1 = 100 = 4 * 5^2
        holds, achieved = rat_congruent(5, -1, 5, 2)
        assert not holds and achieved == 0  # 5 + 1 = 6, coprime to 5
        holds, achieved = rat_congruent(Fraction(7, 3), Fraction(7, 3), 11, 4)
        assert holds and achieved == INF

    def test_not_p_integral_raises(self):
        with pytest.raises(NotPIntegralError):
            rat_congruent(Fraction(1, 5), 0, 5, 1)
        with pytest.raises(NotPIntegralError):
            rat_congruent(0, Fraction(3, 25), 5, 1)

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            rat_congruent(1, 1, 4, 1)
        with pytest.raises(ValueError):
            rat_congruent(1, 1, 5, 0)

    @given(
        p=st.sampled_from(SMALL_PRIMES),
        e=st.integers(1, 4),
        nums=st.tuples(*(st.integers(-500, 500) for _ in range(3))),
        dens=st.tuples(*(st.integers(1, 60) for _ in range(3))),
    )
    @settings(max_examples=150, deadline=None)
    def test_equivalence_relation(self, p, e, nums, dens):
        def integralize(num, den):
            while den % p == 0:
                den //= p
            return Fraction(num, den)

        x, y, z = (integralize(n, d) for n, d in zip(nums, dens))
        assert rat_congruent(x, x, p, e).holds
        assert rat_congruent(x, y, p, e).holds == rat_congruent(y, x, p, e).holds
        if rat_congruent(x, y, p, e).holds and rat_congruent(y, z, p, e).holds:
            assert rat_congruent(x, z, p, e).holds


class TestIsPrime:
    def test_small_values(self):
        primes_below_100 = [n for n in range(100) if is_prime(n)]
        sieve = [True] * 100
        sieve[0] = sieve[1] = False
        for i in range(2, 10):
            if sieve[i]:
                for j in range(i * i, 100, i):
                    sieve[j] = False
        assert primes_below_100 == [n for n in range(100) if sieve[n]]

    def test_large_values(self):
        assert is_prime(2**61 - 1)
        assert not is_prime((2**31 - 1) * (2**31 + 11))
        with pytest.raises(ValueError):
            is_prime(2**64)

    def test_random_semiprimes(self):
        rng = random.Random(7)
        small = [p for p in range(3, 1000) if is_prime(p)]
        for _ in range(200):
            a, b = rng.choice(small), rng.choice(small)
            assert not is_prime(a * b)
