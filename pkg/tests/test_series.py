import math
from fractions import Fraction

import pytest

from asdcong.exactcore import NotPIntegralError, vp
from asdcong.padic import PadicCtx, from_rational
from asdcong.series import (
    HyperSpec,
    SeriesSpec,
    apery,
    central_binomial_stream,
    hyper_truncated_exact,
    s_sum_exact,
    s_sum_mod,
    s_sum_mod_with_checkpoints,
)


def brute_s_sum(N, m, sign=1):
    """Independent oracle: explicit central binomials, no ratio recurrence."""
    return sum(Fraction(sign**k * math.comb(2 * k, k), m**k) for k in range(N))


def carries_adding_k_plus_k(k, p):
    """Kummer oracle: carries when adding k + k in base p."""
    carries = 0
    carry = 0
    while k or carry:
        digit = 2 * (k % p) + carry
        carry = 1 if digit >= p else 0
        carries += carry
        k //= p
    return carries


class TestSeriesSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            SeriesSpec(0)
        with pytest.raises(ValueError):
            SeriesSpec(1, "signed")
        assert SeriesSpec(3).variant == "corrected"


class TestSSumExact:
    def test_examples(self):
        assert s_sum_exact(1, SeriesSpec(17)) == 1
        assert s_sum_exact(0, SeriesSpec(3)) == 0
        assert s_sum_exact(5, SeriesSpec(1)) == 99  # 1+2+6+20+70
        assert s_sum_exact(3, SeriesSpec(4)) == Fraction(15, 8)
        assert s_sum_exact(5, SeriesSpec(1, "literal")) == 55  # 1-2+6-20+70

    def test_matches_brute_force(self):
        for m in (1, -1, 2, 3, 5, -7):
            for N in (0, 1, 2, 7, 40, 150):
                assert s_sum_exact(N, SeriesSpec(m)) == brute_s_sum(N, m)
                assert s_sum_exact(N, SeriesSpec(m, "literal")) == brute_s_sum(N, m, -1)


class TestSSumMod:
    def test_examples(self):
        out = s_sum_mod(5, SeriesSpec(1), PadicCtx(5, 2))
        assert out.residue() == 24  # 99 = -1 mod 25

        out = s_sum_mod(3, SeriesSpec(2), PadicCtx(3, 2))
        assert out.residue() == 8  # 7/2 = 8 mod 9

        assert s_sum_mod(0, SeriesSpec(9), PadicCtx(5, 3)).is_zero_class()

    def test_p_divides_m_rejected(self):
        with pytest.raises(NotPIntegralError):
            s_sum_mod(4, SeriesSpec(10), PadicCtx(5, 2))

    def test_matches_oracle(self):
        for p, prec in ((3, 5), (5, 4), (7, 3)):
            ctx = PadicCtx(p, prec)
            for m in (1, 2, 3, 4, -5, 9):
                if m % p == 0:
                    continue
                for variant in ("corrected", "literal"):
                    spec = SeriesSpec(m, variant)
                    for N in (0, 1, 2, p, 3 * p**2, 500):
                        expected = from_rational(s_sum_exact(N, spec), ctx)
                        assert s_sum_mod(N, spec, ctx) == expected

    def test_checkpoints(self):
        ctx = PadicCtx(7, 4)
        spec = SeriesSpec(3)
        final, parts = s_sum_mod_with_checkpoints(300, spec, ctx, (0, 50, 300))
        assert parts[0].is_zero_class()
        assert parts[50] == from_rational(s_sum_exact(50, spec), ctx)
        assert parts[300] == final == from_rational(s_sum_exact(300, spec), ctx)


class TestCentralBinomialStream:
    def test_examples(self):
        ctx = PadicCtx(5, 2)
        values = list(central_binomial_stream(ctx, 3))
        assert values[0].residue() == 1
        assert (values[3].v, values[3].u) == (1, 4)  # C(6,3) = 20 = 5 * 4

    def test_matches_exact_binomials(self):
        for p in (3, 5, 7):
            ctx = PadicCtx(p, 4)
            for k, approx in enumerate(central_binomial_stream(ctx, 2000)):
                assert approx == from_rational(math.comb(2 * k, k), ctx)

    def test_kummer_carry_valuations(self):
        # The tracked valuation is the carry count of k + k in base p.
        for p in (3, 5, 7):
            ctx = PadicCtx(p, 25)  # deep enough that no valuation saturates
            for k, approx in enumerate(central_binomial_stream(ctx, 2000)):
                assert approx.v == carries_adding_k_plus_k(k, p)
                assert approx.v == vp(math.comb(2 * k, k), p)


class TestHyperTruncated:
    def test_examples(self):
        half = Fraction(1, 2)
        assert hyper_truncated_exact(HyperSpec([half], [], 1), 0) == 1
        assert hyper_truncated_exact(HyperSpec([half], [], 4), 4) == 99
        assert hyper_truncated_exact(HyperSpec([half], [], 1), 2) == Fraction(15, 8)

    def test_pochhammer_bridge(self):
        # 1F0[1/2; 4/m] truncated at N-1 equals the N-term central sum.
        for m in (1, 2, 3, 4, 5):
            spec = HyperSpec([Fraction(1, 2)], [], Fraction(4, m))
            for N in range(1, 301):
                assert hyper_truncated_exact(spec, N - 1) == s_sum_exact(N, SeriesSpec(m))

    def test_multi_parameter(self):
        # 2F1[1, 1; 2 | z] truncated: sum z^k/(k+1).
        spec = HyperSpec([1, 1], [2], Fraction(1, 3))
        expected = sum(Fraction(1, 3) ** k / (k + 1) for k in range(6))
        assert hyper_truncated_exact(spec, 5) == expected

    def test_vanishing_lower_parameter(self):
        spec = HyperSpec([Fraction(1, 2)], [-2], 1)
        assert hyper_truncated_exact(spec, 2) is not None
        with pytest.raises(ValueError):
            hyper_truncated_exact(spec, 3)

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            hyper_truncated_exact(HyperSpec([1], [], 1), -1)


class TestApery:
    def test_examples(self):
        assert apery(0) == 1
        assert apery(1) == 5
        assert apery(4) == 33001

    def test_recurrence_oracle(self):
        # Independent route: (n+1)^3 A_{n+1} = (34n^3+51n^2+27n+5) A_n - n^3 A_{n-1}.
        a_prev, a_here = 1, 5
        for n in range(1, 60):
            rhs = (34 * n**3 + 51 * n**2 + 27 * n + 5) * a_here - n**3 * a_prev
            a_next, rem = divmod(rhs, (n + 1) ** 3)
            assert rem == 0
            assert apery(n + 1) == a_next
            a_prev, a_here = a_here, a_next

    def test_strictly_increasing(self):
        values = [apery(n) for n in range(61)]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert all(v > 0 for v in values)
