"""Exact arithmetic primitives: binomials, rising factorials, p-adic valuations.

Everything in this module is ground truth for the rest of the package: plain
Python integers (arbitrary precision) and ``fractions.Fraction`` (always in
lowest terms, positive denominator), no floating point anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Union

# The oracle number types.  Python ints are unbounded; Fraction keeps the
# lowest-terms / positive-denominator invariants for us.
ExactInt = int
ExactRat = Fraction
RatLike = Union[int, Fraction]

#: Valuation of zero.
INF = math.inf


class NotPIntegralError(ValueError):
    """A rational with negative p-adic valuation reached a p-integral context.

    This is a meaningful detector, not just a guard: it is how degenerate
    inputs (e.g. a series evaluated at m with p | m) announce themselves.
    """


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_PRIMALITY_LIMIT = 1 << 64


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin test, valid for all n < 2**64."""
    if n >= _PRIMALITY_LIMIT:
        raise ValueError(f"primality test supports n < 2**64 only, got {n}")
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")


def require_odd_prime(p: int) -> None:
    require_prime(p)
    if p == 2:
        raise ValueError("p = 2 is out of scope; only odd primes are supported")


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0, with C(n, k) = 0 when k < 0 or k > n.

    The out-of-range convention matters: several identity right-hand sides
    sum binomials past their natural support and rely on the zero terms.
    """
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n = {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def pochhammer(a: RatLike, k: int) -> Fraction:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1."""
    if k < 0:
        raise ValueError(f"pochhammer requires k >= 0, got k = {k}")
    a = Fraction(a)
    acc = Fraction(1)
    for i in range(k):
        acc *= a + i
    return acc


def vp_int(n: int, p: int) -> int:
    """Exponent of p in a nonzero integer (p >= 2 assumed, not checked)."""
    if n == 0:
        raise ValueError("vp_int needs a nonzero integer")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x: RatLike, p: int) -> int | float:
    """p-adic valuation of a rational: vp(num) - vp(den), and INF for zero."""
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


class CongruenceVerdict(NamedTuple):
    holds: bool
    achieved: int | float  # exact valuation of the difference; INF when equal


def rat_congruent(x: RatLike, y: RatLike, p: int, e: int) -> CongruenceVerdict:
    """Decide x ≡ y (mod p^e) for p-integral rationals.

    The congruence is vp(x - y) >= e.  Inputs with negative valuation raise
    NotPIntegralError rather than returning False: "the statement is
    ill-posed" is a different answer than "the congruence fails".
    """
    require_prime(p)
    if e < 1:
        raise ValueError(f"required exponent must be >= 1, got {e}")
    x = Fraction(x)
    y = Fraction(y)
    for side, name in ((x, "left"), (y, "right")):
        if side != 0 and vp_int(side.denominator, p) > 0:
            raise NotPIntegralError(
                f"{name} side {side} is not p-integral at p = {p}"
            )
    achieved = vp(x - y, p)
    return CongruenceVerdict(achieved >= e, achieved)
