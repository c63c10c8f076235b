"""Legendre symbols and Lucas sequences u_n(A, B), exact and modular.

The sequences used by the congruence suites all have B = 1 and A = m - 2 for
m in {1, 2, 3}, which makes them purely periodic with tiny periods; that fast
path is used for the modular evaluator and cross-checked against the generic
fast-doubling path in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactcore import require_odd_prime
from .padic import PadicApprox, PadicCtx


@dataclass(frozen=True)
class LucasParams:
    """Coefficients of u_n = a*u_{n-1} - b*u_{n-2} with u_0 = 0, u_1 = 1."""

    a: int
    b: int = 1

    @property
    def discriminant(self) -> int:
        return self.a * self.a - 4 * self.b


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, computed by reciprocity."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd n >= 1, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p): 0 when p | a, else +-1 by quadratic residuosity."""
    require_odd_prime(p)
    return jacobi(a, p)


# Exact periodic orbits of u_n(a, 1) for the degenerate discriminants.
_PERIODIC_ORBITS = {
    -1: (0, 1, -1),
    0: (0, 1, 0, -1),
    1: (0, 1, 1, 0, -1, -1),
}


def lucas_u(n: int, params: LucasParams) -> int:
    """Exact u_n; negative indices use u_{-n} = -u_n, which needs b = 1."""
    if n < 0:
        if params.b != 1:
            raise ValueError("negative indices are only defined for b = 1")
        return -lucas_u(-n, params)
    if params.b == 1 and params.a in _PERIODIC_ORBITS:
        orbit = _PERIODIC_ORBITS[params.a]
        return orbit[n % len(orbit)]
    if n == 0:
        return 0
    u0, u1 = 0, 1
    for _ in range(n - 1):
        u0, u1 = u1, params.a * u1 - params.b * u0
    return u1


def _u_pair_mod(n: int, a: int, b: int, mod: int) -> tuple[int, int]:
    """(u_n, u_{n+1}) mod `mod` by fast doubling, O(log n) multiplications."""
    if n == 0:
        return 0, 1 % mod
    un, un1 = _u_pair_mod(n >> 1, a, b, mod)
    u2k = un * (2 * un1 - a * un) % mod
    u2k1 = (un1 * un1 - b * un * un) % mod
    if n & 1:
        return u2k1, (a * u2k1 - b * u2k) % mod
    return u2k, u2k1


def lucas_u_mod(n: int, params: LucasParams, ctx: PadicCtx) -> PadicApprox:
    """u_n modulo p^prec; n may be astronomically large.

    For b = 1 and a in {-1, 0, 1} the orbit is periodic with period 3, 4 or 6
    and the value is looked up directly; otherwise fast doubling is used.
    """
    if n < 0:
        if params.b != 1:
            raise ValueError("negative indices are only defined for b = 1")
        return lucas_u_mod(-n, params, ctx).neg()
    if params.b == 1 and params.a in _PERIODIC_ORBITS:
        orbit = _PERIODIC_ORBITS[params.a]
        return PadicApprox.from_residue(ctx, orbit[n % len(orbit)])
    un, _ = _u_pair_mod(n, params.a, params.b, ctx.modulus)
    return PadicApprox.from_residue(ctx, un)


def lucas_period(m: int) -> int:
    """Exact period of n -> u_n(m-2, 1) for m in {1, 2, 3}."""
    periods = {1: 3, 2: 4, 3: 6}
    if m not in periods:
        raise ValueError(f"u_n(m-2, 1) is periodic only for m in {{1,2,3}}, got {m}")
    return periods[m]
