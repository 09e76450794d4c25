"""Counting constants of the determinant method.

L_m(k) = #{alpha in N^m : |alpha| = k} and D_m(k) = #{|alpha| <= k} drive
everything else: the Taylor order r bracketing mu = D_n(d), the determinant
exponent e, the height exponent V, and the covering exponent eps = mV/e.
The rho-bound is handled as the exact integer inequality p^(alpha*e) >
mu! * T^V; no real number rho is ever materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith_core import val_factorial
from .errors import ConfigError


def lambda_count(m, k):
    """Number of exponent vectors in N^m of total degree exactly k."""
    if m < 1 or k < 0:
        raise ConfigError("need m >= 1 and k >= 0")
    return math.comb(k + m - 1, m - 1)


def delta_count(m, k):
    """Number of exponent vectors in N^m of total degree at most k."""
    if m < 1 or k < 0:
        raise ConfigError("need m >= 1 and k >= 0")
    return math.comb(k + m, m)


def r_of(m, n, d):
    """The unique r with D_m(r-1) <= D_n(d) < D_m(r)."""
    mu = delta_count(n, d)
    r = 1
    while not (delta_count(m, r - 1) <= mu < delta_count(m, r)):
        r += 1
        if r > mu + 1:
            raise ConfigError(f"no bracketing r found for (m,n,d)=({m},{n},{d})")
    return r


def e_of(m, n, d):
    """Determinant valuation exponent: sum k*L_m(k) over k < r, plus
    r*(mu - D_m(r-1))."""
    mu = delta_count(n, d)
    r = r_of(m, n, d)
    return sum(k * lambda_count(m, k) for k in range(r)) + r * (mu - delta_count(m, r - 1))


def V_of(n, d):
    """Height exponent of the expanded determinant: sum k*L_n(k), k <= d."""
    return sum(k * lambda_count(n, k) for k in range(d + 1))


def epsilon_of(m, n, d):
    """Covering exponent m*V/e as an exact rational."""
    return Fraction(m * V_of(n, d), e_of(m, n, d))


@dataclass(frozen=True)
class DetSetup:
    """All constants of one determinant-method configuration."""

    m: int
    n: int
    d: int
    mu: int
    r: int
    e: int
    V: int
    epsilon: Fraction

    @classmethod
    def for_dims(cls, m, n, d):
        if m < 1 or n < 1 or d < 1:
            raise ConfigError("need m, n, d >= 1")
        mu = delta_count(n, d)
        r = r_of(m, n, d)
        e = e_of(m, n, d)
        V = V_of(n, d)
        return cls(m, n, d, mu, r, e, V, Fraction(m * V, e))

    def check_bracketing(self):
        return delta_count(self.m, self.r - 1) <= self.mu < delta_count(self.m, self.r)


def alpha_bound(setup, T, p):
    """Minimal alpha >= 0 with p^(alpha*e) > mu! * T^V.

    Balls of valuative radius alpha then force every mu-point monomial
    determinant of height-T points to vanish.  Exact big-integer comparison.
    """
    if T < 2:
        T = 2
    rhs = math.factorial(setup.mu) * T ** setup.V
    alpha = 0
    lhs = 1
    step = p ** setup.e
    while lhs <= rhs:
        lhs *= step
        alpha += 1
    return alpha


def legendre_check(p, n, r, i_max):
    """Check the printed inequality |n|^r / |i!| <= 1 for 1 <= i <= i_max,
    i.e. r * v_p(n) >= v_p(i!) throughout the range.

    The inequality fails for large i at fixed n, which is why the range is
    an explicit argument here.
    """
    from .arith_core import val_int

    vn = val_int(n, p)
    if vn == 0 or vn is math.inf:
        raise ConfigError("p must divide n")
    need = r * vn
    return all(val_factorial(i, p) <= need for i in range(1, i_max + 1))


def select_divisibility(p, r, i_max):
    """The artifact's concretization of 'sufficiently divisible': the least
    k >= 1 with r*k >= v_p(i_max!), so n = p^k passes legendre_check."""
    k = max(1, -(-val_factorial(i_max, p) // r))
    return k
