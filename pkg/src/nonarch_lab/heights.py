"""Height functions and brute-force enumeration of bounded-height points.

H_0 of a rational r/s in lowest terms is max(|r|, |s|); the polynomial
height of x at degree k is the minimal H_0 over nonzero integer tuples a
with sum a_i x^i = 0.  Point sets of polynomially-defined subsets of Q^n
are enumerated over the exact candidate grid of rationals of height <= T.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .arith_core import MultiPoly, val_fraction
from .errors import CapExceededError, ConfigError


class NotFound:
    """Stands for 'height exceeds the search bound' (the +infinity case)."""

    def __repr__(self):
        return "NotFound"


NOT_FOUND = NotFound()


def h0(x):
    """Height of a rational (or tuple of rationals): max(|num|, |den|) in
    lowest terms; h0(0) = 1."""
    if isinstance(x, (tuple, list)):
        return max(h0(c) for c in x)
    x = Fraction(x)
    return max(abs(x.numerator), x.denominator, 1)


def hk_poly(x, k, T_max, cap=10**8):
    """Minimal H_0 over nonzero integer tuples (a_0..a_k) with
    sum a_i x^i = 0 and H_0 <= T_max; NOT_FOUND encodes '> T_max'.

    Scans candidate heights h = 1..T_max and exhausts the tuples with
    H_0 exactly h, so the first hit is minimal.
    """
    if k < 1 or T_max < 1:
        raise ConfigError("need k >= 1 and T_max >= 1")
    x = Fraction(x)
    powers = [x ** i for i in range(k + 1)]
    seen = 0
    for h in range(1, T_max + 1):
        seen += (2 * h + 1) ** (k + 1)
        if seen > cap:
            raise CapExceededError(f"hk_poly search exceeded cap {cap}")
        for a in itertools.product(range(-h, h + 1), repeat=k + 1):
            if max(abs(c) for c in a) != h:
                continue
            if sum(c * pw for c, pw in zip(a, powers)) == 0:
                return h
    return NOT_FOUND


def enumerate_heights(T):
    """All rationals with h0 <= T, each exactly once, ordered by
    (h0, |numerator|, sign, denominator)."""
    if T < 1:
        raise ConfigError("need T >= 1")
    from math import gcd

    for h in range(1, T + 1):
        batch = set()
        if h == 1:
            batch.update([Fraction(0), Fraction(1), Fraction(-1)])
        else:
            for a in range(1, h + 1):
                if gcd(a, h) == 1:
                    batch.add(Fraction(a, h))
                    batch.add(Fraction(-a, h))
            for b in range(1, h):
                if gcd(h, b) == 1:
                    batch.add(Fraction(h, b))
                    batch.add(Fraction(-h, b))
        for q in sorted(batch, key=lambda q: (abs(q.numerator), q < 0, q.denominator)):
            yield q


@dataclass(frozen=True)
class PadicConstraint:
    """ord_p(g(x)) >= c, or angular component of g(x) at given depth = value."""

    poly: MultiPoly
    kind: str  # "ord_ge" | "ac_eq"
    c: int = 0
    depth: int = 1
    value: int = 0

    def holds(self, point, p):
        g = self.poly.eval(point)
        if self.kind == "ord_ge":
            return val_fraction(g, p) >= self.c
        if self.kind == "ac_eq":
            if g == 0:
                return self.value % p ** self.depth == 0
            v = val_fraction(g, p)
            unit = g / Fraction(p) ** v
            from .arith_core import rational_residue
            return rational_residue(unit, p, self.depth) == self.value % p ** self.depth
        raise ConfigError(f"unknown constraint kind {self.kind!r}")


@dataclass
class SemialgSpec:
    """Polynomial equations/inequations over Q plus optional exact p-adic
    valuation constraints; all decidable exactly on rational points."""

    nvars: int
    equations: list = field(default_factory=list)
    inequations: list = field(default_factory=list)
    p: int | None = None
    constraints: list = field(default_factory=list)

    def accepts(self, point):
        for eq in self.equations:
            if eq.eval(point) != 0:
                return False
        for ineq in self.inequations:
            if ineq.eval(point) == 0:
                return False
        for c in self.constraints:
            if self.p is None:
                raise ConfigError("p-adic constraints need a designated prime")
            if not c.holds(point, self.p):
                return False
        return True


def _grid_points(X, values, cap):
    if X.nvars > 4:
        raise ConfigError("point enumeration is limited to n <= 4 variables")
    total = len(values) ** X.nvars
    if total > cap:
        raise CapExceededError(f"candidate grid of size {total} exceeds cap {cap}")
    out = []
    for point in itertools.product(values, repeat=X.nvars):
        if X.accepts(point):
            out.append(tuple(point))
    return out


def points_Q(X, T, cap=10**7):
    """Members of X with rational coordinates of height <= T, in the
    deterministic grid order."""
    values = list(enumerate_heights(T))
    return _grid_points(X, values, cap)


def points_Z(X, T, cap=10**7):
    """Members of X with integer coordinates of absolute value <= T."""
    values = [Fraction(v) for v in range(-T, T + 1)]
    return _grid_points(X, values, cap)


def points_k(X, k, T, cap=10**7, hk_cap=10**8):
    """Members of X with rational coordinates of polynomial height
    H_k <= T (only rational coordinates are enumerated).

    For a rational a/b in lowest terms every integer relation is a multiple
    of (b*x - a) by Gauss's lemma, so H_k = h0 on Q and the height-T grid
    is a complete candidate set; hk_poly is still evaluated per coordinate
    as a cross-check.
    """
    if k < 1:
        raise ConfigError("need k >= 1")
    values = list(enumerate_heights(T))
    pts = _grid_points(X, values, cap)
    out = []
    for pt in pts:
        hk = max(hk_poly(c, k, T, cap=hk_cap) for c in pt)
        if not isinstance(hk, NotFound) and hk <= T:
            out.append(pt)
    return out
