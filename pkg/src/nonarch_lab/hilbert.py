"""Monomial order, small-scale Buchberger, Hilbert functions, exponent
statistics of standard monomials, and the (delta, alpha) selection for the
curve-case determinant argument.

The fixed monomial order is degree-first; at equal degree the monomial with
the larger exponent at the first differing index is the smaller one (a
reverse graded lexicographic order up to reindexing).  No reindexing search
is performed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith_core import MultiPoly
from .errors import BudgetExceededError, ConfigError


def grevlex_key(exp):
    """Sort key realizing the fixed order: tuples compare by total degree,
    then lexicographically on negated exponents."""
    return (sum(exp), tuple(-e for e in exp))


def compare_order(a, b):
    """-1, 0, +1 for the fixed monomial order."""
    if len(a) != len(b):
        raise ConfigError("exponent arity mismatch")
    ka, kb = grevlex_key(a), grevlex_key(b)
    return -1 if ka < kb else (0 if ka == kb else 1)


def monomials_of_degree(nvars, s):
    """Exponent vectors of total degree exactly s, grevlex-sorted."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    if nvars == 0:
        return [()] if s == 0 else []
    rec([], s, nvars)
    out.sort(key=grevlex_key)
    return out


def delta_exponents(n, d):
    """Exponent vectors in N^n of total degree <= d, grevlex-sorted."""
    out = []
    for s in range(d + 1):
        out.extend(monomials_of_degree(n, s))
    out.sort(key=grevlex_key)
    return out


# ---------------------------------------------------------------------------
# Buchberger at desk scale
# ---------------------------------------------------------------------------

def leading_term(f):
    if f.is_zero():
        raise ConfigError("zero polynomial has no leading term")
    exp = max(f.terms, key=grevlex_key)
    return exp, f.terms[exp]


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _quot(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_mul(f, exp, coeff):
    return MultiPoly(f.nvars,
                     {tuple(e + g for e, g in zip(t, exp)): c * coeff
                      for t, c in f.terms.items()})


def normal_form(f, basis):
    """Full multivariate division remainder of f by the basis."""
    rem = MultiPoly(f.nvars, {})
    work = f
    lts = [leading_term(g) for g in basis]
    while not work.is_zero():
        exp, c = leading_term(work)
        hit = next((i for i, (ge, _) in enumerate(lts) if _divides(ge, exp)), None)
        if hit is None:
            rem = rem + MultiPoly(work.nvars, {exp: c})
            work = work - MultiPoly(work.nvars, {exp: c})
        else:
            ge, gc = lts[hit]
            work = work - _mono_mul(basis[hit], _quot(exp, ge), c / gc)
    return rem


def s_polynomial(f, g):
    fe, fc = leading_term(f)
    ge, gc = leading_term(g)
    lcm = tuple(max(a, b) for a, b in zip(fe, ge))
    return _mono_mul(f, _quot(lcm, fe), 1 / fc) - _mono_mul(g, _quot(lcm, ge), 1 / gc)


def groebner(generators, s_pair_budget=10000):
    """Reduced Groebner basis under the fixed order, exact over Q.

    Plain Buchberger with an S-pair budget; exceeding it raises
    BudgetExceededError rather than truncating silently.
    """
    basis = [g for g in generators if not g.is_zero()]
    if not basis:
        return []
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    processed = 0
    while pairs:
        i, j = pairs.pop(0)
        processed += 1
        if processed > s_pair_budget:
            raise BudgetExceededError(
                f"S-pair budget {s_pair_budget} exceeded")
        # product criterion: coprime leading monomials reduce to zero
        fe, _ = leading_term(basis[i])
        ge, _ = leading_term(basis[j])
        if all(min(a, b) == 0 for a, b in zip(fe, ge)):
            continue
        rem = normal_form(s_polynomial(basis[i], basis[j]), basis)
        if not rem.is_zero():
            basis.append(rem)
            pairs.extend((len(basis) - 1, k) for k in range(len(basis) - 1))
    # minimize
    minimal = []
    lts = [leading_term(g)[0] for g in basis]
    for i, g in enumerate(basis):
        if any(j != i and _divides(lts[j], lts[i]) and
               (not _divides(lts[i], lts[j]) or j < i)
               for j in range(len(basis))):
            continue
        minimal.append(g)
    # reduce and normalize monic
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        rem = normal_form(g, others) if others else g
        if rem.is_zero():
            continue
        _, c = leading_term(rem)
        reduced.append(rem.scale(1 / c))
    reduced.sort(key=lambda g: grevlex_key(leading_term(g)[0]))
    return reduced


class HomIdeal:
    """Homogeneous ideal over Q with a cached reduced Groebner basis."""

    def __init__(self, generators, s_pair_budget=10000):
        gens = []
        for g in generators:
            if g.is_zero():
                continue
            degs = {sum(e) for e in g.terms}
            if len(degs) > 1:
                raise ConfigError("generators must be homogeneous")
            gens.append(g)
        self.generators = gens
        self._budget = s_pair_budget
        self._gb = None

    @property
    def nvars(self):
        if not self.generators:
            raise ConfigError("the zero ideal needs an explicit variable count")
        return self.generators[0].nvars

    def groebner_basis(self):
        if self._gb is None:
            self._gb = groebner(self.generators, self._budget)
        return self._gb

    def leading_exponents(self):
        """Minimal monomial generators of LT(I)."""
        lts = [leading_term(g)[0] for g in self.groebner_basis()]
        minimal = []
        for e in sorted(lts, key=grevlex_key):
            if not any(_divides(f, e) for f in minimal):
                minimal.append(e)
        return minimal


# ---------------------------------------------------------------------------
# Hilbert tables
# ---------------------------------------------------------------------------

@dataclass
class HilbertTable:
    """Standard-monomial statistics of a homogeneous ideal, driven entirely
    by the leading-term exponents (I and LT(I) share the Hilbert function)."""

    nvars: int
    lt_gens: list

    @classmethod
    def from_ideal(cls, ideal):
        return cls(ideal.nvars, ideal.leading_exponents())

    @classmethod
    def from_lt(cls, nvars, lt_gens):
        return cls(nvars, [tuple(e) for e in lt_gens])

    def is_standard(self, exp):
        return not any(_divides(g, exp) for g in self.lt_gens)

    def standard_monomials(self, s):
        return [e for e in monomials_of_degree(self.nvars, s) if self.is_standard(e)]

    def hilbert_function(self, s):
        return len(self.standard_monomials(s))

    def sigma(self, i, s):
        if not 0 <= i < self.nvars:
            raise ConfigError("variable index out of range")
        return sum(e[i] for e in self.standard_monomials(s))

    def sigma_all(self, s):
        mons = self.standard_monomials(s)
        return tuple(sum(e[i] for e in mons) for i in range(self.nvars))

    def a_estimates(self, s):
        """Finite-s ratios sigma_i / (s * H(s)); they sum to 1 exactly."""
        H = self.hilbert_function(s)
        if s < 1 or H == 0:
            raise ConfigError("need s >= 1 with H(s) > 0")
        return tuple(Fraction(x, s * H) for x in self.sigma_all(s))

    def a_extrapolated(self, s):
        """Two-point Richardson extrapolation 2*ratio(2s) - ratio(s)."""
        r1 = self.a_estimates(s)
        r2 = self.a_estimates(2 * s)
        return tuple(2 * b - a for a, b in zip(r1, r2))

    def mu_e(self, delta):
        """Curve-case constants: mu = H(delta), e = mu(mu-1)/2."""
        mu = self.hilbert_function(delta)
        return mu, mu * (mu - 1) // 2


@dataclass
class SalbergerReport:
    s: int
    ratio: Fraction
    bound: Fraction
    ok: bool

    def to_json(self):
        return {"s": self.s, "ratio": str(self.ratio),
                "bound": str(self.bound), "ok": self.ok}


def salberger_check(table, s, m, slack=None):
    """Check (sigma_1 + ... + sigma_n)/(s*H) <= m/(m+1) + slack at finite s
    (default slack 2/s).  Assumes the variety meets x_0 = 0 properly."""
    slack = Fraction(2, s) if slack is None else Fraction(slack)
    H = table.hilbert_function(s)
    sig = table.sigma_all(s)
    ratio = Fraction(sum(sig[1:]), s * H)
    bound = Fraction(m, m + 1) + slack
    return SalbergerReport(s, ratio, bound, ratio <= bound)


def select_delta_alpha(table, d, r, scan_cap=500):
    """Smallest delta admitting an integer alpha with
    (r-1)(sigma_1+sigma_2)/e < alpha <= ceil(r/d), and the smallest such
    alpha; exact rational comparisons."""
    if table.nvars != 3:
        raise ConfigError("the (delta, alpha) selection is for plane curves")
    ceil_rd = -(-r // d)
    last = None
    for delta in range(1, scan_cap + 1):
        mu, e = table.mu_e(delta)
        if mu < 2 or e == 0:
            continue
        sig = table.sigma_all(delta)
        ratio = Fraction((r - 1) * (sig[1] + sig[2]), e)
        last = ratio
        alpha = math.floor(ratio) + 1
        if alpha <= ceil_rd:
            # exact re-check of both inequalities
            assert ratio < alpha <= ceil_rd
            return delta, alpha
    raise ConfigError(
        f"no admissible delta up to {scan_cap}; last ratio {last}")
