"""Function-field point counting: exhaustive enumeration of the degree-<r
F_q[t]-points of a variety, the expanded scheme in r*n scalar variables,
power-law fits of counts across field sizes, and checks of the dimension
bounds delta <= r*m and delta <= r*(m-1) + ceil(r/d).

The defining polynomials live in Z[t][X_1..X_n] and are reduced mod p per
run; membership requires them to vanish identically in F_q[t], so the
expanded scheme has one equation per t-power of the expansion, including
powers >= r.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .arith_core import GF, MultiPoly, OpRing, TruncatedPoly, poly_eval
from .errors import CapExceededError, ConfigError


@dataclass
class VarietySpec:
    """Closed subscheme of A^n over Z[t] with declared geometry.

    polynomials: list of sparse polynomials, each a dict mapping an exponent
    tuple (length n) to a t-polynomial given as a tuple of integers
    (c_0, c_1, ...).  Declared m, d and irreducibility are user assertions
    echoed in reports, never recomputed.
    """

    n: int
    polynomials: list
    m: int = 1
    d: int = 1
    irreducible: bool = False
    name: str = ""

    def __post_init__(self):
        cleaned = []
        for poly in self.polynomials:
            terms = {}
            for exp, coeff in poly.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != self.n:
                    raise ConfigError("exponent arity mismatch")
                terms[exp] = tuple(int(c) for c in coeff)
            cleaned.append(terms)
        self.polynomials = cleaned

    @classmethod
    def from_json(cls, data):
        polys = []
        for poly in data["polynomials"]:
            terms = {}
            for term in poly:
                terms[tuple(term["exp"])] = tuple(term["coeff"])
            polys.append(terms)
        return cls(n=data["n"], polynomials=polys, m=data.get("m", 1),
                   d=data.get("d", 1), irreducible=data.get("irreducible", False),
                   name=data.get("name", ""))

    def to_json(self):
        return {
            "n": self.n, "m": self.m, "d": self.d,
            "irreducible": self.irreducible, "name": self.name,
            "polynomials": [
                [{"exp": list(e), "coeff": list(c)} for e, c in sorted(p.items())]
                for p in self.polynomials
            ],
        }

    def reduce_mod(self, q):
        """Defining polynomials as (exp -> TruncatedPoly over GF(q)) terms."""
        ring = GF(q)
        out = []
        for poly in self.polynomials:
            terms = []
            for exp, coeff in poly.items():
                tp = TruncatedPoly(ring, list(coeff))
                if not tp.is_zero():
                    terms.append((exp, tp))
            out.append(terms)
        return out


def _decode(idx, q, r, n):
    coeffs = []
    v = idx
    for _ in range(n):
        cs = []
        for _ in range(r):
            cs.append(v % q)
            v //= q
        coeffs.append(tuple(cs))
    return tuple(coeffs)


def enumerate_Xr(X, q, r, cap=2 * 10**7, want_points=False, threads=1):
    """Exact count of n-tuples of degree-<r polynomials over F_q solving
    every defining polynomial identically in F_q[t].

    Runs on the packed int64 kernel (numba or numpy per backend); with
    want_points the solutions are decoded into coefficient tuples
    (ascending t-powers per coordinate).
    """
    if r < 1:
        raise ConfigError("need r >= 1")
    total = q ** (r * X.n)
    if total > cap:
        raise CapExceededError(f"q^(r*n) = {total} exceeds cap {cap}")
    reduced = X.reduce_mod(q)  # validates that q is prime
    eq_terms = []
    for terms in reduced:
        eq_terms.append([(list(tp.coeffs), exp) for exp, tp in terms])
    packed = _kernels.pack_equations(eq_terms, q, r, X.n)
    if want_points:
        count, idx = _kernels.ff_count(q, r, X.n, packed, threads=threads,
                                       want_indices=True)
        points = [_decode(int(i), q, r, X.n) for i in idx]
        return count, points
    return _kernels.ff_count(q, r, X.n, packed, threads=threads)


def enumerate_Xr_direct(X, q, r, cap=10**6):
    """Reference enumeration through exact TruncatedPoly arithmetic; slow,
    used to cross-check the kernels."""
    total = q ** (r * X.n)
    if total > cap:
        raise CapExceededError(f"{total} exceeds cap {cap}")
    ring = GF(q)
    reduced = X.reduce_mod(q)
    count = 0
    for idx in range(total):
        coords = [TruncatedPoly(ring, list(cs)) for cs in _decode(idx, q, r, X.n)]
        if all(poly_eval(terms, coords).is_zero() for terms in reduced):
            count += 1
    return count


def expand_scheme(X, q, r):
    """Substitute generic degree-<r polynomials and expand over F_q[t]:
    one scalar equation per t-power per defining polynomial (including
    t-powers >= r, which must vanish identically).

    Returns a list of MultiPoly over GF(q) in the r*n coefficient variables
    a_{i,gamma}, ordered variable-major: a_{1,0}, a_{1,1}, ..., a_{n,r-1}.
    """
    ring = GF(q)
    nv = r * X.n
    op = OpRing(MultiPoly(nv, {}, ring), MultiPoly.constant(nv, 1, ring))
    generic = []
    for i in range(X.n):
        cs = [MultiPoly.variable(nv, i * r + g, ring) for g in range(r)]
        generic.append(TruncatedPoly(op, cs))
    equations = []
    for poly in X.reduce_mod(q):
        lifted = [(exp, TruncatedPoly(op, [MultiPoly.constant(nv, c, ring)
                                           for c in tp.coeffs]))
                  for exp, tp in poly]
        if not lifted:
            continue
        value = poly_eval(lifted, generic)
        for coeff in value.coeffs:
            if coeff:
                equations.append(coeff)
    return equations


def count_expanded(equations, q, r, n, cap=2 * 10**7):
    """Independent oracle: exhaustive solution count of the expanded system
    over F_q^(r*n), by direct evaluation of each scalar equation."""
    nv = r * n
    total = q ** nv
    if total > cap:
        raise CapExceededError(f"{total} assignments exceed cap {cap}")
    count = 0
    for assignment in itertools.product(range(q), repeat=nv):
        if all(eq.eval(assignment) == 0 for eq in equations):
            count += 1
    return count


# ---------------------------------------------------------------------------
# power-law fits and bound checks
# ---------------------------------------------------------------------------

@dataclass
class CountRecord:
    q: int
    r: int
    count: int
    delta: int | None = None
    mu: Fraction | None = None
    slack_sq: Fraction | None = None

    def to_json(self):
        return {
            "q": self.q, "r": self.r, "count": self.count,
            "delta": self.delta,
            "mu": None if self.mu is None else str(self.mu),
            "slack_sq": None if self.slack_sq is None else str(self.slack_sq),
        }


def _slack_sq(counts, delta, mu):
    """max over q of (count - mu*q^delta)^2 / q^(2*delta - 1): the square of
    the bound constant C in |count - mu q^delta| <= C q^(delta - 1/2),
    exactly (square roots of q never materialize)."""
    worst = Fraction(0)
    for q, c in counts.items():
        val = Fraction(c - mu * q ** delta) ** 2 / Fraction(q) ** (2 * delta - 1)
        worst = max(worst, val)
    return worst


def estimate_delta(counts, r, n, mu_cap=64):
    """Fit (delta, mu): delta an integer in [0, r*n], mu an integer in
    [1, mu_cap] (a free rational mu would overfit larger delta with a tiny
    mu).  The least squared slack wins, ties broken by smaller delta then
    smaller mu.

    counts: dict q -> exact count (>= 2 entries, not all zero).
    """
    if len(counts) < 2:
        raise ConfigError("need counts for at least two field sizes")
    if all(c == 0 for c in counts.values()):
        raise ConfigError("all counts are zero; nothing to fit")
    best = None
    for delta in range(0, r * n + 1):
        for k in range(1, mu_cap + 1):
            mu = Fraction(k)
            sq = _slack_sq(counts, delta, mu)
            key = (sq, delta, mu)
            if best is None or key < best:
                best = key
    sq, delta, mu = best
    return delta, mu, sq


@dataclass
class BoundReport:
    r: int
    delta: int
    mu: Fraction
    slack_sq: Fraction
    trivial_bound: int
    trivial_ok: bool
    motivic_bound: int | None
    motivic_ok: bool | None
    cohen_ratio_sq: dict

    def to_json(self):
        return {
            "r": self.r, "delta": self.delta, "mu": str(self.mu),
            "slack_sq": str(self.slack_sq),
            "trivial_bound": self.trivial_bound, "trivial_ok": self.trivial_ok,
            "motivic_bound": self.motivic_bound, "motivic_ok": self.motivic_ok,
            "cohen_ratio_sq": {str(q): str(v) for q, v in self.cohen_ratio_sq.items()},
        }


def verify_bounds(counts, X, r, mu_cap=64):
    """Check the fitted delta against the trivial bound r*m and, when the
    variety is declared irreducible, against r*(m-1) + ceil(r/d); also
    report the Cohen-style ratio count / (r * q^(r*(m-1/2))) squared."""
    delta, mu, slack_sq = estimate_delta(counts, r, X.n, mu_cap=mu_cap)
    trivial_bound = r * X.m
    trivial_ok = delta <= trivial_bound
    motivic_bound = motivic_ok = None
    if X.irreducible:
        motivic_bound = r * (X.m - 1) + -(-r // X.d)
        motivic_ok = delta <= motivic_bound
    cohen = {}
    for q, c in counts.items():
        # ratio^2 = count^2 * q^r / (r^2 * q^(2*r*m)) stays rational
        cohen[q] = Fraction(c * c * q ** r, r * r * q ** (2 * r * X.m))
    return BoundReport(r, delta, mu, slack_sq, trivial_bound, trivial_ok,
                       motivic_bound, motivic_ok, cohen)


def load_variety(path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as err:
            raise ConfigError(f"malformed variety JSON at line {err.lineno}, "
                              f"column {err.colno}: {err.msg}") from err
    return VarietySpec.from_json(data)
