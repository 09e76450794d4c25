"""Exact arithmetic core: Q_p elements at finite precision, residue values,
balls with valuative radii, truncated polynomials over F_p and Q, and a
sparse multivariate polynomial type.

Norms are never materialized as floats.  |x| <= |y| is decided as
ord(x) >= ord(y); a ball of valuative radius alpha is {x : ord(x-c) >= alpha}.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import CapExceededError, PrecisionError, RingMismatchError

DEFAULT_PRECISION = 64

INF = math.inf


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def val_int(n, p):
    """p-adic valuation of an integer; INF for 0."""
    if n == 0:
        return INF
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_fraction(x, p):
    """p-adic valuation of a Fraction or int; INF for 0."""
    if isinstance(x, int):
        return val_int(x, p)
    if x == 0:
        return INF
    return val_int(x.numerator, p) - val_int(x.denominator, p)


def val_factorial(i, p):
    """v_p(i!) by Legendre's formula."""
    v = 0
    q = p
    while q <= i:
        v += i // q
        q *= p
    return v


def rational_residue(x, p, k):
    """Representative of a p-integral rational modulo p^k, in [0, p^k)."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    if den % p == 0:
        raise PrecisionError(f"{x} is not p-integral at p={p}")
    if k == 0:
        return 0
    m = p ** k
    return num * pow(den, -1, m) % m


class PadicNumber:
    """Element of Q_p with tracked valuation and relative precision.

    A nonzero value is p^v * u with gcd(u, p) = 1 and 0 < u < p^K; the K
    digits of the unit are the known digits.  Values built from exact
    rationals keep an exact backing so arithmetic among them never loses
    digits.  A value whose known digits all vanish is zero-at-precision:
    only ord >= floor is known, and predicates needing its exact valuation
    raise PrecisionError.
    """

    __slots__ = ("p", "v", "u", "K", "floor", "frac")

    def __init__(self, p, v, u, K, floor=None, frac=None):
        self.p = p
        self.v = v
        self.u = u
        self.K = K
        self.floor = floor
        self.frac = frac

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, x, p, K=DEFAULT_PRECISION):
        if not is_prime(p):
            raise RingMismatchError(f"{p} is not prime")
        x = Fraction(x)
        if x == 0:
            return cls(p, None, None, K, floor=None, frac=Fraction(0))
        v = val_fraction(x, p)
        unit = x / Fraction(p) ** v
        u = rational_residue(unit, p, K)
        return cls(p, v, u, K, frac=x)

    @classmethod
    def zero(cls, p, K=DEFAULT_PRECISION):
        return cls(p, None, None, K, floor=None, frac=Fraction(0))

    @classmethod
    def zero_at_precision(cls, p, floor, K=DEFAULT_PRECISION):
        """A value known only to satisfy ord >= floor."""
        return cls(p, None, None, K, floor=floor, frac=None)

    @classmethod
    def from_unit(cls, p, v, u, K):
        if K < 1:
            raise PrecisionError("precision K must be >= 1")
        u %= p ** K
        if u == 0 or u % p == 0:
            raise RingMismatchError("unit must be nonzero and prime to p")
        return cls(p, v, u, K)

    # -- classification ----------------------------------------------------

    @property
    def is_exact(self):
        return self.frac is not None

    @property
    def is_exact_zero(self):
        return self.frac is not None and self.frac == 0

    @property
    def is_zero_at_precision(self):
        return self.v is None and self.frac is None

    @property
    def is_zeroish(self):
        return self.v is None

    def ord(self):
        """Valuation; INF for exact zero; PrecisionError when unknown."""
        if self.v is not None:
            return self.v
        if self.is_exact_zero:
            return INF
        raise PrecisionError(
            f"valuation of zero-at-precision value (ord >= {self.floor}) is unknown")

    def ord_lower_bound(self):
        if self.v is not None:
            return self.v
        if self.is_exact_zero:
            return INF
        return self.floor

    def abs_precision(self):
        """The value is known modulo p^(abs_precision)."""
        if self.is_exact_zero or self.is_exact:
            return INF
        if self.is_zero_at_precision:
            return self.floor
        return self.v + self.K

    def unit_residue(self, k):
        """Unit part modulo p^k."""
        if self.is_zeroish:
            raise PrecisionError("zero value has no unit")
        if self.is_exact:
            unit = self.frac / Fraction(self.p) ** self.v
            return rational_residue(unit, self.p, k)
        if k > self.K:
            raise PrecisionError(f"need {k} unit digits, only {self.K} known")
        return self.u % self.p ** k

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, PadicNumber):
            other = PadicNumber.from_rational(other, self.p, self.K)
        elif other.p != self.p:
            raise RingMismatchError(f"primes differ: {self.p} vs {other.p}")
        return other

    def _rep(self):
        # integer representative modulo p^abs_precision (zero kinds -> 0)
        if self.is_zeroish:
            return 0
        return self.u * self.p ** self.v if self.v >= 0 else None

    def __add__(self, other):
        other = self._check(other)
        p = self.p
        if self.is_exact and other.is_exact:
            return PadicNumber.from_rational(self.frac + other.frac, p,
                                             min(self.K, other.K))
        na, nb = self.abs_precision(), other.abs_precision()
        n = min(na, nb)
        if n is INF:  # both exact handled above; exact zero + capped
            return self if other.is_exact_zero else other
        # shift to a common integer picture at absolute precision n
        terms = []
        for x in (self, other):
            if x.is_zeroish:
                continue
            if x.v < 0 and not x.is_exact:
                raise PrecisionError("negative-valuation capped addition unsupported")
            terms.append(x.u * p ** x.v if x.v >= 0 else x.frac)
        if n <= 0:
            return PadicNumber.zero_at_precision(p, n)
        m = p ** n
        s = 0
        for t in terms:
            s = (s + (t if isinstance(t, int) else rational_residue(t, p, n))) % m
        if s == 0:
            return PadicNumber.zero_at_precision(p, n)
        v = val_int(s, p)
        k = n - v
        if k < 1:
            return PadicNumber.zero_at_precision(p, n)
        return PadicNumber(p, v, (s // p ** v) % p ** k, k)

    def __neg__(self):
        if self.is_exact:
            return PadicNumber.from_rational(-self.frac, self.p, self.K)
        if self.is_zeroish:
            return self
        return PadicNumber(self.p, self.v, (-self.u) % self.p ** self.K, self.K)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        p = self.p
        if self.is_exact and other.is_exact:
            return PadicNumber.from_rational(self.frac * other.frac, p,
                                             min(self.K, other.K))
        if self.is_exact_zero or other.is_exact_zero:
            return PadicNumber.zero(p, min(self.K, other.K))
        if self.is_zeroish or other.is_zeroish:
            fa = self.ord_lower_bound() if self.is_zeroish else self.v
            fb = other.ord_lower_bound() if other.is_zeroish else other.v
            return PadicNumber.zero_at_precision(p, fa + fb)
        k = min(self.K, other.K)
        u = self.unit_residue(k) * other.unit_residue(k) % p ** k
        return PadicNumber(p, self.v + other.v, u, k)

    def __truediv__(self, other):
        other = self._check(other)
        p = self.p
        if other.is_exact_zero:
            raise ZeroDivisionError("division by exact zero")
        if other.is_zero_at_precision:
            raise PrecisionError("division by zero-at-precision value")
        if self.is_exact and other.is_exact:
            return PadicNumber.from_rational(self.frac / other.frac, p,
                                             min(self.K, other.K))
        if self.is_exact_zero:
            return PadicNumber.zero(p, self.K)
        if self.is_zero_at_precision:
            return PadicNumber.zero_at_precision(p, self.floor - other.v)
        k = min(self.K, other.K)
        m = p ** k
        u = self.unit_residue(k) * pow(other.unit_residue(k), -1, m) % m
        return PadicNumber(p, self.v - other.v, u, k)

    def __pow__(self, e):
        if e < 0:
            return PadicNumber.from_rational(1, self.p, self.K) / self ** (-e)
        out = PadicNumber.from_rational(1, self.p, self.K)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        """Indistinguishable at shared precision (exact values compare exactly)."""
        if not isinstance(other, PadicNumber):
            try:
                other = PadicNumber.from_rational(other, self.p, self.K)
            except (TypeError, ValueError):
                return NotImplemented
        if self.p != other.p:
            return False
        if self.is_exact and other.is_exact:
            return self.frac == other.frac
        n = min(self.abs_precision(), other.abs_precision())
        if n is INF:
            return self.is_exact_zero and other.is_exact_zero
        ra = 0 if self.is_zeroish else self.u * self.p ** self.v
        rb = 0 if other.is_zeroish else other.u * other.p ** other.v
        if n <= 0:
            return True
        return (ra - rb) % self.p ** n == 0

    def __hash__(self):
        if self.is_exact:
            return hash((self.p, self.frac))
        return hash((self.p, self.v, self.floor))

    def __repr__(self):
        p = self.p
        if self.is_exact_zero:
            return f"PadicNumber(0, p={p})"
        if self.is_zero_at_precision:
            return f"PadicNumber(O({p}^{self.floor}))"
        return f"PadicNumber({p}^{self.v}*{self.u} + O({p}^{self.v + self.K}), p={p})"


class ResidueValue:
    """Element of Z/p^depth, the target of the angular-component maps."""

    __slots__ = ("p", "depth", "value")

    def __init__(self, p, depth, value):
        if depth < 1:
            raise RingMismatchError("depth must be >= 1")
        self.p = p
        self.depth = depth
        self.value = value % p ** depth

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p ** self.depth
        return (self.p, self.depth, self.value) == (other.p, other.depth, other.value)

    def __hash__(self):
        return hash((self.p, self.depth, self.value))

    def __mul__(self, other):
        if self.p != other.p or self.depth != other.depth:
            raise RingMismatchError("residue rings differ")
        return ResidueValue(self.p, self.depth, self.value * other.value)

    def __repr__(self):
        return f"ResidueValue({self.value} mod {self.p}^{self.depth})"


def ord_of(x):
    """Valuation of a PadicNumber (INF for zero)."""
    return x.ord()


def norm_cmp(x, y):
    """Compare |x| and |y|: returns -1, 0, or +1.

    Decided purely on valuations: |x| <= |y| iff ord(x) >= ord(y).  Raises
    PrecisionError when the answer depends on unknown digits.
    """
    if x.p != y.p:
        raise RingMismatchError("primes differ")

    def bounds(z):
        # (lower bound on ord, exact ord or None)
        if z.is_exact_zero:
            return INF, INF
        if z.is_zero_at_precision:
            return z.floor, None
        return z.v, z.v

    la, ea = bounds(x)
    lb, eb = bounds(y)
    if ea is not None and eb is not None:
        if ea == eb:
            return 0
        return -1 if ea > eb else 1
    if ea is INF and eb is INF:
        return 0
    # one side has unknown valuation >= floor
    if ea is None and eb is not None:
        return -1 if la > eb else _indeterminate()
    if eb is None and ea is not None:
        return 1 if lb > ea else _indeterminate()
    return _indeterminate()


def _indeterminate():
    raise PrecisionError("norm comparison depends on unknown digits")


def ac(x, n):
    """Angular component at modulus n: x * p^(-ord x) mod p^(v_p(n)+1).

    Sends zero to zero; depth of the output is v_p(n) + 1.
    """
    if n < 1:
        raise RingMismatchError("n must be a positive integer")
    depth = val_int(n, x.p) + 1
    if depth is INF:
        raise RingMismatchError("n must be nonzero")
    if x.is_exact_zero:
        return ResidueValue(x.p, depth, 0)
    if x.is_zero_at_precision:
        raise PrecisionError("angular component of zero-at-precision value")
    return ResidueValue(x.p, depth, x.unit_residue(depth))


class Ball:
    """Closed ball (box) of equal valuative radius alpha in Z_p^m.

    Membership: ord(x_i - c_i) >= alpha for every coordinate.  Two balls of
    equal radius are identical or disjoint.
    """

    __slots__ = ("p", "m", "alpha", "center", "_key")

    def __init__(self, p, center, alpha, m=None):
        if alpha < 0:
            raise RingMismatchError("valuative radius must be >= 0")
        center = tuple(self._coerce_coord(c) for c in center)
        self.p = p
        self.m = len(center) if m is None else m
        if len(center) != self.m:
            raise RingMismatchError("center dimension mismatch")
        self.alpha = alpha
        for c in center:
            if val_fraction(c, p) < 0:
                raise RingMismatchError("ball center must lie in Z_p^m")
        self.center = center
        self._key = tuple(rational_residue(c, p, alpha) for c in center)

    @staticmethod
    def _coerce_coord(c):
        if isinstance(c, PadicNumber):
            if not c.is_exact:
                raise PrecisionError("ball centers need exact coordinates")
            return c.frac
        return Fraction(c)

    def canonical_center(self):
        return self._key

    def __eq__(self, other):
        return (self.p, self.m, self.alpha, self._key) == \
               (other.p, other.m, other.alpha, other._key)

    def __hash__(self):
        return hash((self.p, self.m, self.alpha, self._key))

    def __repr__(self):
        return f"Ball(p={self.p}, center={self._key}, alpha={self.alpha})"

    def contains(self, point):
        if len(point) != self.m:
            return False
        for x, c in zip(point, self.center):
            d = Fraction(x) - c
            if val_fraction(d, self.p) < self.alpha:
                return False
        return True

    def intersects(self, other):
        if (self.p, self.m) != (other.p, other.m):
            return False
        a = min(self.alpha, other.alpha)
        pa = self.p ** a
        return all((x - y) % pa == 0 for x, y in
                   zip(self.canonical_center(), other.canonical_center()))

    def subdivide(self):
        """The p^m disjoint sub-balls of radius alpha+1 partitioning self."""
        p, a = self.p, self.alpha
        out = []
        digits = [0] * self.m
        while True:
            center = tuple(c + p ** a * d for c, d in zip(self._key, digits))
            out.append(Ball(p, center, a + 1, self.m))
            i = self.m - 1
            while i >= 0:
                digits[i] += 1
                if digits[i] < p:
                    break
                digits[i] = 0
                i -= 1
            if i < 0:
                return out

    def residue_count(self, K):
        return self.p ** ((K - self.alpha) * self.m)

    def residues(self, K, cap=None):
        """Integer representative tuples mod p^K of the ball's residue classes."""
        if K < self.alpha:
            raise PrecisionError(f"K={K} below valuative radius {self.alpha}")
        total = self.residue_count(K)
        if cap is not None and total > cap:
            raise CapExceededError(f"{total} residues exceed cap {cap}")
        p, a = self.p, self.alpha
        step = p ** a
        width = p ** (K - a)
        idx = [0] * self.m
        while True:
            yield tuple(c + step * j for c, j in zip(self._key, idx))
            i = self.m - 1
            while i >= 0:
                idx[i] += 1
                if idx[i] < width:
                    break
                idx[i] = 0
                i -= 1
            if i < 0:
                return


def subdivide(ball):
    return ball.subdivide()


# ---------------------------------------------------------------------------
# coefficient rings for truncated / sparse polynomials
# ---------------------------------------------------------------------------

class GF:
    """Prime field F_p with elements represented as ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p):
        if not is_prime(p):
            raise RingMismatchError(
                f"q={p} is not prime; only prime fields are supported")
        self.p = p

    def coerce(self, x):
        return x % self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class _RationalField:
    """The rationals, with exact Fraction arithmetic."""

    def coerce(self, x):
        return Fraction(x)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, _RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = _RationalField()


class OpRing:
    """Ring adapter for coefficient objects carrying their own operators
    (used when truncated polynomials have polynomial coefficients)."""

    __slots__ = ("_zero", "_one")

    def __init__(self, zero, one):
        self._zero = zero
        self._one = one

    def coerce(self, x):
        return x

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return not a

    def __eq__(self, other):
        return isinstance(other, OpRing)

    def __hash__(self):
        return hash("OpRing")


class TruncatedPoly:
    """Polynomial in t over a coefficient ring, stored densely.

    Arithmetic is exact; multiplication extends the degree.  ord_t is the
    index of the first nonzero coefficient (INF for the zero polynomial).
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        cs = [ring.coerce(c) for c in coeffs]
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.ring = ring
        self.coeffs = cs

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, [c])

    @classmethod
    def t(cls, ring):
        return cls(ring, [ring.zero(), ring.one()])

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Degree in t; None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def ord_t(self):
        if not self.coeffs:
            return INF
        for i, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return i
        return INF

    def _match(self, other):
        if isinstance(other, TruncatedPoly):
            if other.ring != self.ring:
                raise RingMismatchError("coefficient rings differ")
            return other
        return TruncatedPoly.constant(self.ring, self.ring.coerce(other))

    def __add__(self, other):
        other = self._match(other)
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [R.zero()] * (n - len(self.coeffs))
        b = other.coeffs + [R.zero()] * (n - len(other.coeffs))
        return TruncatedPoly(R, [R.add(x, y) for x, y in zip(a, b)])

    def __neg__(self):
        R = self.ring
        return TruncatedPoly(R, [R.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._match(other))

    def __mul__(self, other):
        other = self._match(other)
        R = self.ring
        if self.is_zero() or other.is_zero():
            return TruncatedPoly.zero(R)
        out = [R.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if R.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = R.add(out[i + j], R.mul(a, b))
        return TruncatedPoly(R, out)

    def __pow__(self, e):
        out = TruncatedPoly.constant(self.ring, self.ring.one())
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._match(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, tuple(self.coeffs)))

    def __bool__(self):
        return not self.is_zero()

    def coefficient(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else self.ring.zero()

    def __repr__(self):
        if not self.coeffs:
            return "TruncatedPoly(0)"
        parts = [f"{c}*t^{i}" if i else f"{c}"
                 for i, c in enumerate(self.coeffs) if not self.ring.is_zero(c)]
        return "TruncatedPoly(" + " + ".join(parts) + ")"


def poly_ord_t(f):
    return f.ord_t()


def poly_mul(f, g):
    return f * g


def poly_eval(terms, args):
    """Evaluate a multivariate polynomial with TruncatedPoly coefficients at
    TruncatedPoly arguments, exactly.

    terms: iterable of (exponent tuple, TruncatedPoly coefficient).
    """
    args = tuple(args)
    if not args:
        raise RingMismatchError("need at least one argument")
    ring = args[0].ring
    acc = TruncatedPoly.zero(ring)
    pow_cache = {}
    for exp, coeff in terms:
        if coeff.ring != ring:
            raise RingMismatchError("coefficient/argument rings differ")
        term = coeff
        for j, e in enumerate(exp):
            if e:
                key = (j, e)
                if key not in pow_cache:
                    pow_cache[key] = args[j] ** e
                term = term * pow_cache[key]
        acc = acc + term
    return acc


# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------

class MultiPoly:
    """Sparse multivariate polynomial: exponent tuple -> coefficient."""

    __slots__ = ("nvars", "terms", "ring")

    def __init__(self, nvars, terms=None, ring=QQ):
        self.nvars = nvars
        self.ring = ring
        cleaned = {}
        for exp, c in (terms or {}).items():
            c = ring.coerce(c)
            if not ring.is_zero(c):
                cleaned[tuple(exp)] = c
        self.terms = cleaned

    @classmethod
    def constant(cls, nvars, c, ring=QQ):
        return cls(nvars, {(0,) * nvars: c}, ring)

    @classmethod
    def variable(cls, nvars, i, ring=QQ):
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): ring.one()}, ring)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return not self.is_zero()

    def degree(self):
        """Total degree; None for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=None)

    def _match(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars or other.ring != self.ring:
                raise RingMismatchError("polynomial rings differ")
            return other
        return MultiPoly.constant(self.nvars, self.ring.coerce(other), self.ring)

    def __add__(self, other):
        other = self._match(other)
        R = self.ring
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = R.add(out.get(exp, R.zero()), c)
            if R.is_zero(s):
                out.pop(exp, None)
            else:
                out[exp] = s
        return MultiPoly(self.nvars, out, R)

    def __neg__(self):
        R = self.ring
        return MultiPoly(self.nvars, {e: R.neg(c) for e, c in self.terms.items()}, R)

    def __sub__(self, other):
        return self + (-self._match(other))

    def __mul__(self, other):
        other = self._match(other)
        R = self.ring
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = R.add(out.get(exp, R.zero()), R.mul(c1, c2))
                if R.is_zero(s):
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return MultiPoly(self.nvars, out, R)

    def __rmul__(self, other):
        return self * other

    def scale(self, c):
        R = self.ring
        c = R.coerce(c)
        return MultiPoly(self.nvars, {e: R.mul(v, c) for e, v in self.terms.items()}, R)

    def __pow__(self, e):
        out = MultiPoly.constant(self.nvars, self.ring.one(), self.ring)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        try:
            other = self._match(other)
        except RingMismatchError:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def eval(self, args):
        """Evaluate at ring elements, exactly."""
        R = self.ring
        args = [R.coerce(a) for a in args]
        acc = R.zero()
        pow_cache = {}
        for exp, c in self.terms.items():
            t = c
            for j, e in enumerate(exp):
                if e:
                    key = (j, e)
                    if key not in pow_cache:
                        pow_cache[key] = _ring_pow(R, args[j], e)
                    t = R.mul(t, pow_cache[key])
            acc = R.add(acc, t)
        return acc

    def substitute(self, args):
        """Substitute MultiPoly arguments for the variables."""
        nv = args[0].nvars
        R = self.ring
        acc = MultiPoly(nv, {}, R)
        pow_cache = {}
        for exp, c in self.terms.items():
            t = MultiPoly.constant(nv, c, R)
            for j, e in enumerate(exp):
                if e:
                    key = (j, e)
                    if key not in pow_cache:
                        pow_cache[key] = args[j] ** e
                    t = t * pow_cache[key]
            acc = acc + t
        return acc

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        parts = []
        for exp in sorted(self.terms, key=lambda e: (sum(e), e)):
            mono = "*".join(f"x{i}^{e}" for i, e in enumerate(exp) if e) or "1"
            parts.append(f"{self.terms[exp]}*{mono}")
        return "MultiPoly(" + " + ".join(parts) + ")"


def _ring_pow(R, a, e):
    out = R.one()
    for _ in range(e):
        out = R.mul(out, a)
    return out


def divided_derivative(f, beta):
    """The divided derivative (1/beta!) d^beta f, exact on any ring where
    binomial coefficients make sense (computed as integer binomials)."""
    R = f.ring
    out = {}
    for exp, c in f.terms.items():
        coef = c
        ok = True
        new = []
        for g, b in zip(exp, beta):
            if g < b:
                ok = False
                break
            coef = R.mul(coef, R.coerce(math.comb(g, b)))
            new.append(g - b)
        if ok and not R.is_zero(coef):
            key = tuple(new)
            s = R.add(out.get(key, R.zero()), coef)
            if R.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
    return MultiPoly(f.nvars, out, R)


def gauss_valuation(f, p):
    """Min coefficient valuation (the valuation of the Gauss norm); INF for 0."""
    if isinstance(f, MultiPoly):
        vals = [val_fraction(c, p) for c in f.terms.values()]
    elif isinstance(f, TruncatedPoly):
        vals = [val_fraction(c, p) for c in f.coeffs if c]
    else:
        raise RingMismatchError(f"unsupported object {type(f)}")
    return min(vals, default=INF)
