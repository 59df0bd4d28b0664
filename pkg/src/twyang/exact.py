"""Exact scalar, polynomial, rational-function and truncated-series arithmetic.

Everything is built on arbitrary-precision rationals (fractions.Fraction).
The variable of univariate polynomials is always "u"; bivariate polynomials
live in (u, v).  A small quadratic extension Q(sqrt 2) is provided for the
one construction that genuinely needs sqrt(2); all arithmetic classes are
duck-typed over their coefficients so Fraction and Sqrt2 mix freely.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import comb, gcd


def default_series_order() -> int:
    """Truncation order for series-valued checks (12 unless the environment
    variable TWYANG_TRUNC_ORDER says otherwise)."""
    env = os.environ.get("TWYANG_TRUNC_ORDER")
    return int(env) if env else 12


def frac(x, y=None) -> Fraction:
    """Coerce ints / strings / Fractions to an exact rational."""
    if y is not None:
        return Fraction(x, y)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or string")
    return Fraction(x)


class Sqrt2:
    """Element a + b*sqrt(2) of the quadratic field Q(sqrt 2)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = frac(a)
        self.b = frac(b)

    @staticmethod
    def of(x):
        return x if isinstance(x, Sqrt2) else Sqrt2(frac(x))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, Sqrt2):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b)) if self.b else hash(self.a)

    def __add__(self, other):
        o = Sqrt2.of(other)
        return Sqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Sqrt2(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-Sqrt2.of(other))

    def __rsub__(self, other):
        return Sqrt2.of(other) + (-self)

    def __mul__(self, other):
        o = Sqrt2.of(other)
        return Sqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self):
        d = self.a * self.a - 2 * self.b * self.b
        if not d:
            raise ZeroDivisionError("zero element of Q(sqrt 2)")
        return Sqrt2(self.a / d, -self.b / d)

    def __truediv__(self, other):
        return self * Sqrt2.of(other).inverse()

    def __rtruediv__(self, other):
        return Sqrt2.of(other) * self.inverse()

    @property
    def is_rational(self):
        return not self.b

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return self.a

    def __repr__(self):
        if not self.b:
            return str(self.a)
        return f"({self.a}+{self.b}*sqrt2)"


SQRT2 = Sqrt2(0, 1)


def _is_zero(c) -> bool:
    return not c


class Poly:
    """Univariate polynomial in u, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, (Fraction, Sqrt2)) else frac(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------
    @staticmethod
    def constant(c):
        return Poly((c,))

    @staticmethod
    def from_roots(roots):
        p = Poly((1,))
        for r in roots:
            p = p * Poly((-frac(r), 1))
        return p

    # -- structure ----------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Sqrt2)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, Sqrt2)):
            other = Poly.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Sqrt2)):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.constant(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Sqrt2)):
            return Poly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        r = Poly((1,))
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = Poly(), self
        inv = 1 / other.lead
        while r and r.degree >= other.degree:
            k = r.degree - other.degree
            c = r.lead * inv
            t = Poly([0] * k + [c])
            q = q + t
            r = r - t * other
        return q, r

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other):
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def lcm(self, other):
        if not self or not other:
            return Poly()
        return ((self * other) // self.gcd(other)).monic()

    def monic(self):
        if not self:
            return self
        return self * (1 / self.lead)

    def eval(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_affine(self, a, b):
        """P(a*u + b), exact; a may be zero (evaluation at the constant b)."""
        a, b = frac(a), frac(b)
        arg = Poly((b, a))
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * arg + Poly.constant(c)
        return acc

    def shift(self, c):
        return self.compose_affine(1, c)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*u" if c != 1 else "u")
            else:
                parts.append(f"{c}*u^{k}" if c != 1 else f"u^{k}")
        return " + ".join(reversed(parts))


P_ZERO = Poly()
P_ONE = Poly((1,))
P_U = Poly((0, 1))


def poly(*coeffs):
    """Poly from ascending coefficients given as ints/strings/Fractions."""
    return Poly([frac(c) for c in coeffs])


class RatFunc:
    """Reduced rational function num/den in u with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=P_ONE, reduce=True):
        if not isinstance(num, Poly):
            num = Poly.constant(frac(num))
        if not isinstance(den, Poly):
            den = Poly.constant(frac(den))
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            g = num.gcd(den)
            if g and g.degree > 0:
                num, den = num // g, den // g
            lc = den.lead
            if lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        self.num = num
        self.den = den

    @staticmethod
    def of(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc(x, P_ONE, reduce=False)
        if isinstance(x, Sqrt2):
            return RatFunc(Poly.constant(x), P_ONE, reduce=False)
        return RatFunc(Poly.constant(frac(x)), P_ONE, reduce=False)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (RatFunc, Poly, int, Fraction, Sqrt2)):
            o = RatFunc.of(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if hasattr(other, "__array__"):
            return NotImplemented
        o = RatFunc.of(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-RatFunc.of(other))

    def __rsub__(self, other):
        return RatFunc.of(other) + (-self)

    def __mul__(self, other):
        if hasattr(other, "__array__"):
            return NotImplemented
        o = RatFunc.of(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.of(other)
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc.of(other) / self

    def inverse(self):
        return RatFunc.of(1) / self

    def substitute_affine(self, a, b):
        """f(a*u + b); a must be nonzero for the map to be a substitution."""
        a = frac(a)
        if not a:
            raise ValueError("degenerate substitution: a = 0")
        return RatFunc(self.num.compose_affine(a, b), self.den.compose_affine(a, b))

    def shift(self, c):
        return self.substitute_affine(1, c)

    def reflect(self, c=0):
        """f(c - u)."""
        return self.substitute_affine(-1, c)

    def eval(self, x):
        d = self.den.eval(x)
        if not d:
            raise ZeroDivisionError(f"pole at u = {x}")
        return self.num.eval(x) / d

    @property
    def finite_at_infinity(self):
        return self.num.degree <= self.den.degree

    def value_at_infinity(self):
        if not self.finite_at_infinity:
            raise ValueError("unbounded at u = infinity")
        if self.num.degree < self.den.degree:
            return Fraction(0)
        return self.num.lead / self.den.lead

    def series_at_infinity(self, order):
        return series_expand(self, order)

    def __repr__(self):
        if self.den == P_ONE:
            return repr(self.num)
        return f"({self.num})/({self.den})"


RF_ZERO = RatFunc(P_ZERO, reduce=False)
RF_ONE = RatFunc(P_ONE, reduce=False)
RF_U = RatFunc(P_U, reduce=False)


def rf(num_coeffs, den_coeffs=(1,)):
    return RatFunc(poly(*num_coeffs), poly(*den_coeffs))


class TruncSeries:
    """Truncated series c0 + c1/u + ... + cD/u^D; accuracy claimed through u^-D."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, (Fraction, Sqrt2)) else frac(c) for c in coeffs]
        if not cs:
            raise ValueError("a truncated series stores at least the constant term")
        self.coeffs = tuple(cs)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.coeffs[: order + 1])

    def _common(self, other):
        if isinstance(other, (int, Fraction, Sqrt2)):
            other = TruncSeries([other] + [Fraction(0)] * self.order)
        d = min(self.order, other.order)
        return self.truncate(d), other.truncate(d)

    def __add__(self, other):
        a, b = self._common(other)
        return TruncSeries([x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Sqrt2)):
            return TruncSeries([c * other for c in self.coeffs])
        a, b = self._common(other)
        d = a.order
        out = [Fraction(0)] * (d + 1)
        for i, x in enumerate(a.coeffs):
            if _is_zero(x):
                continue
            for j in range(d + 1 - i):
                out[i + j] = out[i + j] + x * b.coeffs[j]
        return TruncSeries(out)

    __rmul__ = __mul__

    def inverse(self):
        if _is_zero(self.coeffs[0]):
            raise ZeroDivisionError("series with zero constant term")
        d = self.order
        inv0 = 1 / self.coeffs[0]
        out = [inv0] + [Fraction(0)] * d
        for m in range(1, d + 1):
            s = Fraction(0)
            for k in range(1, m + 1):
                s = s + self.coeffs[k] * out[m - k]
            out[m] = -inv0 * s
        return TruncSeries(out)

    def shift_argument(self, a):
        """k(u) -> k(u + a), re-expanded exactly at the same truncation order."""
        a = frac(a)
        d = self.order
        out = [Fraction(0)] * (d + 1)
        # (u+a)^(-j) = sum_t binom(-j, t) a^t u^(-j-t)
        for j, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            for t in range(d - j + 1):
                w = Fraction((-1) ** t * comb(j + t - 1, t)) if j > 0 else Fraction(t == 0)
                out[j + t] = out[j + t] + c * w * a**t
        return TruncSeries(out)

    def scale_argument(self, s):
        """k(u) -> k(s*u) for a nonzero rational s."""
        s = frac(s)
        if not s:
            raise ValueError("degenerate scaling")
        return TruncSeries([c / s**k for k, c in enumerate(self.coeffs)])

    def __repr__(self):
        parts = [str(self.coeffs[0])]
        for k in range(1, len(self.coeffs)):
            if not _is_zero(self.coeffs[k]):
                parts.append(f"{self.coeffs[k]}/u^{k}")
        return " + ".join(parts) + f" + O(u^-{self.order + 1})"


def series_expand(f: RatFunc, order: int) -> TruncSeries:
    """Expansion of a rational function at u = infinity through u^-order."""
    if not f.finite_at_infinity:
        raise ValueError("not a power series in 1/u: numerator degree exceeds denominator")
    m = f.den.degree
    # in v = 1/u:  f = (sum_k num_k v^(m-k)) / (sum_k den_k v^(m-k))
    a = [f.num.coeff(m - j) for j in range(order + 1)]
    b = [f.den.coeff(m - j) for j in range(order + 1)]
    inv0 = 1 / b[0]
    out = []
    for j in range(order + 1):
        s = a[j]
        for i in range(j):
            s = s - out[i] * b[j - i]
        out.append(s * inv0)
    return TruncSeries(out)


def factor_shifted_square(h: TruncSeries, a) -> TruncSeries:
    """The unique k with constant term 1 and h(u) = k(u) * k(u+a) through order D."""
    if h.coeffs[0] != 1:
        raise ValueError("series must have constant term 1")
    a = frac(a)
    d = h.order
    k = [Fraction(1)] + [Fraction(0)] * d

    def binw(j, t):
        return Fraction((-1) ** t * comb(j + t - 1, t)) if j > 0 else Fraction(t == 0)

    # coeff_m( k(u) k(u+a) ) = sum_{r+j+t=m} k_r k_j binom(-j,t) a^t
    for m in range(1, d + 1):
        s = Fraction(0)
        for r in range(m + 1):
            for j in range(m - r + 1):
                t = m - r - j
                if r == m and j == 0:
                    continue  # the 2*k_m terms, handled below
                if j == m and r == 0 and t == 0:
                    continue
                s = s + k[r] * k[j] * binw(j, t) * a**t
        k[m] = (h.coeffs[m] - s) / 2
    return TruncSeries(k)


class BiPoly:
    """Bivariate polynomial in (u, v), stored as {(deg_u, deg_v): coeff}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for k, c in terms.items():
                if not _is_zero(c):
                    t[k] = c if isinstance(c, (Fraction, Sqrt2)) else frac(c)
        self.terms = t

    @staticmethod
    def constant(c):
        return BiPoly({(0, 0): frac(c)})

    @staticmethod
    def of(x):
        if isinstance(x, BiPoly):
            return x
        if isinstance(x, Poly):
            return BiPoly({(k, 0): c for k, c in enumerate(x.coeffs)})
        return BiPoly.constant(frac(x))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (BiPoly, Poly, int, Fraction, Sqrt2)):
            return self.terms == BiPoly.of(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        o = BiPoly.of(other)
        t = dict(self.terms)
        for k, c in o.terms.items():
            s = t.get(k, Fraction(0)) + c
            if _is_zero(s):
                t.pop(k, None)
            else:
                t[k] = s
        return BiPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-BiPoly.of(other))

    def __rsub__(self, other):
        return BiPoly.of(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Sqrt2)):
            return BiPoly({k: c * other for k, c in self.terms.items()})
        o = BiPoly.of(other)
        t = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                s = t.get(k, Fraction(0)) + c1 * c2
                if _is_zero(s):
                    t.pop(k, None)
                else:
                    t[k] = s
        return BiPoly(t)

    __rmul__ = __mul__

    def eval(self, x, y):
        s = Fraction(0)
        for (i, j), c in self.terms.items():
            s = s + c * x**i * y**j
        return s

    def content(self):
        """Positive rational content (gcd of coefficients); zero poly -> 0."""
        num_g, den_l = 0, 1
        for c in self.terms.values():
            if isinstance(c, Sqrt2):
                return Fraction(1)  # content reduction only over Q
            num_g = num_g if not c else gcd(num_g, abs(c.numerator))
            den_l = den_l * c.denominator // gcd(den_l, c.denominator)
        return Fraction(num_g, den_l) if num_g else Fraction(0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items()):
            mon = "".join([f"u^{i}" if i else "", f"v^{j}" if j else ""]) or "1"
            parts.append(f"{c}*{mon}")
        return " + ".join(parts)


def poly_in_linear_form(p: Poly, cu, cv, c0) -> BiPoly:
    """P(cu*u + cv*v + c0) as a bivariate polynomial."""
    arg = BiPoly({(1, 0): frac(cu), (0, 1): frac(cv), (0, 0): frac(c0)})
    acc = BiPoly()
    for c in reversed(p.coeffs):
        acc = acc * arg + BiPoly.constant(c)
    return acc


class BiRatFunc:
    """Fraction of bivariate polynomials, reduced by rational content only."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = BiPoly.of(num)
        den = BiPoly.of(den) if den is not None else BiPoly.constant(1)
        if not den:
            raise ZeroDivisionError("zero denominator")
        cn, cd = num.content(), den.content()
        if cn and cd:
            g = Fraction(
                gcd(cn.numerator, cd.numerator),
                (cn.denominator * cd.denominator) // gcd(cn.denominator, cd.denominator),
            )
            if g and g != 1:
                num, den = num * (1 / g), den * (1 / g)
        self.num = num
        self.den = den

    @staticmethod
    def of(x):
        if isinstance(x, BiRatFunc):
            return x
        return BiRatFunc(BiPoly.of(x))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = BiRatFunc.of(other)
        return self.num * o.den == o.num * self.den

    def __add__(self, other):
        o = BiRatFunc.of(other)
        return BiRatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return BiRatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-BiRatFunc.of(other))

    def __mul__(self, other):
        o = BiRatFunc.of(other)
        return BiRatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = BiRatFunc.of(other)
        if not o.num:
            raise ZeroDivisionError
        return BiRatFunc(self.num * o.den, self.den * o.num)

    def __repr__(self):
        return f"({self.num})/({self.den})"
