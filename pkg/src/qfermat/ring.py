"""Exact Laurent polynomials in q with rational coefficients.

Values are immutable.  Internally a polynomial is stored densely as a
valuation, a tuple of integer numerators and a positive common
denominator, normalized so that equal polynomials share one
representation.  Scalars are :class:`fractions.Fraction`.
"""

from fractions import Fraction
from math import gcd
from numbers import Rational as _Rational

from . import _dense
from .errors import NotDivisible, ZeroAtNegativeExponent

Rational = Fraction


class LaurentPoly:
    """A finite sum of c*q**e with integer e of either sign and rational c."""

    __slots__ = ("_lo", "_c", "_den", "_hash")

    def __init__(self, terms=None):
        if isinstance(terms, LaurentPoly):
            self._lo, self._c, self._den, self._hash = terms._lo, terms._c, terms._den, None
            return
        if terms is None:
            terms = {}
        elif isinstance(terms, (int, _Rational)):
            terms = {0: terms}
        terms = {int(e): Fraction(c) for e, c in dict(terms).items() if c}
        if not terms:
            self._set(0, [], 1)
            return
        lo, hi = min(terms), max(terms)
        den = 1
        for c in terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [0] * (hi - lo + 1)
        for e, c in terms.items():
            nums[e - lo] = c.numerator * (den // c.denominator)
        self._set(lo, nums, den)

    def _set(self, lo, nums, den):
        off, nums = _dense.strip(nums)
        if not nums:
            self._lo, self._c, self._den = 0, (), 1
        else:
            g = _dense.content(nums, den)
            if g != 1:
                nums = [c // g for c in nums]
                den //= g
            self._lo, self._c, self._den = lo + off, tuple(nums), den
        self._hash = None

    @classmethod
    def _raw(cls, lo, nums, den=1):
        self = cls.__new__(cls)
        self._set(lo, nums, den)
        return self

    @classmethod
    def from_coeffs(cls, coeffs, lo=0):
        """Build from a coefficient list for q**lo, q**(lo+1), ..."""
        return cls({lo + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, e, c=1):
        return cls({e: c})

    @classmethod
    def coerce(cls, x):
        return x if isinstance(x, LaurentPoly) else cls(x)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self):
        """Mapping exponent -> nonzero Fraction coefficient, sorted by exponent."""
        d = self._den
        return {self._lo + i: Fraction(c, d) for i, c in enumerate(self._c) if c}

    def coeff(self, e):
        i = e - self._lo
        if 0 <= i < len(self._c):
            return Fraction(self._c[i], self._den)
        return Fraction(0)

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    @property
    def valuation(self):
        """Lowest exponent (None for zero)."""
        return self._lo if self._c else None

    @property
    def degree(self):
        """Highest exponent (None for zero)."""
        return self._lo + len(self._c) - 1 if self._c else None

    def is_integral(self):
        return self._den == 1

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, _Rational)):
                other = LaurentPoly(other)
            else:
                return NotImplemented
        return self._lo == other._lo and self._den == other._den and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._lo, self._c, self._den))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, c in self.terms.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return LaurentPoly._raw(self._lo, [-c for c in self._c], self._den)

    def __add__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        if not other._c:
            return self
        if not self._c:
            return other
        ka, kb, den = _dense.common(self._den, other._den)
        lo = min(self._lo, other._lo)
        a = [0] * (self._lo - lo) + list(self._c)
        b = [0] * (other._lo - lo) + list(other._c)
        return LaurentPoly._raw(lo, _dense.add_scaled(a, ka, b, kb), den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, _Rational)) and not isinstance(other, LaurentPoly):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        return LaurentPoly._raw(self._lo + other._lo,
                                _dense.mul(self._c, other._c),
                                self._den * other._den)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        if not c or not self._c:
            return ZERO
        return LaurentPoly._raw(self._lo, [x * c.numerator for x in self._c],
                                self._den * c.denominator)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            if n < 0 and len(self._c) == 1:
                c = self.coeff(self._lo)
                return LaurentPoly({self._lo * n: c ** n})
            raise ValueError("only nonnegative powers of non-monomials")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, e):
        """Multiply by q**e."""
        if not self._c or not e:
            return self
        out = LaurentPoly.__new__(LaurentPoly)
        out._lo, out._c, out._den, out._hash = self._lo + e, self._c, self._den, None
        return out

    def eval(self, v):
        """Exact value at q = v."""
        v = Fraction(v)
        if not self._c:
            return Fraction(0)
        if self._lo < 0 and v == 0:
            raise ZeroAtNegativeExponent("negative exponent evaluated at q = 0")
        if v == 1:
            return Fraction(sum(self._c), self._den)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * v + c
        if self._lo:
            acc *= v ** self._lo
        return acc / self._den

    def derivative(self):
        """Formal d/dq."""
        lo = self._lo
        nums = [c * (lo + i) for i, c in enumerate(self._c)]
        return LaurentPoly._raw(lo - 1, nums, self._den)

    def exact_div(self, other):
        """Return c with self == other * c; raise NotDivisible otherwise."""
        other = LaurentPoly.coerce(other)
        if not other._c:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._c:
            return ZERO
        quo, rem = _poly_divmod(list(self._c), list(other._c))
        if any(rem):
            raise NotDivisible(LaurentPoly.from_coeffs(rem, self._lo).scale(Fraction(1, self._den)))
        result = LaurentPoly.from_coeffs(quo, self._lo - other._lo)
        return result.scale(Fraction(other._den, self._den))

    def __truediv__(self, other):
        if isinstance(other, (int, _Rational)) and not isinstance(other, LaurentPoly):
            return self.scale(Fraction(1) / Fraction(other))
        return self.exact_div(other)

    def poly_coeffs(self):
        """(valuation, list of Fraction coefficients) covering the full support."""
        d = self._den
        return self._lo, [Fraction(c, d) for c in self._c]

    def int_coeffs(self):
        """(valuation, numerators, common denominator)."""
        return self._lo, self._c, self._den


def _maybe(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, _Rational)):
        return LaurentPoly(x)
    return NotImplemented


def _poly_divmod(a, b):
    """Long division of ascending coefficient lists; quotient and remainder.

    Integer arithmetic is kept whenever the divisor is monic up to sign.
    """
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return [], a
    lead = b[-1]
    unit = lead in (1, -1)
    rem = list(a)
    quo = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        c = rem[i + db]
        if not c:
            continue
        c = c * lead if unit else Fraction(c) / lead
        quo[i] = c
        for j, bj in enumerate(b):
            if bj:
                rem[i + j] -= c * bj
    return quo, rem[:db]


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
Q = LaurentPoly.monomial(1)


def lp_add(a, b):
    return LaurentPoly.coerce(a) + b


def lp_mul(a, b):
    return LaurentPoly.coerce(a) * LaurentPoly.coerce(b)


def lp_exact_div(a, b):
    return LaurentPoly.coerce(a).exact_div(b)


def lp_eval(a, v):
    return LaurentPoly.coerce(a).eval(v)


def lp_derivative(a):
    return LaurentPoly.coerce(a).derivative()


def lp_shift(a, e):
    return LaurentPoly.coerce(a).shift(e)
