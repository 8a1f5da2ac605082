"""Arithmetic in Q[q]/(f), where congruences modulo [p] and [p]^2 are decided.

A :class:`Residue` holds the unique reduced remainder (degree < deg f) as
integer numerators over one common denominator.  When the modulus is a
q-integer [n] the reduction is a cyclic fold, since q**n == 1 modulo [n];
any other monic integer modulus uses long division, and a general rational
modulus falls back to Fraction arithmetic.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _Rational

from . import _dense
from .errors import NonInvertible, NotPrime, RingMismatch
from .ring import LaurentPoly, _poly_divmod


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class QuotientRing:
    """The ring Q[q]/(modulus).

    The modulus must be an ordinary polynomial (valuation 0) of degree at
    least one with a nonzero constant term, so that q is a unit.
    """

    def __init__(self, modulus, name=None):
        modulus = LaurentPoly.coerce(modulus)
        if modulus.is_zero() or modulus.valuation != 0 or modulus.degree < 1:
            raise ValueError("modulus must have valuation 0, degree >= 1 and nonzero constant term")
        self.modulus = modulus
        self.degree = d = modulus.degree
        self.name = name or f"Q[q]/({modulus})"
        lead = modulus.coeff(d)
        monic = [c / lead for c in modulus.poly_coeffs()[1]]
        self._cyclic = None
        self._fint = None
        self._ffrac = monic
        if all(c.denominator == 1 for c in monic):
            self._fint = [int(c) for c in monic]
            if all(c == 1 for c in self._fint):
                self._cyclic = d + 1
        self._inv_cache = {}
        # a sparse multiple of the modulus, used to shorten long division
        self._sparse = None
        if self._fint is not None and not self._cyclic and d % 2 == 0:
            n = d // 2 + 1
            qn = LaurentPoly.from_coeffs([1] * n)
            if qn * qn == modulus:
                self._sparse = (2 * n, [(n, 2), (0, -1)])
        self._zero = Residue._make(self, (0,) * d, 1)
        self._one = self._from_vector([1])
        if self._cyclic:
            self.qinv = self._from_folded([0] * d + [1], 1)
        else:
            self.qinv = self.gen().inv()

    def __repr__(self):
        return f"QuotientRing({self.name})"

    # -- constructors ------------------------------------------------------

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def gen(self):
        """The class of q."""
        return self.reduce(LaurentPoly.monomial(1))

    def scalar(self, c):
        c = Fraction(c)
        return self._from_vector([c.numerator], c.denominator)

    def element(self, coeffs):
        """Residue of the polynomial with the given ascending coefficients."""
        return self.reduce(LaurentPoly.from_coeffs(coeffs))

    def reduce(self, a):
        """Canonical image of a Laurent polynomial (or scalar) in the ring."""
        if isinstance(a, Residue):
            if a.ring is not self:
                raise RingMismatch("residue belongs to another ring")
            return a
        a = LaurentPoly.coerce(a)
        if a.is_zero():
            return self._zero
        lo, nums, den = a.int_coeffs()
        if self._cyclic:
            n = self._cyclic
            w = [0] * n
            start = lo % n
            for i, c in enumerate(nums):
                if c:
                    w[(start + i) % n] += c
            return self._from_folded(w, den)
        if lo >= 0:
            return self._from_vector([0] * lo + list(nums), den)
        r = self._from_vector(list(nums), den)
        return r * self.qinv ** (-lo)

    def q_power(self, e):
        """Residue of q**e for any integer e."""
        return self.reduce(LaurentPoly.monomial(e))

    # -- internals ---------------------------------------------------------

    def _from_folded(self, w, den):
        top = w[-1]
        if top:
            w = [c - top for c in w[:-1]]
        else:
            w = w[:-1]
        return Residue._make(self, w, den)

    def _from_vector(self, v, den=1):
        """Reduce an ascending integer vector starting at exponent 0."""
        d = self.degree
        if len(v) <= d:
            return Residue._make(self, list(v) + [0] * (d - len(v)), den)
        if self._cyclic:
            n = self._cyclic
            w = list(v[:n]) + [0] * max(0, n - len(v))
            for s in range(n, len(v), n):
                for j, c in enumerate(v[s:s + n]):
                    if c:
                        w[j] += c
            return self._from_folded(w, den)
        if self._fint is not None:
            f = self._fint
            rem = list(v)
            if self._sparse and len(rem) > self._sparse[0]:
                top, low = self._sparse
                # q^top = sum c q^e modulo a multiple of the modulus
                for i in range(len(rem) - 1, top - 1, -1):
                    c = rem[i]
                    if c:
                        rem[i] = 0
                        for e, ce in low:
                            rem[i - top + e] += c * ce
                del rem[top:]
            nz = [(j, fj) for j, fj in enumerate(f[:-1]) if fj]
            for i in range(len(rem) - 1, d - 1, -1):
                c = rem[i]
                if c:
                    base = i - d
                    for j, fj in nz:
                        rem[base + j] -= c * fj
            return Residue._make(self, rem[:d], den)
        _, rem = _poly_divmod([Fraction(c) for c in v], self._ffrac)
        rem = rem + [Fraction(0)] * (d - len(rem))
        cden = 1
        for c in rem:
            cden = cden * c.denominator // gcd(cden, c.denominator)
        return Residue._make(self, [int(c * cden) for c in rem], den * cden)


class Residue:
    """An element of a :class:`QuotientRing`, immutable."""

    __slots__ = ("ring", "_c", "_den")

    @classmethod
    def _make(cls, ring, nums, den):
        self = cls.__new__(cls)
        if den < 0:
            nums, den = [-c for c in nums], -den
        g = _dense.content(nums, den)
        if g != 1:
            nums = [c // g for c in nums]
            den //= g
        if not any(nums):
            den = 1
        self.ring, self._c, self._den = ring, tuple(nums), den
        return self

    @property
    def coeffs(self):
        """Fraction coefficients of q**0 .. q**(d-1)."""
        d = self._den
        return tuple(Fraction(c, d) for c in self._c)

    def lift(self):
        """The reduced representative as a polynomial."""
        return LaurentPoly.from_coeffs(self.coeffs)

    def is_zero(self):
        return not any(self._c)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, _Rational)):
            other = self.ring.scalar(other)
        if not isinstance(other, Residue):
            return NotImplemented
        return self.ring is other.ring and self._c == other._c and self._den == other._den

    def __hash__(self):
        return hash((id(self.ring), self._c, self._den))

    def __repr__(self):
        return f"Residue({self.text()})"

    def text(self):
        """Coefficient list in ascending exponent order, e.g. ``[1, -1/2, 0]``."""
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"

    __str__ = text

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.ring is not self.ring:
                raise RingMismatch("operands live in different rings")
            return other
        if isinstance(other, (int, _Rational, LaurentPoly)):
            return self.ring.reduce(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ka, kb, den = _dense.common(self._den, other._den)
        return Residue._make(self.ring, _dense.add_scaled(self._c, ka, other._c, kb), den)

    __radd__ = __add__

    def __neg__(self):
        return Residue._make(self.ring, [-c for c in self._c], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ka, kb, den = _dense.common(self._den, other._den)
        return Residue._make(self.ring, _dense.add_scaled(self._c, ka, other._c, -kb), den)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, _Rational)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return self.ring.zero()
        prod = _dense.mul(_trimmed(self._c), _trimmed(other._c))
        return self.ring._from_vector(prod, self._den * other._den)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        return Residue._make(self.ring, [x * c.numerator for x in self._c],
                             self._den * c.denominator)

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_q_power(self, e):
        """Multiply by q**e; a rotation when the modulus is [n]."""
        ring = self.ring
        if ring._cyclic:
            n = ring._cyclic
            w = [0] * n
            for i, c in enumerate(self._c):
                if c:
                    w[(i + e) % n] = c
            return ring._from_folded(w, self._den)
        return self * ring.q_power(e)

    def inv(self):
        """Multiplicative inverse by the extended Euclidean algorithm."""
        ring = self.ring
        key = (self._c, self._den)
        hit = ring._inv_cache.get(key)
        if hit is not None:
            return hit
        a = _trimmed(self._c)
        if not a:
            raise NonInvertible(ring.modulus, "zero is not invertible")
        f = list(ring._fint) if ring._fint is not None else list(ring.modulus.int_coeffs()[1])
        # each entry is (integer coefficients, positive denominator)
        r0, r1 = (f, 1), (a, 1)
        s0, s1 = ([], 1), ([1], 1)
        while r1[0]:
            quo, rem, scale = _prem(r0[0], r1[0])
            qden = scale * r0[1]
            quo = _primitive([c * r1[1] for c in quo], qden)
            rem = _primitive(rem, qden)
            prod = _dense.mul(quo[0], s1[0])
            ka, kb, den = _dense.common(s0[1], quo[1] * s1[1])
            s_new = _primitive(_dense.add_scaled(s0[0], ka, prod, -kb), den)
            r0, r1 = r1, rem
            s0, s1 = s1, s_new
        g = _trimmed(r0[0])
        if len(g) > 1:
            lead = Fraction(g[-1])
            raise NonInvertible(LaurentPoly.from_coeffs([Fraction(c) / lead for c in g]))
        # s0 * a == g[0] / r0[1]; invert the scalar and undo the residue's denominator
        unit = Fraction(g[0], r0[1] * self._den)
        nums = [c * unit.denominator for c in s0[0]]
        result = ring._from_vector(nums, s0[1] * unit.numerator)
        ring._inv_cache[key] = result
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, _Rational)):
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()


def _trimmed(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return list(c[:n])


def _primitive(nums, den):
    """Strip trailing zeros and cancel the common content; den may be negative."""
    nums = _trimmed(nums)
    if den < 0:
        nums, den = [-c for c in nums], -den
    if not nums:
        return [], 1
    g = _dense.content(nums, den)
    if g != 1:
        nums = [c // g for c in nums]
        den //= g
    return nums, den


def _prem(a, b):
    """Pseudo-division: returns (quo, rem, scale) with scale*a == quo*b + rem."""
    db = len(b) - 1
    dq = len(a) - 1 - db
    if dq < 0:
        return [], list(a), 1
    lc = b[-1]
    rem = list(a)
    quo = [0] * (dq + 1)
    nz = [(i, bi) for i, bi in enumerate(b[:-1]) if bi]
    for j in range(dq, -1, -1):
        c = rem[j + db]
        if lc != 1:
            quo = [lc * x for x in quo]
            rem = [lc * x for x in rem]
        if c:
            quo[j] += c
            for i, bi in nz:
                rem[i + j] -= c * bi
        rem[j + db] = 0
    return quo, _trimmed(rem[:db]), lc ** (dq + 1)


def qr_for_prime(p, power=1):
    """The ring modulo [p] (power 1) or [p]^2 (power 2) for an odd prime p.

    Rings are cached, so repeated calls return the very same object.
    """
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    return _prime_ring(p, power)


@lru_cache(maxsize=None)
def _prime_ring(p, power):
    qp = LaurentPoly.from_coeffs([1] * p)
    if power == 1:
        return QuotientRing(qp, name=f"[{p}]")
    return QuotientRing(qp * qp, name=f"[{p}]^2")


def reduce(ring, a):
    return ring.reduce(a)


def res_add(x, y):
    return x + y


def res_sub(x, y):
    return x - y


def res_mul(x, y):
    return x * y


def res_neg(x):
    return -x


def res_scale(x, c):
    return x.scale(c)


def res_inv(x):
    return x.inv()


def res_is_zero(x):
    return x.is_zero()
