"""Polynomials in x over Laurent-q coefficients, and exact checks of the
Dilcher / Van Hamme / Kohnen family of identities.

Each verifier multiplies both sides by an explicit common denominator and
compares the resulting polynomials.  For denominators built from the
factors (1 - q^k), k in some range, ``_Clearing`` supplies the full
product and each cofactor (the product with one factor left out), so no
polynomial division is ever needed.
"""

import itertools
from dataclasses import dataclass
from math import comb, lcm

from .errors import InvalidParams
from .qkit import q_binomial
from .report import FAIL, PASS, Report, stopwatch
from .ring import ONE, ZERO, LaurentPoly


class BivarPoly:
    """sum_r c_r(q) x**r with Laurent-polynomial coefficients, r >= 0."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = {0: coeffs}
        self.coeffs = {r: LaurentPoly.coerce(c) for r, c in coeffs.items() if c}
        if any(r < 0 for r in self.coeffs):
            raise ValueError("negative powers of x are not supported")

    @classmethod
    def x(cls, r=1):
        return cls({r: ONE})

    @classmethod
    def coerce(cls, v):
        return v if isinstance(v, BivarPoly) else cls(v)

    def coeff(self, r):
        return self.coeffs.get(r, ZERO)

    @property
    def degree(self):
        return max(self.coeffs) if self.coeffs else None

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            other = BivarPoly(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other):
        other = BivarPoly.coerce(other)
        out = dict(self.coeffs)
        for r, c in other.coeffs.items():
            out[r] = out.get(r, ZERO) + c
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({r: -c for r, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-BivarPoly.coerce(other))

    def __rsub__(self, other):
        return BivarPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BivarPoly):
            c = LaurentPoly.coerce(other)
            return BivarPoly({r: a * c for r, a in self.coeffs.items()})
        out = {}
        for r, a in self.coeffs.items():
            for s, b in other.coeffs.items():
                out[r + s] = out.get(r + s, ZERO) + a * b
        return BivarPoly(out)

    __rmul__ = __mul__

    def eval_x(self, v):
        """Substitute x = v (a scalar or Laurent polynomial)."""
        v = LaurentPoly.coerce(v)
        total = ZERO
        for r, c in self.coeffs.items():
            total = total + c * v ** r
        return total

    def __repr__(self):
        if not self.coeffs:
            return "BivarPoly(0)"
        body = " + ".join(f"({c})*x^{r}" for r, c in sorted(self.coeffs.items()))
        return f"BivarPoly({body})"

    def text(self):
        return "{" + ", ".join(f"x^{r}: {c}" for r, c in sorted(self.coeffs.items())) + "}"


def bv_add(a, b):
    return BivarPoly.coerce(a) + b


def bv_mul(a, b):
    return BivarPoly.coerce(a) * b


def bv_eq(a, b):
    return BivarPoly.coerce(a) == BivarPoly.coerce(b)


def pochhammer_x(n):
    """(x; q)_n = prod_{j<n} (1 - x q^j)."""
    if n < 0:
        raise InvalidParams("n must be nonnegative")
    out = BivarPoly(ONE)
    for j in range(n):
        out = out * BivarPoly({0: ONE, 1: LaurentPoly.monomial(j, -1)})
    return out


def _one_minus_q(k):
    return ONE - LaurentPoly.monomial(k)


class _Clearing:
    """prod_{k=lo}^{hi} (1 - q^k) and its cofactors."""

    def __init__(self, lo, hi):
        self.lo, self.hi = lo, hi
        factors = [_one_minus_q(k) for k in range(lo, hi + 1)]
        prefix = [ONE]
        for f in factors:
            prefix.append(prefix[-1] * f)
        suffix = [ONE]
        for f in reversed(factors):
            suffix.append(suffix[-1] * f)
        suffix.reverse()
        self.full = prefix[-1]
        self._cof = [prefix[i] * suffix[i + 1] for i in range(len(factors))]

    def cof(self, k):
        return self._cof[k - self.lo]


def _sign(k):
    return -1 if k % 2 else 1


def _choose2(k):
    return k * (k - 1) // 2


# -- chain sums ----------------------------------------------------------------


def x_dilcher_lhs(m, n, with_x=True, clearing=None):
    """Cleared chain sum sum_{k1<=...<=km<=n} (x;q)_{k1} prod q^ki/(1-q^ki), times P^m.

    Computed by the prefix-sum recurrence A_1(k) = first(k) q^k cof(k),
    A_i(k) = q^k cof(k) sum_{l<=k} A_{i-1}(l).
    """
    clearing = clearing or _Clearing(1, n)
    weights = [None] + [clearing.cof(k).shift(k) for k in range(1, n + 1)]
    first = [None] + [pochhammer_x(k) if with_x else BivarPoly(ONE) for k in range(1, n + 1)]
    layer = [first[k] * weights[k] for k in range(1, n + 1)]
    for _ in range(m - 1):
        running = BivarPoly()
        nxt = []
        for k in range(1, n + 1):
            running = running + layer[k - 1]
            nxt.append(running * weights[k])
        layer = nxt
    total = BivarPoly()
    for a in layer:
        total = total + a
    return total


def x_dilcher_lhs_naive(m, n, with_x=True, clearing=None):
    """Same cleared sum by explicit enumeration of every chain; exponential in m."""
    clearing = clearing or _Clearing(1, n)
    total = BivarPoly()
    for chain in itertools.combinations_with_replacement(range(1, n + 1), m):
        term = pochhammer_x(chain[0]) if with_x else BivarPoly(ONE)
        w = ONE
        for k in chain:
            w = w * clearing.cof(k).shift(k)
        total = total + term * w
    return total


def x_dilcher_rhs(m, n, clearing=None):
    clearing = clearing or _Clearing(1, n)
    total = BivarPoly()
    for k in range(1, n + 1):
        c = (q_binomial(n, k) * clearing.cof(k) ** m).shift(_choose2(k) + k * m).scale(_sign(k))
        total = total + BivarPoly({k: c, 0: -c})
    return total


# -- verifiers -----------------------------------------------------------------


def _outcome(case, params, lhs, rhs, millis):
    diff = BivarPoly.coerce(lhs) - BivarPoly.coerce(rhs)
    if diff.is_zero():
        return Report(case, None, params, PASS, None, millis)
    return Report(case, None, params, FAIL, diff.text(), millis)


def _require(cond, msg):
    if not cond:
        raise InvalidParams(msg)


def lagrange_sides(n, r):
    """Both sides of the interpolation identity times (x; q)_{n+1}."""
    _require(n >= 1 and 0 <= r <= n, "need n >= 1 and 0 <= r <= n")
    factors = [BivarPoly({0: ONE, 1: LaurentPoly.monomial(j, -1)}) for j in range(n + 1)]
    lhs = BivarPoly()
    for k in range(n + 1):
        prod = BivarPoly(ONE)
        for j, f in enumerate(factors):
            if j != k:
                prod = prod * f
        c = q_binomial(n, k).shift(k * (k + 1) // 2 - r * k).scale(_sign(k))
        lhs = lhs + prod * c
    qq = ONE
    for j in range(1, n + 1):
        qq = qq * _one_minus_q(j)
    return lhs, BivarPoly({r: qq})


def van_hamme_sides(n):
    _require(n >= 1, "need n >= 1")
    cl = _Clearing(1, n)
    lhs = ZERO
    rhs = ZERO
    for k in range(1, n + 1):
        lhs = lhs + cl.cof(k).shift(k)
        rhs = rhs + (q_binomial(n, k) * cl.cof(k)).shift(k * (k + 1) // 2).scale(-_sign(k))
    return BivarPoly(lhs), BivarPoly(rhs)


def dilcher_sides(m, n):
    _require(m >= 1 and n >= 1, "need m, n >= 1")
    cl = _Clearing(1, n)
    lhs = x_dilcher_lhs(m, n, with_x=False, clearing=cl)
    rhs = ZERO
    for k in range(1, n + 1):
        rhs = rhs + (q_binomial(n, k) * cl.cof(k) ** m).shift(_choose2(k) + k * m).scale(-_sign(k))
    return lhs, BivarPoly(rhs)


def x_dilcher_sides(m, n):
    _require(m >= 1 and n >= 1, "need m, n >= 1")
    cl = _Clearing(1, n)
    return x_dilcher_lhs(m, n, clearing=cl), x_dilcher_rhs(m, n, clearing=cl)


def q_kohnen_sides(n):
    """The m = 1 case, expanded directly rather than through the chain recurrence."""
    _require(n >= 1, "need n >= 1")
    cl = _Clearing(1, n)
    lhs = BivarPoly()
    rhs = BivarPoly()
    for k in range(1, n + 1):
        lhs = lhs + pochhammer_x(k) * cl.cof(k).shift(k)
        c = (q_binomial(n, k) * cl.cof(k)).shift(k * (k + 1) // 2).scale(_sign(k))
        rhs = rhs + BivarPoly({k: c, 0: -c})
    return lhs, rhs


def kohnen_binomial_sides(n):
    """sum (1-x)^k / k against sum (-1)^k C(n,k) (x^k - 1) / k, both times lcm(1..n)."""
    _require(n >= 1, "need n >= 1")
    L = lcm(*range(1, n + 1))
    one_minus_x = BivarPoly({0: ONE, 1: -ONE})
    lhs = BivarPoly()
    power = BivarPoly(ONE)
    rhs = BivarPoly()
    for k in range(1, n + 1):
        power = power * one_minus_x
        lhs = lhs + power * (L // k)
        c = LaurentPoly(_sign(k) * comb(n, k) * (L // k))
        rhs = rhs + BivarPoly({k: c, 0: -c})
    return lhs, rhs


def prefix_lemma_sides(r, k2):
    _require(1 <= r <= k2, "need 1 <= r <= k2")
    cl = _Clearing(r, k2)
    lhs = ZERO
    for k1 in range(r, k2 + 1):
        lhs = lhs + (q_binomial(k1, r) * cl.cof(k1)).shift(k1)
    rhs = (q_binomial(k2, r) * cl.cof(r)).shift(r)
    return BivarPoly(lhs), BivarPoly(rhs)


def chain_coeff_sides(m, n, r):
    """Nested sum over chains r <= k1 <= ... <= km <= n (by enumeration) against
    its closed form, both times prod_{k=r}^n (1 - q^k)^m."""
    _require(m >= 1 and 1 <= r <= n, "need m >= 1 and 1 <= r <= n")
    cl = _Clearing(r, n)
    lhs = ZERO
    for chain in itertools.combinations_with_replacement(range(r, n + 1), m):
        w = q_binomial(chain[0], r)
        for k in chain:
            w = w * cl.cof(k).shift(k)
        lhs = lhs + w
    lhs = lhs.shift(_choose2(r)).scale(_sign(r))
    rhs = (q_binomial(n, r) * cl.cof(r) ** m).shift(_choose2(r) + m * r).scale(_sign(r))
    return BivarPoly(lhs), BivarPoly(rhs)


def x_dilcher_coefficient_sides(m, n, r):
    """Coefficient of x^r in the cleared chain sum against the closed form."""
    _require(m >= 1 and 1 <= r <= n, "need m >= 1 and 1 <= r <= n")
    cl = _Clearing(1, n)
    lhs = x_dilcher_lhs(m, n, clearing=cl).coeff(r)
    rhs = (q_binomial(n, r) * cl.cof(r) ** m).shift(_choose2(r) + m * r).scale(_sign(r))
    return BivarPoly(lhs), BivarPoly(rhs)


@dataclass(frozen=True)
class IdentityCase:
    id: str
    signature: tuple
    sides: object
    valid: object
    doc: str = ""

    def grid(self, n_max, m_max):
        """Every admissible parameter dict with n-like indices <= n_max and m <= m_max."""
        ranges = {"m": range(1, m_max + 1), "n": range(1, n_max + 1),
                  "r": range(0, n_max + 1), "k2": range(1, n_max + 1)}
        for values in itertools.product(*(ranges[s] for s in self.signature)):
            params = dict(zip(self.signature, values))
            if self.valid(**params):
                yield params


IDENTITIES = {
    c.id: c for c in [
        IdentityCase("lagrange", ("n", "r"), lagrange_sides,
                     lambda n, r: n >= 1 and 0 <= r <= n,
                     "interpolation of x^r at the nodes q^-k"),
        IdentityCase("van-hamme", ("n",), van_hamme_sides, lambda n: n >= 1),
        IdentityCase("dilcher", ("m", "n"), dilcher_sides, lambda m, n: m >= 1 and n >= 1),
        IdentityCase("x-dilcher", ("m", "n"), x_dilcher_sides, lambda m, n: m >= 1 and n >= 1),
        IdentityCase("q-kohnen", ("n",), q_kohnen_sides, lambda n: n >= 1),
        IdentityCase("kohnen-binomial", ("n",), kohnen_binomial_sides, lambda n: n >= 1),
        IdentityCase("prefix-lemma", ("r", "k2"), prefix_lemma_sides, lambda r, k2: 1 <= r <= k2),
        IdentityCase("chain-coeff", ("m", "n", "r"), chain_coeff_sides,
                     lambda m, n, r: m >= 1 and 1 <= r <= n),
        IdentityCase("x-dilcher-coeff", ("m", "n", "r"), x_dilcher_coefficient_sides,
                     lambda m, n, r: m >= 1 and 1 <= r <= n),
    ]
}


def identity_ids():
    return list(IDENTITIES)


def verify_identity(id, **params):
    case = IDENTITIES[id]
    with stopwatch() as ms:
        lhs, rhs = case.sides(**params)
    return _outcome(id, params, lhs, rhs, ms[0])


def verify_lagrange(n, r):
    return verify_identity("lagrange", n=n, r=r)


def verify_van_hamme(n):
    return verify_identity("van-hamme", n=n)


def verify_dilcher(m, n):
    return verify_identity("dilcher", m=m, n=n)


def verify_x_dilcher(m, n):
    return verify_identity("x-dilcher", m=m, n=n)


def verify_q_kohnen(n):
    return verify_identity("q-kohnen", n=n)


def verify_kohnen_binomial(n):
    return verify_identity("kohnen-binomial", n=n)


def verify_chain_coeff(m, n, r):
    return verify_identity("chain-coeff", m=m, n=n, r=r)


def verify_prefix_lemma(r, k2):
    return verify_identity("prefix-lemma", r=r, k2=k2)


def identity_sweep(ids=None, n_max=8, m_max=4):
    """Reports for every identity and admissible parameter set within the bounds."""
    reports = []
    for id in ids or identity_ids():
        for params in IDENTITIES[id].grid(n_max, m_max):
            reports.append(verify_identity(id, **params))
    return reports


__all__ = [
    "BivarPoly", "IdentityCase", "IDENTITIES", "bv_add", "bv_mul", "bv_eq", "pochhammer_x",
    "x_dilcher_lhs", "x_dilcher_lhs_naive", "identity_ids", "verify_identity",
    "verify_lagrange", "verify_van_hamme", "verify_dilcher", "verify_x_dilcher",
    "verify_q_kohnen", "verify_kohnen_binomial", "verify_chain_coeff", "verify_prefix_lemma",
    "identity_sweep",
]
