"""Integer congruences modulo p and p^2 at q = 1, swept over large prime ranges.

Per-prime work is vectorized with numpy int64 arrays.  Every product of two
reduced values must fit in 63 bits, so the modulus has to stay below
``SAFE_MODULUS``; larger moduli switch the arrays to Python objects.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import InvalidParams, NonInvertible, UnknownCase
from .report import ERROR, FAIL, PASS, SKIPPED, Report, stopwatch

SAFE_MODULUS = 3_037_000_499  # floor(sqrt(2**63 - 1))


@dataclass(frozen=True)
class ModP:
    """A residue modulo ``modulus`` (p or p^2), kept in [0, modulus)."""

    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _other(self, other):
        if isinstance(other, ModP):
            if other.modulus != self.modulus:
                raise ValueError("moduli differ")
            return other.value
        return int(other)

    def __add__(self, other):
        return ModP(self.value + self._other(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return ModP(self.value - self._other(other), self.modulus)

    def __rsub__(self, other):
        return ModP(self._other(other) - self.value, self.modulus)

    def __neg__(self):
        return ModP(-self.value, self.modulus)

    def __mul__(self, other):
        return ModP(self.value * self._other(other), self.modulus)

    __rmul__ = __mul__

    def inverse(self):
        return mod_inv(self.value, self.modulus)

    def __str__(self):
        return str(self.value)


def mod_inv(a, M):
    """Inverse of a modulo M; NonInvertible if gcd(a, M) != 1."""
    g = gcd(a, M)
    if g != 1:
        raise NonInvertible(g)
    return ModP(pow(a, -1, M), M)


def batch_inverse(values, M):
    """Inverses of all values modulo M with one modular inversion.

    Prefix products a1, a1 a2, ... are inverted once at the end and peeled
    back, for 3(n-1) multiplications in total.
    """
    values = [int(v) % M for v in values]
    n = len(values)
    if n == 0:
        return []
    prefix = [0] * n
    acc = 1
    for i, v in enumerate(values):
        acc = acc * v % M
        prefix[i] = acc
    inv_acc = mod_inv(acc, M).value
    out = [0] * n
    for i in range(n - 1, 0, -1):
        out[i] = inv_acc * prefix[i - 1] % M
        inv_acc = inv_acc * values[i] % M
    out[0] = inv_acc
    return out


def _dtype(M):
    return np.int64 if M <= SAFE_MODULUS else object


def mod_pow_array(base, exps, M):
    """base**e mod M for every entry of the integer array ``exps``."""
    exps = np.asarray(exps, dtype=np.int64)
    result = np.ones(exps.shape, dtype=_dtype(M))
    b = base % M
    e = exps.copy()
    while e.any():
        odd = (e & 1).astype(bool)
        result[odd] = result[odd] * b % M
        b = b * b % M
        e >>= 1
    return result


def power_table(base, n, M):
    """[base**1, ..., base**n] mod M by block doubling."""
    out = np.empty(n, dtype=_dtype(M))
    if n == 0:
        return out
    out[0] = base % M
    filled = 1
    while filled < n:
        step = min(filled, n - filled)
        factor = pow(base, filled, M)
        out[filled:filled + step] = out[:step] * factor % M
        filled += step
    return out


def fermat_quotient2(p):
    """(2^(p-1) - 1)/p reduced modulo p."""
    if p < 3 or p % 2 == 0:
        raise InvalidParams("p must be an odd prime")
    return ModP((pow(2, p - 1, p * p) - 1) // p, p)


def primes_in(lo, hi):
    """Primes in [lo, hi] by a sieve of Eratosthenes."""
    if hi < 2:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(hi ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return [int(x) for x in np.nonzero(sieve)[0] if x >= lo]


# -- Delannoy numbers --------------------------------------------------------------


def _binom_table(p):
    """C(a, b) mod p for a, b < 2p through factorial tables below p and Lucas."""
    fact = [1] * p
    for i in range(1, p):
        fact[i] = fact[i - 1] * i % p
    inv_fact = batch_inverse(fact, p)

    def small(a, b):
        if b < 0 or b > a:
            return 0
        return fact[a] * inv_fact[b] % p * inv_fact[a - b] % p

    def binom(a, b):
        # Lucas: C(a, b) = C(a // p, b // p) C(a % p, b % p) mod p
        return small(a // p, b // p) * small(a % p, b % p) % p

    return binom


def delannoy_mod(n_max, p):
    """D_0..D_{n_max} modulo p from the defining sum sum_k C(n+k, 2k) C(2k, k).

    Binomials come from factorial tables below p; entries with n + k >= p are
    split by Lucas' theorem, so no factorial divisible by p is ever inverted.
    """
    if n_max > p - 1:
        raise InvalidParams("need n_max <= p - 1")
    binom = _binom_table(p)
    return [ModP(sum(binom(n + k, 2 * k) * binom(2 * k, k) for k in range(n + 1)), p)
            for n in range(n_max + 1)]


def delannoy_mod_recurrence(n_max, p):
    """D_0..D_{n_max} modulo p via n D_n = 3(2n-1) D_{n-1} - (n-1) D_{n-2}."""
    if n_max > p - 1:
        raise InvalidParams("need n_max <= p - 1")
    inv = [0, *batch_inverse(range(1, n_max + 1), p)] if n_max >= 1 else [0]
    d = [1, 3 % p][: n_max + 1]
    for n in range(2, n_max + 1):
        d.append((3 * (2 * n - 1) * d[-1] - (n - 1) * d[-2]) * inv[n] % p)
    return d


# -- per-prime context -------------------------------------------------------------


class PrimeContext:
    """Vectors indexed by k = 1..p-1 shared by every classical builder."""

    def __init__(self, p):
        self.p = p
        dt = _dtype(p)
        self.k = np.arange(1, p, dtype=np.int64)
        self.inv = np.array(batch_inverse(range(1, p), p), dtype=dt)
        self.inv2 = (p + 1) // 2
        self._powers = {}
        self.pow2 = self.power_of(2)
        self.pow2inv = self.power_of(self.inv2)
        self.sign = np.where(self.k % 2 == 1, p - 1, 1).astype(dt)  # (-1)^k mod p
        self.fq = fermat_quotient2(p)
        self._inv_powers = {1: self.inv}
        self._chains = {}

    def inv_power(self, m):
        """1/k^m for each k."""
        if m not in self._inv_powers:
            self._inv_powers[m] = self.inv_power(m - 1) * self.inv % self.p
        return self._inv_powers[m]

    def chain_layer(self, m, variant="kohnen", x=None):
        """Terms indexed by the last chain element km, weights applied."""
        key = (variant, None if variant == "kohnen" else x % self.p)
        layers = self._chains.setdefault(key, [])
        p = self.p
        while len(layers) < m:
            if not layers:
                first = self.power_of(1 - x) if variant == "x" else None
                layers.append(self.inv if first is None else first * self.inv % p)
            else:
                layers.append(np.cumsum(layers[-1]) % p * self.inv % p)
        layer = layers[m - 1]
        if variant == "kohnen":
            layer = layer * self.pow2inv % p
        return layer

    def total(self, arr):
        return ModP(int(arr.sum() % self.p), self.p)

    def power_of(self, x):
        """x^k for each k."""
        x %= self.p
        if x not in self._powers:
            self._powers[x] = power_table(x, self.p - 1, self.p)
        return self._powers[x]


@lru_cache(maxsize=4)
def prime_context(p):
    return PrimeContext(p)


def nested_sum_mod(m, p, variant="kohnen", x=None, method="dp"):
    """Chain sum over 1 <= k1 <= ... <= km <= p-1 of 1/(k1...km) times a weight.

    variant "kohnen": weight 2^(-km).   variant "x": weight (1-x)^k1.
    method "dp" uses the prefix-sum recurrence; "naive" enumerates the chains
    in exact rationals and reduces at the end, as an independent oracle.
    """
    if m < 1:
        raise InvalidParams("m must be >= 1")
    if variant not in ("kohnen", "x"):
        raise InvalidParams(f"unknown variant {variant!r}")
    if variant == "x" and x is None:
        raise InvalidParams("variant 'x' needs x")
    if method == "naive":
        return _nested_naive(m, p, variant, x)
    ctx = prime_context(p)
    return ctx.total(ctx.chain_layer(m, variant, x))


def _nested_naive(m, p, variant, x):
    total = Fraction(0)
    for chain in itertools.combinations_with_replacement(range(1, p), m):
        den = 1
        for k in chain:
            den *= k
        if variant == "kohnen":
            total += Fraction(1, den * 2 ** chain[-1])
        else:
            total += Fraction((1 - x) ** chain[0], den)
    return ModP(total.numerator * pow(total.denominator, -1, p), p)


# -- builders ------------------------------------------------------------------------


def _alt_half_range(ctx, upper):
    """sum_{k=1}^{upper} (-1)^(k-1)/k."""
    j = upper
    return ctx.total(-(ctx.sign[:j] * ctx.inv[:j]) % ctx.p)


def b_known(ctx, params):
    p = ctx.p
    if params["form"] == 1:
        rhs = ctx.total(-(ctx.sign * ctx.inv) % p) * ctx.inv2
    else:
        rhs = _alt_half_range(ctx, (p - 1) // 2)
    return ctx.fq, rhs


def b_glaisher(ctx, _):
    lhs = ctx.total(ctx.pow2 * ctx.inv % ctx.p) * ctx.inv2
    return lhs, -ctx.fq


def b_kohnen(ctx, _):
    return ctx.total(ctx.inv * ctx.pow2inv % ctx.p), _alt_half_range(ctx, (ctx.p - 1) // 2)


def b_sun_delannoy(ctx, _):
    p = ctx.p
    d = np.array(delannoy_mod_recurrence(p - 1, p)[1:], dtype=_dtype(p))
    return ctx.total(d * ctx.inv % p), -ctx.fq


def b_multi_kohnen(ctx, params):
    m = params["m"]
    lhs = nested_sum_mod(m, ctx.p)
    rhs = ctx.total(-(ctx.sign * ctx.inv_power(m)) % ctx.p) * ctx.inv2
    return lhs, rhs


def b_multi_even(ctx, params):
    return nested_sum_mod(params["m"], ctx.p), ModP(0, ctx.p)


def b_sun_harmonic(ctx, _):
    p = ctx.p
    harmonic = np.cumsum(ctx.inv) % p
    return ctx.total(harmonic * ctx.inv % p * ctx.pow2inv % p), ModP(0, p)


def b_power_sum_zero(ctx, params):
    return ctx.total(ctx.inv_power(params["m"])), ModP(0, ctx.p)


def _x_rhs(ctx, x, m):
    return ctx.total((ctx.power_of(x) - 1) % ctx.p * ctx.inv_power(m) % ctx.p)


def b_xxyy(ctx, params):
    x, m = params["x"], params["m"]
    return nested_sum_mod(m, ctx.p, "x", x), _x_rhs(ctx, x, m)


def b_cor_x_neg1(ctx, params):
    m = params["m"]
    return nested_sum_mod(m, ctx.p, "x", -1), _x_rhs(ctx, -1, m)


def b_cor_x_2(ctx, params):
    m = params["m"]
    return nested_sum_mod(m, ctx.p, "x", 2), _x_rhs(ctx, 2, m)


def b_cor_combined(ctx, params):
    p, m = ctx.p, params["m"]
    lhs = nested_sum_mod(m, p, "x", -1) - nested_sum_mod(m, p, "x", 2)
    rhs = ctx.total((ctx.sign - ctx.pow2) % p * ctx.inv_power(m) % p)
    return lhs, rhs


def b_sun95(ctx, _):
    p = ctx.p
    j = (p - 1) // 2
    lhs = ctx.total(ctx.inv[:j] * ctx.pow2inv[:j] % p)
    return lhs, _alt_half_range(ctx, 3 * p // 4)


def b_sun_zh(ctx, _):
    p = ctx.p
    M = p * p
    dt = _dtype(M)
    inv = np.array(batch_inverse(range(1, p), M), dtype=dt)
    pow2inv = power_table(pow(2, -1, M), p - 1, M)
    lhs = ModP(int((inv * pow2inv % M).sum() % M), M)
    F = (pow(2, p - 1, p ** 3) - 1) // p  # Fermat quotient modulo p^2
    rhs = ModP(F, M) - ModP(p * F * F * pow(2, -1, M), M)
    return lhs, rhs


@dataclass(frozen=True)
class ClassicalCase:
    id: str
    statement: str
    build: object
    admissible: object = lambda p, **params: p >= 3
    grid: tuple = ({},)


M_ALL = (1, 2, 3, 4)
X_ALL = (-3, -2, -1, 0, 1, 2, 3)

CLASSICAL_CASES = [
    ClassicalCase("known", "(2^(p-1)-1)/p == 1/2 sum (-1)^(k-1)/k == sum_{k<=(p-1)/2} (-1)^(k-1)/k",
                  b_known, grid=({"form": 1}, {"form": 2})),
    ClassicalCase("glaisher", "sum 2^(k-1)/k == -(2^(p-1)-1)/p", b_glaisher),
    ClassicalCase("kohnen", "sum 1/(k 2^k) == sum_{k<=(p-1)/2} (-1)^(k-1)/k", b_kohnen),
    ClassicalCase("sun-delannoy", "sum D_k/k == -(2^(p-1)-1)/p", b_sun_delannoy),
    ClassicalCase("multi-kohnen", "sum_{k1<=...<=km} 1/(k1...km 2^km) == 1/2 sum (-1)^(k-1)/k^m",
                  b_multi_kohnen, lambda p, m: p > m + 1, tuple({"m": m} for m in M_ALL)),
    ClassicalCase("multi-even", "sum_{k1<=...<=km} 1/(k1...km 2^km) == 0 for even m",
                  b_multi_even, lambda p, m: p > m + 1, ({"m": 2}, {"m": 4})),
    ClassicalCase("sun-harmonic", "sum H_k/(k 2^k) == 0", b_sun_harmonic, lambda p: p >= 5),
    ClassicalCase("power-sum-zero", "sum 1/k^m == 0", b_power_sum_zero,
                  lambda p, m: p > m + 1, tuple({"m": m} for m in M_ALL)),
    ClassicalCase("xxyy", "sum_{k1<=...<=km} (1-x)^k1/(k1...km) == sum (x^k-1)/k^m", b_xxyy,
                  lambda p, x, m: p >= 3,
                  tuple({"x": x, "m": m} for x in X_ALL for m in (1, 2, 3))),
    ClassicalCase("cor-x-neg1", "sum_{k1<=...<=km} 2^k1/(k1...km) == sum ((-1)^k-1)/k^m",
                  b_cor_x_neg1, lambda p, m: p >= 3, tuple({"m": m} for m in M_ALL)),
    ClassicalCase("cor-x-2", "sum_{k1<=...<=km} (-1)^k1/(k1...km) == sum (2^k-1)/k^m",
                  b_cor_x_2, lambda p, m: p >= 3, tuple({"m": m} for m in M_ALL)),
    ClassicalCase("cor-combined", "sum_{k1<=...<=km} (2^k1-(-1)^k1)/(k1...km) == sum ((-1)^k-2^k)/k^m",
                  b_cor_combined, lambda p, m: p >= 3, tuple({"m": m} for m in M_ALL)),
    ClassicalCase("sun95", "sum_{k<=(p-1)/2} 1/(k 2^k) == sum_{k<=floor(3p/4)} (-1)^(k-1)/k",
                  b_sun95),
    ClassicalCase("sunZH", "sum 1/(k 2^k) == F - F^2 p/2 (mod p^2), F = (2^(p-1)-1)/p", b_sun_zh),
]

CLASSICAL = {c.id: c for c in CLASSICAL_CASES}


def classical_ids():
    return [c.id for c in CLASSICAL_CASES]


def _admissible(case, p, params):
    names = case.admissible.__code__.co_varnames[1:case.admissible.__code__.co_argcount]
    return case.admissible(p, **{k: params[k] for k in names})


def verify_classical(id, p, params=None, perturb=False, exploratory=False):
    """Compare both sides of one classical congruence at one prime."""
    try:
        case = CLASSICAL[id]
    except KeyError:
        raise UnknownCase(id) from None
    params = dict(params if params is not None else case.grid[0])
    if not _admissible(case, p, params):
        if not exploratory:
            return Report(id, p, params, SKIPPED)
        params["exploratory"] = True
    with stopwatch() as ms:
        try:
            lhs, rhs = case.build(prime_context(p), params)
            if perturb:
                rhs = rhs + 1
            failure = None
        except Exception as exc:  # builder errors are reported, not raised
            failure = f"{type(exc).__name__}: {exc}"
    if failure is not None:
        return Report(id, p, params, ERROR, failure, ms[0])
    if lhs == rhs:
        return Report(id, p, params, PASS, None, ms[0])
    return Report(id, p, params, FAIL, f"lhs={lhs} rhs={rhs} (mod {lhs.modulus})", ms[0])


def _grid(case, m_values, x_values):
    for params in case.grid:
        if m_values is not None and "m" in params and params["m"] not in m_values:
            continue
        if x_values is not None and "x" in params and params["x"] not in x_values:
            continue
        yield params


def _classical_for_prime(p, ids, perturb, exploratory, m_values=None, x_values=None):
    out = []
    for id in ids:
        for params in _grid(CLASSICAL[id], m_values, x_values):
            out.append(verify_classical(id, p, params, perturb=id in perturb,
                                        exploratory=exploratory))
    return out


def verify_classical_all(primes, ids=None, perturb=(), exploratory=False, jobs=1,
                         m_values=None, x_values=None):
    """Reports for every classical case x prime x parameter set, sorted.

    ``m_values`` / ``x_values`` restrict the parameter grids when given.
    """
    ids = list(ids) if ids is not None else classical_ids()
    for id in ids:
        if id not in CLASSICAL:
            raise UnknownCase(id)
    primes = [p for p in primes if p >= 3]
    perturb = frozenset(perturb)
    m_values = None if m_values is None else frozenset(m_values)
    x_values = None if x_values is None else frozenset(x_values)
    if jobs and jobs > 1 and len(primes) > 1:
        from concurrent.futures import ProcessPoolExecutor
        n = len(primes)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_classical_for_prime, primes, [ids] * n, [perturb] * n,
                              [exploratory] * n, [m_values] * n, [x_values] * n, chunksize=16)
            reports = [r for chunk in chunks for r in chunk]
    else:
        reports = [r for p in primes
                   for r in _classical_for_prime(p, ids, perturb, exploratory, m_values, x_values)]
    return sorted(reports, key=Report.sort_key)


__all__ = [
    "ModP", "mod_inv", "batch_inverse", "mod_pow_array", "power_table", "fermat_quotient2", "primes_in",
    "delannoy_mod", "delannoy_mod_recurrence", "nested_sum_mod", "PrimeContext",
    "prime_context", "ClassicalCase", "CLASSICAL", "CLASSICAL_CASES", "classical_ids",
    "verify_classical", "verify_classical_all", "SAFE_MODULUS",
]
