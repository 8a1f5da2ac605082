"""Registry and runner for q-congruences modulo [p] and [p]^2.

Every case builds its left and right sides directly as residues (all
denominators are inverted inside the quotient ring) and passes when the
difference is exactly zero.

Notation used in the case statements below:
    F      the q-Fermat quotient ((-q;q)_{p-1} - 1)/[p]
    A      the scalar multiple (p-1)(1-q)/2
    N_k    the q-Pochhammer product (-q;q)_k
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidParams, UnknownCase
from .qkit import (central_qbinom_divisible, q_binomial_res, q_delannoy_res,
                   q_fermat_quotient, q_harmonic_res, q_int)
from .quotient import is_prime, qr_for_prime
from .report import ERROR, FAIL, PASS, SKIPPED, Report, stopwatch
from .ring import LaurentPoly


class RingContext:
    """Per-(prime, modulus power) residues shared by every builder."""

    def __init__(self, p, power=1):
        self.p = p
        self.power = power
        self.ring = ring = qr_for_prime(p, power)
        self.q = ring.gen()
        self.one = ring.one()
        # inv_int[k] = 1/[k], inv_1pq[k] = 1/(1 + q^k) for 1 <= k <= p-1
        self.inv_int = [None] + [ring.reduce(q_int(k)).inv() for k in range(1, p)]
        self.inv_1pq = [None] + [ring.reduce(LaurentPoly({0: 1, k: 1})).inv() for k in range(1, p)]
        self.negpoch = [self.one]
        self.negpoch_inv = [self.one]
        for k in range(1, p):
            prev = self.negpoch[-1]
            self.negpoch.append(prev + prev.mul_q_power(k))
            self.negpoch_inv.append(self.negpoch_inv[-1] * self.inv_1pq[k])
        self.inv_1mq = ring.reduce(LaurentPoly({0: 1, 1: -1})).inv()
        self.fermat = ring.reduce(q_fermat_quotient(p))
        one_minus_q = ring.reduce(LaurentPoly({0: 1, 1: -1}))
        self.one_minus_q = one_minus_q
        self.A = one_minus_q.scale(Fraction(p - 1, 2))

    def qpow(self, e):
        return self.one.mul_q_power(e)


@lru_cache(maxsize=8)
def ring_context(p, power=1):
    return RingContext(p, power)


def _sign(k):
    return -1 if k % 2 else 1


# -- chain sums -----------------------------------------------------------------


def chain_sum_residue(ring, p, m, variant="dp"):
    """sum over chains 1 <= k1 <= ... <= km <= p-1 of
    q^{C(km+1,2)} / ([k1]...[km] (-q;q)_{km}).

    ``variant`` is "dp" for the prefix-sum recurrence (linear in m) or
    "naive" for explicit chain enumeration, kept as an oracle.
    """
    if m < 1:
        raise InvalidParams("m must be >= 1")
    power = 1 if ring is qr_for_prime(p, 1) else 2
    ctx = ring_context(p, power)
    tail = [None] + [ctx.negpoch_inv[k].mul_q_power(k * (k + 1) // 2) for k in range(1, p)]
    total = ring.zero()
    if variant == "dp":
        layer = [None] + ctx.inv_int[1:]
        for _ in range(m - 1):
            running = ring.zero()
            nxt = [None]
            for k in range(1, p):
                running = running + layer[k]
                nxt.append(ctx.inv_int[k] * running)
            layer = nxt
        for k in range(1, p):
            total = total + tail[k] * layer[k]
    elif variant == "naive":
        for chain in itertools.combinations_with_replacement(range(1, p), m):
            term = tail[chain[-1]]
            for k in chain:
                term = term * ctx.inv_int[k]
            total = total + term
    else:
        raise InvalidParams(f"unknown chain-sum variant {variant!r}")
    return total


# -- builders -------------------------------------------------------------------


def _sum(ctx, terms):
    total = ctx.ring.zero()
    for t in terms:
        total = total + t
    return total


def _range(ctx):
    return range(1, ctx.p)


def b_known(ctx, _):
    lhs = _sum(ctx, (ctx.inv_int[k].scale(_sign(k)) for k in _range(ctx)))
    return lhs, ctx.fermat.scale(-2) - ctx.A


def b_glaisher_pan(ctx, _):
    lhs = _sum(ctx, ((ctx.negpoch[k] * ctx.inv_int[k]).mul_q_power(k) for k in _range(ctx)))
    return lhs.scale(Fraction(1, 2)), -ctx.fermat - ctx.A


def b_glaisher_tauraso(ctx, _):
    lhs = _sum(ctx, ((ctx.negpoch[k - 1] * ctx.inv_int[k]).mul_q_power(-(k * (k - 1) // 2))
                     for k in _range(ctx)))
    return lhs, -ctx.fermat


def b_kohnen_tauraso(ctx, _):
    lhs = _sum(ctx, ((ctx.negpoch_inv[k] * ctx.inv_int[k]).mul_q_power(k) for k in _range(ctx)))
    return lhs, ctx.fermat


def b_delannoy(ctx, _):
    lhs = _sum(ctx, (q_delannoy_res(ctx.ring, k) * ctx.inv_int[k] for k in _range(ctx)))
    return lhs, -ctx.fermat + ctx.A.scale(Fraction(1, 2))


def b_delannoy_bar(ctx, _):
    lhs = _sum(ctx, ((q_delannoy_res(ctx.ring, m, weighted=False) - ctx.one) * ctx.inv_int[m]
                     for m in _range(ctx)))
    rhs = _sum(ctx, (ctx.inv_int[k].scale(_sign(k)) for k in range(1, (ctx.p - 1) // 2 + 1)))
    return lhs, rhs


def _glaisher_new_lhs(ctx):
    return _sum(ctx, ((ctx.negpoch[k - 1] * ctx.inv_int[k]).mul_q_power(k) for k in _range(ctx)))


def b_glaisher_new(ctx, _):
    return _glaisher_new_lhs(ctx), -ctx.fermat - ctx.A


def _kohnen_new_lhs(ctx):
    return _sum(ctx, ((ctx.negpoch_inv[k] * ctx.inv_int[k]).mul_q_power(k * (k + 1) // 2)
                      for k in _range(ctx)))


def b_kohnen_new(ctx, _):
    return _kohnen_new_lhs(ctx), ctx.fermat + ctx.A


def b_kohnen_half(ctx, _):
    rhs = _sum(ctx, ((ctx.inv_int[k] + ctx.inv_int[k].mul_q_power(k)).scale(Fraction(-_sign(k), 2))
                     for k in range(1, (ctx.p - 1) // 2 + 1)))
    return _kohnen_new_lhs(ctx), rhs + ctx.A.scale(Fraction(1, 2))


def b_harmonic_andrews(ctx, _):
    return q_harmonic_res(ctx.ring, ctx.p - 1), ctx.A


def b_binom_p_1(ctx, params):
    k = params["k"]
    lhs = q_binomial_res(ctx.ring, ctx.p - 1, k)
    rhs = ctx.qpow(-(k * (k + 1) // 2)).scale(_sign(k))
    return lhs, rhs


def b_central_vanish(ctx, params):
    k = params["k"]
    if central_qbinom_divisible(ctx.p, k):
        lhs = ctx.ring.zero()
    else:
        lhs = q_binomial_res(ctx.ring, 2 * k, k)
    return lhs, ctx.ring.zero()


def b_multi(ctx, params):
    m = params["m"]
    lhs = chain_sum_residue(ctx.ring, ctx.p, m)
    rhs = ctx.ring.zero()
    for k in _range(ctx):
        if k % 2:
            rhs = rhs - (ctx.inv_int[k] ** m).mul_q_power((m - 1) * k)
    return lhs, rhs.scale(_sign(m))


def _sun_harmonic_lhs(ctx):
    total = ctx.ring.zero()
    harmonic = ctx.ring.zero()
    for k in _range(ctx):
        harmonic = harmonic + ctx.inv_int[k]
        total = total + (harmonic * ctx.inv_int[k] * ctx.negpoch_inv[k]).mul_q_power(k * (k + 1) // 2)
    return total


def _square_one_minus_q(ctx, c):
    return (ctx.one_minus_q * ctx.one_minus_q).scale(c)


def b_sun_harmonic(ctx, _):
    p = ctx.p
    return _sun_harmonic_lhs(ctx), _square_one_minus_q(ctx, Fraction(p * p - 1, 24))


def b_alt_square_zero(ctx, _):
    lhs = _sum(ctx, ((ctx.inv_int[k] * ctx.inv_int[k]).mul_q_power(k).scale(_sign(k))
                     for k in _range(ctx)))
    return lhs, ctx.ring.zero()


def b_shi_pan(ctx, _):
    p = ctx.p
    lhs = _sum(ctx, ((ctx.inv_int[k] * ctx.inv_int[k]).mul_q_power(k) for k in _range(ctx)))
    return lhs, _square_one_minus_q(ctx, Fraction(-(p * p - 1), 12))


def _weighted_inv_1pq(ctx, shift):
    """sum_k k q^{k+shift} / (1 + q^k)."""
    return _sum(ctx, (ctx.inv_1pq[k].mul_q_power(k + shift).scale(k)
                      for k in _range(ctx)))


def _glaisher_over_1mq(ctx):
    """B = (p-1)/2 + sum_k N_{k-1} q^k/(1-q^k), the Glaisher-type congruence divided by 1-q."""
    return ctx.one.scale(Fraction(ctx.p - 1, 2)) + _glaisher_new_lhs(ctx) * ctx.inv_1mq


def b_derivative_cor(ctx, _):
    return _weighted_inv_1pq(ctx, 0), _glaisher_over_1mq(ctx).scale(ctx.p)


def b_second_p(ctx, _):
    p = ctx.p
    lhs = ctx.negpoch[p - 1] - ctx.one
    rhs = -((ctx.one - ctx.qpow(p)) * _glaisher_over_1mq(ctx))
    return lhs, rhs


def b_third_p(ctx, _):
    p = ctx.p
    lhs = ctx.negpoch[p - 1] * _weighted_inv_1pq(ctx, -1)
    rhs = _glaisher_over_1mq(ctx).mul_q_power(p - 1).scale(p)
    return lhs, rhs


# Variants whose right-hand bracket uses A = (p-1)(1-q)/2 and 1/[k].  Each
# carries an extra factor 1-q and fails for every prime; kept as controls.


def b_derivative_cor_with_a(ctx, _):
    p = ctx.p
    inner = _glaisher_new_lhs(ctx) * ctx.inv_1mq
    return _weighted_inv_1pq(ctx, 0), ctx.A.scale(p) + inner.scale(p)


def b_second_p_with_a(ctx, _):
    p = ctx.p
    lhs = ctx.negpoch[p - 1] - ctx.one
    rhs = -((ctx.one - ctx.qpow(p)) * (ctx.A + _glaisher_new_lhs(ctx)))
    return lhs, rhs


def b_third_p_with_a(ctx, _):
    p = ctx.p
    lhs = ctx.negpoch[p - 1] * _weighted_inv_1pq(ctx, -1)
    rhs = (ctx.A + _glaisher_new_lhs(ctx)).mul_q_power(p - 1).scale(p)
    return lhs, rhs


def b_quotient_cor(ctx, _):
    p = ctx.p
    lhs = ctx.fermat * ctx.inv_1mq
    rhs = _weighted_inv_1pq(ctx, 0).scale(Fraction(-1, p))
    return lhs, rhs


# -- registry -------------------------------------------------------------------


def _no_params(p):
    return [{}]


@dataclass(frozen=True)
class CongruenceCase:
    id: str
    statement: str
    build: object
    min_prime: int = 3
    modulus_power: int = 1
    params_for: object = _no_params
    notes: str = ""
    param_names: tuple = field(default=())

    def admissible(self, p):
        return p >= self.min_prime

    def modulus(self, p):
        return f"[{p}]" if self.modulus_power == 1 else f"[{p}]^2"


def _k_all(p):
    return [{"k": k} for k in range(1, p)]


def _k_upper(p):
    return [{"k": k} for k in range((p - 1) // 2 + 1, p)]


DEFAULT_M = (1, 2, 3, 4)

_ERRATUM_NOTE = ("right side uses (p-1)/2 and 1/(1-q^k); the variant with A and 1/[k] "
                 "is off by a factor 1-q (see the -with-A case)")

CASES = [
    CongruenceCase("q-known",
                   "sum_{k<p} (-1)^k/[k] == -2F - A", b_known),
    CongruenceCase("q-glaisher-pan",
                   "sum_{k<p} N_k q^k/(2[k]) == -F - A", b_glaisher_pan),
    CongruenceCase("q-glaisher-tauraso",
                   "sum_{k<p} N_{k-1} q^{-C(k,2)}/[k] == -F", b_glaisher_tauraso),
    CongruenceCase("q-kohnen-tauraso",
                   "sum_{k<p} q^k/([k] N_k) == F", b_kohnen_tauraso),
    CongruenceCase("q-delannoy",
                   "sum_{k<p} D_k(q)/[k] == -F + A/2", b_delannoy),
    CongruenceCase("q-delannoy-bar",
                   "sum_{m<p} (Dbar_m(q) - 1)/[m] == sum_{k<=(p-1)/2} (-1)^k/[k]", b_delannoy_bar),
    CongruenceCase("q-glaisher-new",
                   "sum_{k<p} N_{k-1} q^k/[k] == -F - A", b_glaisher_new),
    CongruenceCase("q-kohnen-new",
                   "sum_{k<p} q^{C(k+1,2)}/([k] N_k) == F + A", b_kohnen_new),
    CongruenceCase("q-kohnen-half",
                   "sum_{k<p} q^{C(k+1,2)}/([k] N_k) == "
                   "sum_{k<=(p-1)/2} (-1)^{k-1}(1+q^k)/(2[k]) + A/2", b_kohnen_half,
                   notes="half-range rewrite of q-kohnen-new"),
    CongruenceCase("q-harmonic-andrews",
                   "H_{p-1}(q) == A", b_harmonic_andrews),
    CongruenceCase("q-binom-p-1",
                   "[p-1, k] == (-1)^k q^{-C(k+1,2)} for 1 <= k <= p-1", b_binom_p_1,
                   params_for=_k_all, param_names=("k",)),
    CongruenceCase("q-central-vanish",
                   "[2k, k] == 0 for (p-1)/2 < k < p", b_central_vanish,
                   params_for=_k_upper, param_names=("k",)),
    CongruenceCase("q-multi",
                   "sum_{1<=k1<=...<=km<p} q^{C(km+1,2)}/([k1]...[km] N_km) == "
                   "(-1)^m sum_{k<p} q^{(m-1)k}((-1)^k - 1)/(2[k]^m)", b_multi,
                   params_for=lambda p: [{"m": m} for m in DEFAULT_M], param_names=("m",)),
    CongruenceCase("q-sun-harmonic",
                   "sum_{k<p} H_k(q) q^{C(k+1,2)}/([k] N_k) == (p^2-1)(1-q)^2/24",
                   b_sun_harmonic, min_prime=5),
    CongruenceCase("q-alt-square-zero",
                   "sum_{k<p} (-1)^k q^k/[k]^2 == 0", b_alt_square_zero),
    CongruenceCase("q-shi-pan",
                   "sum_{k<p} q^k/[k]^2 == -(p^2-1)(1-q)^2/12", b_shi_pan, min_prime=5),
    CongruenceCase("q-derivative-cor",
                   "sum_{k<p} k q^k/(1+q^k) == p(p-1)/2 + p sum_{k<p} N_{k-1} q^k/(1-q^k)",
                   b_derivative_cor, notes=_ERRATUM_NOTE),
    CongruenceCase("q-second-p",
                   "N_{p-1} - 1 == -(1-q^p)((p-1)/2 + sum_{k<p} N_{k-1} q^k/(1-q^k))  (mod [p]^2)",
                   b_second_p, modulus_power=2, notes=_ERRATUM_NOTE),
    CongruenceCase("q-third-p",
                   "N_{p-1} sum_{k<p} k q^{k-1}/(1+q^k) == "
                   "p q^{p-1}((p-1)/2 + sum_{k<p} N_{k-1} q^k/(1-q^k))",
                   b_third_p,
                   notes="no modulus is displayed for this one; checked modulo [p]. " + _ERRATUM_NOTE),
    CongruenceCase("q-quotient-cor",
                   "F/(1-q) == -(1/p) sum_{k<p} k q^k/(1+q^k)", b_quotient_cor),
]

# The A-bracket variants, kept outside the catalog: they are false
# (the right side is off by a factor 1-q) and serve as regression witnesses.
ERRATA = [
    CongruenceCase("q-derivative-cor-with-A",
                   "sum_{k<p} k q^k/(1+q^k) == pA + p sum_{k<p} N_{k-1} q^k/(1-q^k)",
                   b_derivative_cor_with_a),
    CongruenceCase("q-second-p-with-A",
                   "N_{p-1} - 1 == -(1-q^p)(A + sum_{k<p} N_{k-1} q^k/[k])  (mod [p]^2)",
                   b_second_p_with_a, modulus_power=2),
    CongruenceCase("q-third-p-with-A",
                   "N_{p-1} sum_{k<p} k q^{k-1}/(1+q^k) == p q^{p-1}(A + sum_{k<p} N_{k-1} q^k/[k])",
                   b_third_p_with_a),
]

REGISTRY = {c.id: c for c in CASES + ERRATA}


def case_ids(include_errata=False):
    """Case ids in catalog order (errata last, when requested)."""
    return [c.id for c in (CASES + ERRATA if include_errata else CASES)]


def get_case(id):
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownCase(id) from None


def verify_case(id, p, params=None, perturb=False, exploratory=False):
    """Build both sides for one (case, prime, params) and compare them.

    ``perturb`` adds 1 to the right side, which must turn a pass into a fail.
    Below the case's prime bound the report is skipped, unless
    ``exploratory`` is set, in which case the probe runs and is tagged.
    """
    case = get_case(id)
    params = dict(params or {})
    if case.param_names and not all(k in params for k in case.param_names):
        raise InvalidParams(f"{id} needs parameters {case.param_names}")
    if not is_prime(p) or p < 3:
        return Report(id, p, params, ERROR, f"{p} is not an odd prime")
    if not case.admissible(p):
        if not exploratory:
            return Report(id, p, params, SKIPPED)
        params["exploratory"] = True
    with stopwatch() as ms:
        try:
            ctx = ring_context(p, case.modulus_power)
            lhs, rhs = case.build(ctx, params)
            if perturb:
                rhs = rhs + 1
            diff = lhs - rhs
            failure = None
        except Exception as exc:  # builder errors are reported, not raised
            failure = f"{type(exc).__name__}: {exc}"
    if failure is not None:
        return Report(id, p, params, ERROR, failure, ms[0])
    if diff.is_zero():
        return Report(id, p, params, PASS, None, ms[0])
    return Report(id, p, params, FAIL, diff, ms[0])


def _tasks_for_prime(p, ids, m_values, perturb, exploratory):
    reports = []
    for id in ids:
        case = get_case(id)
        if not case.admissible(p):
            reports.append(Report(id, p, {}, SKIPPED))
            if not exploratory:
                continue
        if case.id == "q-multi":
            grid = [{"m": m} for m in m_values]
        else:
            grid = case.params_for(p)
        for params in grid:
            if case.admissible(p) or exploratory:
                reports.append(verify_case(id, p, params, perturb=id in perturb,
                                           exploratory=exploratory))
    return reports


def verify_all(primes, ids=None, m_values=DEFAULT_M, perturb=(), exploratory=False, jobs=1):
    """Reports for every case x prime x parameter set, sorted deterministically."""
    ids = list(ids) if ids is not None else case_ids()
    for id in ids:
        get_case(id)
    primes = [p for p in primes if is_prime(p) and p >= 3]
    perturb = frozenset(perturb)
    if jobs and jobs > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_tasks_for_prime, primes, *zip(*[(ids, tuple(m_values), perturb,
                                                                 exploratory)] * len(primes)))
            reports = [r for chunk in chunks for r in chunk]
    else:
        reports = [r for p in primes for r in _tasks_for_prime(p, ids, m_values, perturb, exploratory)]
    return sorted(reports, key=Report.sort_key)


__all__ = [
    "CongruenceCase", "RingContext", "CASES", "REGISTRY", "case_ids", "get_case",
    "verify_case", "verify_all", "chain_sum_residue", "ring_context",
]
