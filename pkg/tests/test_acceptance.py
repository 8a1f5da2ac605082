"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` (the lines go to the
terminal even when output is captured).
"""

import random
import time
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfermat import classical, congruences, identities
from qfermat.cli import main
from qfermat.qkit import q_binomial, q_delannoy, q_fermat_quotient
from qfermat.quotient import qr_for_prime, reduce
from qfermat.report import exit_status
from qfermat.ring import ONE, Q, LaurentPoly

from conftest import laurent


@pytest.fixture
def announce(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            tag = "PASS" if ok else "FAIL"
            print(f"\n[acceptance {number}] {tag}  {title}" + (f"  ({detail})" if detail else ""))
        assert ok, f"criterion {number} failed: {detail}"
    return emit


def _bad(reports):
    return [r for r in reports if r.status not in ("pass", "skipped")]


def test_1_q_catalog_sweep(announce):
    t0 = time.perf_counter()
    primes = classical.primes_in(3, 97)
    ids = [i for i in congruences.case_ids() if i != "q-second-p"]
    reports = congruences.verify_all(primes, ids=ids, m_values=(1, 2, 3, 4))
    reports += congruences.verify_all(classical.primes_in(3, 31), ids=["q-second-p"])
    elapsed = time.perf_counter() - t0
    bad = _bad(reports)
    covered = {r.case for r in reports if r.status == "pass"}
    ok = not bad and covered == set(congruences.case_ids()) and elapsed < 300
    announce(1, "q-catalog sweep p <= 97", ok,
             f"{len(reports)} reports, {len(bad)} bad, {elapsed:.1f}s")


def test_2_identity_sweep(announce):
    t0 = time.perf_counter()
    V = identities
    outcomes = []
    outcomes += [V.verify_lagrange(n, r) for n in range(1, 9) for r in range(n + 1)]
    outcomes += [V.verify_van_hamme(n) for n in range(1, 11)]
    outcomes += [V.verify_dilcher(m, n) for m in range(1, 5) for n in range(1, 9)]
    outcomes += [V.verify_x_dilcher(m, n) for m in range(1, 5) for n in range(1, 9)]
    outcomes += [V.verify_q_kohnen(n) for n in range(1, 11)]
    outcomes += [V.verify_kohnen_binomial(n) for n in range(1, 13)]
    outcomes += [V.verify_prefix_lemma(r, k2) for k2 in range(1, 9) for r in range(1, k2 + 1)]
    outcomes += [V.verify_chain_coeff(m, n, r) for m in range(1, 4) for n in range(1, 7)
                 for r in range(1, n + 1)]
    elapsed = time.perf_counter() - t0
    bad = [r for r in outcomes if r.status != "pass"]
    announce(2, "identity sweep", not bad and elapsed < 120,
             f"{len(outcomes)} identities, {len(bad)} bad, {elapsed:.1f}s")


def test_3_classical_sweep(announce):
    t0 = time.perf_counter()
    reports = classical.verify_classical_all(classical.primes_in(3, 10 ** 4))
    elapsed = time.perf_counter() - t0
    bad = _bad(reports)
    covered = {r.case for r in reports if r.status == "pass"}
    ok = not bad and covered == set(classical.classical_ids()) and elapsed < 60
    announce(3, "classical sweep p <= 10^4", ok,
             f"{len(reports)} reports, {len(bad)} bad, {elapsed:.1f}s")


def test_4_oracle_equivalence(announce):
    mismatches = []
    for p in (5, 7):
        ring = qr_for_prime(p)
        for m in (1, 2, 3):
            if congruences.chain_sum_residue(ring, p, m) != congruences.chain_sum_residue(
                    ring, p, m, "naive"):
                mismatches.append(("q", p, m))
    for p in classical.primes_in(3, 13):
        for m in (1, 2, 3):
            if classical.nested_sum_mod(m, p) != classical.nested_sum_mod(m, p, method="naive"):
                mismatches.append(("classical", p, m))
            for x in range(-3, 4):
                if (classical.nested_sum_mod(m, p, "x", x)
                        != classical.nested_sum_mod(m, p, "x", x, method="naive")):
                    mismatches.append(("classical-x", p, m, x))
    announce(4, "chain-sum DP equals enumeration", not mismatches, f"mismatches={mismatches}")


def test_5_spot_values(announce):
    checks = {
        "q_fermat_quotient(3) = q": q_fermat_quotient(3) == Q,
        "fermat_quotient2 = 1,3,2": [classical.fermat_quotient2(p).value for p in (3, 5, 7)]
        == [1, 3, 2],
        "D_n(1) = 1,3,13,63,321": [q_delannoy(n).eval(1) for n in range(5)]
        == [sum(comb(n + k, 2 * k) * comb(2 * k, k) for k in range(n + 1)) for n in range(5)]
        == [1, 3, 13, 63, 321],
        "inv(1+q) = -q mod [3]": reduce(qr_for_prime(3), ONE + Q).inv()
        == reduce(qr_for_prime(3), -Q),
    }
    failed = [k for k, v in checks.items() if not v]
    announce(5, "spot values", not failed, f"failed={failed}")


def test_6_non_vacuity(announce):
    rng = random.Random(2024)
    picks = rng.sample(congruences.case_ids(), 3)
    problems = []
    for id in picks:
        p = max(5, congruences.get_case(id).min_prime)
        params = congruences.get_case(id).params_for(p)[0]
        if id == "q-multi":
            params = {"m": 2}
        r = congruences.verify_case(id, p, params, perturb=True)
        if r.status != "fail" or r.witness is None or r.witness.is_zero():
            problems.append(id)
        if exit_status([r]) != 1:
            problems.append(id + ":exit")
    cpick = rng.choice(classical.classical_ids())
    creports = classical.verify_classical_all([11], ids=[cpick], perturb=[cpick])
    if not all(r.status == "fail" and r.witness for r in creports):
        problems.append(cpick)
    status = main(["verify", "--case", ",".join(picks), "--primes", "5..7",
                   "--perturb", ",".join(picks), "--output", "/dev/null"])
    if status != 1:
        problems.append(f"cli exit {status}")
    announce(6, "perturbed right sides fail", not problems,
             f"cases={picks + [cpick]} problems={problems}")


def test_7_property_suites(announce):
    failures = []

    @settings(max_examples=100, deadline=None)
    @given(laurent(), laurent(), laurent())
    def ring_axioms(a, b, c):
        assert (a + b) + c == a + (b + c) and a + b == b + a
        assert (a * b) * c == a * (b * c) and a * b == b * a
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from([3, 5, 7, 11]), st.sampled_from([1, 2]), laurent(), laurent())
    def reduce_homomorphism(p, power, a, b):
        ring = qr_for_prime(p, power)
        assert reduce(ring, a * b) == reduce(ring, a) * reduce(ring, b)
        assert reduce(ring, a + b) == reduce(ring, a) + reduce(ring, b)

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from([3, 5, 7, 11]), laurent(nonzero=True))
    def inverse_law(p, a):
        x = reduce(qr_for_prime(p), a)
        if not x.is_zero():
            assert x * x.inv() == qr_for_prime(p).one()

    def symmetry():
        for n in range(21):
            for k in range(n + 1):
                assert q_binomial(n, k) == q_binomial(n, n - k)

    def top_row_congruence():
        for p in classical.primes_in(3, 31):
            ring = qr_for_prime(p)
            for k in range(1, p):
                target = LaurentPoly.monomial(-k * (k + 1) // 2, (-1) ** k)
                assert reduce(ring, q_binomial(p - 1, k)) == reduce(ring, target)

    def x_specializations():
        for m in range(1, 4):
            for n in range(1, 7):
                lhs, rhs = identities.x_dilcher_sides(m, n)
                assert lhs.eval_x(1).is_zero() and rhs.eval_x(1).is_zero()
                dl, dr = identities.dilcher_sides(m, n)
                assert lhs.eval_x(0) == dl.coeff(0) and rhs.eval_x(0) == dr.coeff(0)

    for check in (ring_axioms, reduce_homomorphism, inverse_law, symmetry,
                  top_row_congruence, x_specializations):
        try:
            check()
        except Exception as exc:  # collect every failing suite, not just the first
            failures.append(f"{check.__name__}: {type(exc).__name__}")
    announce(7, "property suites", not failures, f"failures={failures}")
