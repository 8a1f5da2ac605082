from fractions import Fraction

import pytest

from qfermat import congruences as C
from qfermat.errors import UnknownCase
from qfermat.quotient import qr_for_prime
from qfermat.report import exit_status

SMALL = [3, 5, 7, 11, 13]


def test_case_ids():
    ids = C.case_ids()
    assert "q-delannoy" in ids and "q-second-p" in ids
    assert len(ids) == 20 and len(set(ids)) == 20
    assert not any(i.endswith("-with-A") for i in ids)
    assert len(C.case_ids(include_errata=True)) == 23
    with pytest.raises(UnknownCase):
        C.get_case("q-nope")


def test_examples():
    assert C.verify_case("q-glaisher-new", 3).status == "pass"
    assert C.verify_case("q-harmonic-andrews", 3).status == "pass"
    assert C.verify_case("q-sun-harmonic", 3).status == "skipped"
    assert C.verify_case("q-known", 9).status == "error"


def test_glaisher_new_by_hand():
    ring = qr_for_prime(3)
    ctx = C.ring_context(3)
    lhs, rhs = C.b_glaisher_new(ctx, {})
    assert lhs == rhs == ring.scalar(-1)


@pytest.mark.parametrize("p", SMALL)
def test_catalog_small_primes(p):
    reports = C.verify_all([p])
    assert reports
    assert all(r.status in ("pass", "skipped") for r in reports), [
        r for r in reports if r.status not in ("pass", "skipped")]


def test_empty_range():
    assert C.verify_all([]) == []
    assert C.verify_all([4, 8, 9]) == []


@pytest.mark.parametrize("id", ["q-known", "q-multi", "q-second-p", "q-binom-p-1"])
def test_perturbation_fails(id):
    reports = C.verify_all([5, 7], ids=[id], perturb=[id])
    assert reports and all(r.status == "fail" and r.witness is not None for r in reports)
    assert exit_status(reports) == 1


def test_chain_sum_dp_matches_naive():
    for p in (5, 7):
        ring = qr_for_prime(p)
        for m in (1, 2, 3):
            assert C.chain_sum_residue(ring, p, m) == C.chain_sum_residue(ring, p, m, "naive")


def test_chain_sum_specializations():
    for p in (5, 7, 11):
        ring = qr_for_prime(p)
        ctx = C.ring_context(p)
        assert C.chain_sum_residue(ring, p, 1) == C._kohnen_new_lhs(ctx)
        assert C.chain_sum_residue(ring, p, 2) == C._sun_harmonic_lhs(ctx)


def test_multi_params():
    reports = C.verify_all([7], ids=["q-multi"], m_values=(1, 2, 3, 4, 5))
    assert [r.params["m"] for r in reports] == [1, 2, 3, 4, 5]
    assert all(r.status == "pass" for r in reports)


def test_a_bracket_variants_fail():
    for p in SMALL:
        for case in C.ERRATA:
            r = C.verify_case(case.id, p)
            assert r.status == "fail", (case.id, p)
        # the A-bracket derivative variant misses by exactly p(p-1)/2 * q
        w = C.verify_case("q-derivative-cor-with-A", p).witness
        ring = qr_for_prime(p)
        assert w == ring.gen().scale(Fraction(p * (p - 1), 2))


def test_corrected_forms_pass_with_square_modulus():
    for p in (3, 5, 7, 11):
        assert C.verify_case("q-second-p", p).status == "pass"


def test_exploratory_probes():
    r = C.verify_case("q-sun-harmonic", 3, exploratory=True)
    assert r.params.get("exploratory") is True
    assert r.status in ("pass", "fail")
    # a failed exploratory probe never changes the exit status
    assert exit_status([r]) == 0


def test_parallel_matches_serial():
    a = C.verify_all([3, 5, 7, 11], ids=["q-known", "q-delannoy", "q-multi"])
    b = C.verify_all([3, 5, 7, 11], ids=["q-known", "q-delannoy", "q-multi"], jobs=2)
    strip = lambda rs: [(r.case, r.prime, r.params, r.status) for r in rs]
    assert strip(a) == strip(b)
