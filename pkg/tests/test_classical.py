import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from math import gcd

from qfermat import classical as K
from qfermat.errors import NonInvertible, UnknownCase


def test_mod_inv():
    assert K.mod_inv(2, 5).value == 3
    assert K.mod_inv(1, 97).value == 1
    assert K.mod_inv(4, 25).value == 19
    with pytest.raises(NonInvertible):
        K.mod_inv(5, 25)


@given(st.integers(2, 10 ** 6), st.lists(st.integers(1, 10 ** 9), min_size=1, max_size=30))
def test_batch_inverse(M, values):
    values = [v for v in values if gcd(v, M) == 1] or [1]
    for v, w in zip(values, K.batch_inverse(values, M)):
        assert v * w % M == 1 % M


def test_modp_type():
    x = K.ModP(-3, 7)
    assert x.value == 4 and 0 <= (x * 5).value < 7
    assert (x - 4).value == 0 and (-x).value == 3


def test_fermat_quotient2():
    assert [K.fermat_quotient2(p).value for p in (3, 5, 7)] == [1, 3, 2]


def test_delannoy_mod():
    assert [d.value for d in K.delannoy_mod(4, 1009)] == [1, 3, 13, 63, 321]
    assert K.delannoy_mod(0, 7)[0].value == 1
    assert K.delannoy_mod(4, 5)[4].value == 1
    for p in (3, 5, 7, 11, 13, 101, 211):
        exact = [sum(comb(n + k, 2 * k) * comb(2 * k, k) for k in range(n + 1)) % p
                 for n in range(p)]
        assert [d.value for d in K.delannoy_mod(p - 1, p)] == exact
        assert K.delannoy_mod_recurrence(p - 1, p) == exact


def test_power_table():
    for M in (7, 101, 10 ** 8 + 7):
        assert [int(v) for v in K.power_table(3, 20, M)] == [pow(3, e, M) for e in range(1, 21)]
        assert [int(v) for v in K.mod_pow_array(3, range(1, 21), M)] == [
            pow(3, e, M) for e in range(1, 21)]


def test_nested_sum_examples():
    assert K.nested_sum_mod(1, 5).value == 3
    for p in (5, 7, 11, 13):
        harmonic = Fraction(0)
        total = Fraction(0)
        for k in range(1, p):
            harmonic += Fraction(1, k)
            total += harmonic / (k * 2 ** k)
        assert K.nested_sum_mod(2, p).value == total.numerator * pow(total.denominator, -1, p) % p


def test_nested_dp_matches_enumeration():
    for p in (5, 7, 11, 13):
        for m in (1, 2, 3):
            assert K.nested_sum_mod(m, p) == K.nested_sum_mod(m, p, method="naive")
            for x in range(-3, 4):
                assert (K.nested_sum_mod(m, p, "x", x)
                        == K.nested_sum_mod(m, p, "x", x, method="naive"))


def test_nested_m1_direct():
    rng = random.Random(11)
    for p in K.primes_in(3, 97):
        x = rng.randint(-50, 50)
        direct = sum(Fraction((1 - x) ** k, k) for k in range(1, p))
        want = direct.numerator * pow(direct.denominator, -1, p) % p
        assert K.nested_sum_mod(1, p, "x", x).value == want


def test_verify_examples():
    for id in ("glaisher", "kohnen", "sun-delannoy"):
        assert K.verify_classical(id, 5).status == "pass"
    with pytest.raises(UnknownCase):
        K.verify_classical("nope", 5)
    assert K.verify_classical("sun-harmonic", 3).status == "skipped"


def test_all_cases_up_to_500():
    reports = K.verify_classical_all(K.primes_in(3, 500))
    assert {r.case for r in reports} == set(K.classical_ids())
    bad = [r for r in reports if r.status not in ("pass", "skipped")]
    assert not bad


def test_combined_is_difference():
    for p in K.primes_in(5, 200):
        for m in (1, 2, 3, 4):
            ctx = K.prime_context(p)
            l1, r1 = K.b_cor_x_neg1(ctx, {"m": m})
            l2, r2 = K.b_cor_x_2(ctx, {"m": m})
            l3, r3 = K.b_cor_combined(ctx, {"m": m})
            assert l3 == l1 - l2 and r3 == r1 - r2


def test_known_forms_agree():
    for p in K.primes_in(3, 2000):
        ctx = K.prime_context(p)
        assert K.b_known(ctx, {"form": 1})[1] == K.b_known(ctx, {"form": 2})[1]


def test_sun_zh_against_exact():
    for p in (3, 5, 7, 11, 13, 17):
        s = sum(Fraction(1, k * 2 ** k) for k in range(1, p))
        M = p * p
        lhs, rhs = K.b_sun_zh(K.prime_context(p), {})
        assert lhs.value == s.numerator * pow(s.denominator, -1, M) % M
        assert lhs == rhs


def test_perturbation_fails():
    reports = K.verify_classical_all([7, 11], ids=["glaisher", "xxyy"], perturb=["xxyy"])
    assert all(r.status == ("fail" if r.case == "xxyy" else "pass") for r in reports)


def test_grid_filters():
    reports = K.verify_classical_all([11], ids=["xxyy"], m_values=[2], x_values=[-1, 3])
    assert sorted((r.params["x"], r.params["m"]) for r in reports) == [(-1, 2), (3, 2)]


def test_large_modulus_path():
    # moduli above the int64-safe bound switch to object arrays
    M = 4_000_000_007
    assert [int(v) for v in K.power_table(5, 10, M)] == [pow(5, e, M) for e in range(1, 11)]
