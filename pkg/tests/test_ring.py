from fractions import Fraction

import pytest
from conftest import laurent
from hypothesis import given
from hypothesis import strategies as st

from qfermat.errors import NotDivisible, ZeroAtNegativeExponent
from qfermat.ring import (ONE, Q, ZERO, LaurentPoly, lp_add, lp_derivative, lp_eval,
                          lp_exact_div, lp_mul, lp_shift)


def P(*coeffs, lo=0):
    return LaurentPoly.from_coeffs(list(coeffs), lo)


def test_add_examples():
    assert lp_add(P(1, 1), P(0, 1, 1)) == P(1, 2, 1)
    a = P(3, 0, -2, lo=-1)
    assert lp_add(a, ZERO) == a
    assert lp_add(LaurentPoly({-1: 1}), LaurentPoly({-1: -1})) == ZERO
    assert lp_add(LaurentPoly({-1: 1}), LaurentPoly({-1: -1})).terms == {}


def test_mul_examples():
    assert lp_mul(P(1, 1), P(1, 0, 1)) == P(1, 1, 1, 1)
    assert lp_mul(LaurentPoly({-1: 1}), Q) == ONE
    assert lp_mul(P(1, -1), P(1, 1, 1)) == P(1, 0, 0, -1)


def test_exact_div_examples():
    assert lp_exact_div(P(0, 1, 1, 1), P(1, 1, 1)) == Q
    a = P(2, -1, 0, 5, lo=-3)
    assert lp_exact_div(a, a) == ONE
    with pytest.raises(NotDivisible) as info:
        lp_exact_div(P(1, 1), P(1, 1, 1))
    assert not info.value.remainder.is_zero()


def test_eval_examples():
    assert lp_eval(P(1, 1, 1), 1) == 3
    assert lp_eval(LaurentPoly({-2: 1}), 2) == Fraction(1, 4)
    d1 = LaurentPoly({0: Fraction(3, 2), -1: 1, -2: Fraction(1, 2)})
    assert lp_eval(d1, 1) == 3
    with pytest.raises(ZeroAtNegativeExponent):
        lp_eval(d1, 0)
    assert lp_eval(P(5, 1), 0) == 5


def test_derivative_examples():
    assert lp_derivative(P(1, 1, 1)) == P(1, 2)
    assert lp_derivative(LaurentPoly(7)) == ZERO
    assert lp_derivative(LaurentPoly({-1: 1})) == LaurentPoly({-2: -1})


def test_shift_examples():
    assert lp_shift(P(1, 1), 2) == P(0, 0, 1, 1)
    a = P(1, 2, 3, lo=-1)
    assert lp_shift(a, 0) == a
    assert lp_shift(Q, -3) == LaurentPoly({-2: 1})


def test_canonical_form():
    a = LaurentPoly({0: Fraction(2, 4), 3: 0, -1: Fraction(-6, 3)})
    assert a.terms == {-1: Fraction(-2), 0: Fraction(1, 2)}
    assert a == LaurentPoly({-1: -2, 0: Fraction(1, 2)})
    assert hash(a) == hash(LaurentPoly({-1: -2, 0: Fraction(1, 2)}))
    assert ZERO.terms == {}
    assert str(a) == "-2*q^-1 + 1/2"


def test_big_products_match_schoolbook():
    # long operands take the packed-integer path; compare with a plain double loop
    a = P(*[(-1) ** i * (i * 7919 % 101) for i in range(60)], lo=-20)
    b = P(*[(i * i % 13) - 6 for i in range(45)], lo=3)
    expect = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            expect[ea + eb] = expect.get(ea + eb, 0) + ca * cb
    assert (a * b) == LaurentPoly(expect)
    huge = P(*[10 ** 30 + i for i in range(40)])
    assert (huge * huge).coeff(0) == 10 ** 60


@given(laurent(), laurent(), laurent())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(laurent(), laurent(nonzero=True))
def test_exact_div_inverts_mul(a, b):
    assert lp_exact_div(lp_mul(a, b), b) == a


@given(laurent(), laurent(), st.sampled_from([Fraction(1), Fraction(2), Fraction(-1, 2)]))
def test_eval_is_homomorphism(a, b, v):
    assert lp_eval(a * b, v) == lp_eval(a, v) * lp_eval(b, v)
    assert lp_eval(a + b, v) == lp_eval(a, v) + lp_eval(b, v)


@given(laurent(), laurent())
def test_product_rule(a, b):
    d = lp_derivative
    assert d(a * b) == d(a) * b + a * d(b)


@given(laurent(), st.integers(-10, 10))
def test_shift_is_monomial_product(a, e):
    assert lp_shift(a, e) == a * LaurentPoly.monomial(e)
