from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qfermat.ring import LaurentPoly

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

coefficients = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))


@st.composite
def laurent(draw, lo=-8, hi=8, max_terms=6, nonzero=False):
    terms = draw(st.dictionaries(st.integers(lo, hi), coefficients, max_size=max_terms,
                                 min_size=1 if nonzero else 0))
    a = LaurentPoly(terms)
    if nonzero and a.is_zero():
        a = LaurentPoly.monomial(draw(st.integers(lo, hi)), draw(st.integers(1, 9)))
    return a
