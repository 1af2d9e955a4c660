from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from capelli.coeff import UnivPoly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=10**6)
small_rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


@st.composite
def polys(draw, max_degree: int = 8, coeffs=rationals):
    terms = draw(st.dictionaries(st.integers(0, max_degree), coeffs, max_size=max_degree + 1))
    return UnivPoly(terms)
