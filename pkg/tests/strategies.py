"""hypothesis strategies for small Laurent polynomials."""
from hypothesis import strategies as st

from symbols.laurent import LaurentPoly

COEFFICIENT_BOUND = 5.0

reals = st.floats(min_value=-COEFFICIENT_BOUND, max_value=COEFFICIENT_BOUND,
                  allow_nan=False, allow_infinity=False, allow_subnormal=False)
complexes = st.builds(complex, reals, reals)


@st.composite
def laurent_polys(draw, lo=-3, hi=3, max_terms=4, nonzero=False):
    kmin = draw(st.integers(lo, hi))
    width = draw(st.integers(0 if not nonzero else 1, min(max_terms, hi - kmin + 1)))
    values = draw(st.lists(complexes, min_size=width, max_size=width))
    p = LaurentPoly(kmin, values)
    if nonzero and p.is_zero:
        p = LaurentPoly.monomial(kmin)
    return p


def analytic_polys(max_degree=3, nonzero=False):
    return laurent_polys(0, max_degree, max_degree + 1, nonzero)


def coanalytic_polys(max_degree=3, nonzero=False):
    return laurent_polys(-max_degree, 0, max_degree + 1, nonzero)
