from symbols.factorization import InnerOuterFactorization, blaschke, inner_outer_factor
from symbols.laurent import (
    AnalyticityClass,
    LaurentPoly,
    NondegeneracyReport,
    classify,
    conj_reflect,
    is_analytic,
    is_coanalytic,
    is_nondegenerate,
    lp_mul,
    sup_norm,
)
from symbols.model_space import model_space_basis
from symbols.parser import parse_symbol
from symbols.rational import RationalSymbol, as_rational, rational_fourier, rational_to_coeffs
from symbols.roots import RootSet, circle_distance, is_invertible_on_circle, laurent_roots, poly_roots
