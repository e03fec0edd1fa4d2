"""Riesz projections and multiplication on coefficient vectors.

A coefficient vector is a LaurentPoly read as an element of L^2; the
projections split it at exponent 0.
"""
import numpy as np

from symbols.laurent import LaurentPoly, lp_mul

CoeffVector = LaurentPoly


def riesz_plus(v):
    """P+: keep exponents k >= 0."""
    return v.restrict(0, None) if v.kmax >= 0 else LaurentPoly()


def riesz_minus(v):
    """P-: keep exponents k <= -1."""
    return v.restrict(None, -1) if v.kmin <= -1 else LaurentPoly()


def mul_apply(a, v):
    return lp_mul(a, v)


def conj_vector(v):
    """Coefficients of the pointwise conjugate of v on the circle."""
    return v.conj_reflect()


def inner_product(u, v):
    """<u, v> = sum_k u_k conj(v_k)."""
    if u.is_zero or v.is_zero:
        return 0j
    lo, hi = min(u.kmin, v.kmin), max(u.kmax, v.kmax)
    return complex(np.vdot(v.to_vector(lo, hi), u.to_vector(lo, hi)))


def basis_vector(k):
    return LaurentPoly.monomial(k)


def is_in_plus(v):
    return v.is_zero or v.kmin >= 0


def is_in_minus(v):
    return v.is_zero or v.kmax <= -1
