"""Roots of the polynomial part of a Laurent polynomial.

Companion-matrix eigenvalues, each polished by one Newton step.
"""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.polynomial import polynomial as P

from config import DEFAULT_CONFIG
from errors import SymbolDomainError

LOGGER = logging.getLogger(__name__)

ROOT_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    monomial_order: int
    residuals: np.ndarray

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def _residual_scale(coeffs, roots):
    return P.polyval(np.abs(roots), np.abs(coeffs))


def polynomial_roots(coeffs, tol=ROOT_RESIDUAL_TOL):
    """Roots of sum_k coeffs[k] z^k (ascending coefficients, nonzero leading term)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if len(coeffs) < 2:
        return np.zeros(0, dtype=complex), np.zeros(0)
    roots = scipy.linalg.eigvals(scipy.linalg.companion(coeffs[::-1]))
    derivative = P.polyder(coeffs)
    values = P.polyval(roots, coeffs)
    slopes = P.polyval(roots, derivative)
    step = np.divide(values, slopes, out=np.zeros_like(values), where=slopes != 0)
    polished = roots - step
    better = np.abs(P.polyval(polished, coeffs)) < np.abs(values)
    roots = np.where(better, polished, roots)
    residuals = np.abs(P.polyval(roots, coeffs)) / _residual_scale(coeffs, roots)
    if np.any(residuals > tol):
        LOGGER.warning("root residual %.3e exceeds tolerance %.1e", residuals.max(), tol)
    return roots, residuals


def poly_roots(p, tol=ROOT_RESIDUAL_TOL):
    """Roots (with multiplicity) of an analytic polynomial; z^kmin is reported separately."""
    if p.is_zero:
        raise SymbolDomainError("the zero polynomial has no finite root set")
    if p.kmin < 0:
        raise SymbolDomainError(f"poly_roots needs an analytic polynomial, band is {p.band}")
    roots, residuals = polynomial_roots(p.values, tol)
    return RootSet(roots, p.kmin, residuals)


def laurent_roots(a):
    """Nonzero roots of z^(-kmin) a(z); these are the zeros of a away from the origin."""
    if a.is_zero:
        raise SymbolDomainError("the zero symbol vanishes identically")
    roots, _ = polynomial_roots(a.values)
    return roots


def circle_distance(a):
    """Smallest | |root| - 1 | over the zeros of a; infinity if a has none."""
    roots = laurent_roots(a)
    if roots.size == 0:
        return np.inf
    return float(np.min(np.abs(np.abs(roots) - 1.0)))


def is_invertible_on_circle(a, tol=None):
    """a is invertible in L-infinity iff it has no zero on the circle."""
    tol = DEFAULT_CONFIG["tolerances"]["circle"] if tol is None else tol
    if a.is_zero:
        return False
    return circle_distance(a) > tol


def split_by_circle(roots, tol=None):
    """Partition roots into (inside, on, outside) the unit circle."""
    tol = DEFAULT_CONFIG["tolerances"]["circle"] if tol is None else tol
    moduli = np.abs(roots)
    on = np.abs(moduli - 1.0) <= tol
    inside = (moduli < 1.0) & ~on
    outside = (moduli > 1.0) & ~on
    return roots[inside], roots[on], roots[outside]
