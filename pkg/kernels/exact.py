"""Paired kernels of Laurent-polynomial pairs counted from root locations.

Write a = z^alpha A and b = z^beta B with A(0), B(0) nonzero. Then
S_{a,b} f = 0 exactly when f+ = H / A and f- = -z^(alpha - beta) H / B for a
polynomial H of degree below kmax(b) - kmin(a) that is divisible by every zero
of A in the closed disk and every zero of B in the closed exterior (a zero on
the circle shared by A and B is needed only once). For Sigma_{c,d} the shared
circle zeros add up instead, because psi = H / (C d) itself has to be square
integrable.
"""
import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from config import DEFAULT_CONFIG
from errors import PreconditionError
from symbols.laurent import LaurentPoly
from symbols.rational import RationalSymbol
from symbols.roots import laurent_roots, split_by_circle

LOGGER = logging.getLogger(__name__)

MATCH_TOL = 1e-6


@dataclass(frozen=True)
class RootProfile:
    """a = lead * z^kmin * prod (z - r), roots grouped by side of the circle."""

    kmin: int
    kmax: int
    lead: complex
    inside: np.ndarray
    on: np.ndarray
    outside: np.ndarray


def root_profile(a, tol=None):
    if a.is_zero:
        raise PreconditionError("the zero symbol has no root profile")
    tol = DEFAULT_CONFIG["tolerances"]["circle"] if tol is None else tol
    roots = laurent_roots(a) if a.width > 0 else np.zeros(0, dtype=complex)
    inside, on, outside = split_by_circle(roots, tol)
    return RootProfile(a.kmin, a.kmax, complex(a.values[-1]), inside, on, outside)


def _circle_clusters(first, second, tol=MATCH_TOL):
    """[(representative, count in first, count in second)] for circle roots."""
    clusters = []
    for index, roots in enumerate((first, second)):
        for r in roots:
            for entry in clusters:
                if abs(entry[0] - r) <= tol:
                    entry[1 + index] += 1
                    break
            else:
                entry = [complex(r), 0, 0]
                entry[1 + index] += 1
                clusters.append(entry)
    return clusters


def _poly(roots, scale=1.0):
    if len(roots) == 0:
        return LaurentPoly.constant(scale)
    return LaurentPoly(0, P.polyfromroots(roots) * scale)


def _paired_profiles(spec):
    if spec.a.is_zero or spec.b.is_zero:
        raise PreconditionError("kernel counts need a and b nonzero")
    return root_profile(spec.a), root_profile(spec.b)


def kernel_dimension(spec):
    """dim ker S_{a,b} for Laurent a, b (both nonzero)."""
    pa, pb = _paired_profiles(spec)
    shared = sum(max(p, q) for _, p, q in _circle_clusters(pa.on, pb.on))
    degree = len(pa.inside) + len(pb.outside) + shared
    return max(0, pb.kmax - pa.kmin - degree)


def sigma_kernel_dimension(c, d):
    """dim ker Sigma_{c,d} for Laurent c, d (both nonzero)."""
    if c.is_zero or d.is_zero:
        raise PreconditionError("kernel counts need both symbols nonzero")
    pc, pd = root_profile(c), root_profile(d)
    degree = len(pc.inside) + len(pc.on) + len(pd.outside) + len(pd.on)
    return max(0, pd.kmax - pc.kmin - degree)


def adjoint_kernel_dimension(spec):
    """dim ker S_{a,b}* = dim ker Sigma_{conj a, conj b}."""
    return sigma_kernel_dimension(spec.a.conj_reflect(), spec.b.conj_reflect())


@dataclass(frozen=True)
class KernelGenerator:
    plus: RationalSymbol
    minus: RationalSymbol

    @property
    def element(self):
        return self.plus + self.minus


def rational_kernel_generators(spec):
    """Generators (f+, f-) of ker S_{a,b}, one per power z^j H_0 of the minimal polynomial H_0."""
    pa, pb = _paired_profiles(spec)
    extra_for_a, extra_for_b = [], []
    for root, p, q in _circle_clusters(pa.on, pb.on):
        extra_for_a += [root] * (max(p, q) - p)
        extra_for_b += [root] * (max(p, q) - q)
    dimension = kernel_dimension(spec)
    # H_0 / (closed-disk part of A) and H_0 / (closed-exterior part of B)
    plus_numerator = _poly(np.concatenate([pb.outside, np.asarray(extra_for_a, dtype=complex)]))
    minus_numerator = _poly(np.concatenate([pa.inside, np.asarray(extra_for_b, dtype=complex)]))
    plus_denominator = _poly(pa.outside, pa.lead)
    minus_denominator = _poly(pb.inside, pb.lead)
    generators = []
    for j in range(dimension):
        plus = RationalSymbol(plus_numerator.shift(j), plus_denominator)
        minus = RationalSymbol(-minus_numerator.shift(pa.kmin - pb.kmin + j), minus_denominator)
        generators.append(KernelGenerator(plus, minus))
    LOGGER.debug("rational_kernel_generators %s: dimension %d", spec, dimension)
    return generators


def sigma_kernel_generators(c, d):
    """psi_j = z^(j - kmin(d)) / (lead_c lead_d C_out D_in), j < dim ker Sigma_{c,d}."""
    pc, pd = root_profile(c), root_profile(d)
    denominator = _poly(pc.outside, pc.lead) * _poly(pd.inside, pd.lead)
    return [
        RationalSymbol(LaurentPoly.monomial(j - pd.kmin), denominator)
        for j in range(sigma_kernel_dimension(c, d))
    ]


def adjoint_kernel_generators(spec):
    return sigma_kernel_generators(spec.a.conj_reflect(), spec.b.conj_reflect())
