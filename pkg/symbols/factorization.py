"""Inner-outer factorization of analytic polynomials and finite Blaschke products."""
import logging
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from config import DEFAULT_CONFIG
from errors import SymbolDomainError
from symbols.laurent import LaurentPoly, is_analytic
from symbols.rational import RationalSymbol
from symbols.roots import poly_roots, split_by_circle

LOGGER = logging.getLogger(__name__)

UNIMODULAR_TOL = 1e-12


def _from_roots(roots, scale=1.0):
    if len(roots) == 0:
        return LaurentPoly.constant(scale)
    return LaurentPoly(0, P.polyfromroots(roots) * scale)


def _reflected_factors(roots):
    """prod (1 - conj(r) z) over roots."""
    result = np.array([1.0 + 0j])
    for r in roots:
        result = P.polymul(result, [1.0, -np.conj(r)])
    return LaurentPoly(0, result)


@dataclass(frozen=True)
class InnerOuterFactorization:
    inner: RationalSymbol
    outer: RationalSymbol
    unimodular_constant: complex
    monomial_order: int = 0
    inner_zeros: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    outer_zeros: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))

    @property
    def outer_poly(self):
        return self.outer.as_laurent()

    @property
    def inner_is_constant(self):
        return self.monomial_order == 0 and len(self.inner_zeros) == 0

    def inner_at_zero(self):
        return complex(self.inner(0.0))

    def inner_deviation(self, grid_points=None):
        return self.inner.modulus_deviation(grid_points)

    def product_residual(self, p, grid_points=None):
        grid_points = grid_points or DEFAULT_CONFIG["grid_points"]
        product = (self.inner * self.outer).on_circle(grid_points)
        return float(np.max(np.abs(product - p.on_circle(grid_points))))

    def to_json(self):
        return {
            "inner": self.inner.to_json(),
            "outer": self.outer.to_json(),
            "unimodular_constant": [self.unimodular_constant.real, self.unimodular_constant.imag],
            "monomial_order": self.monomial_order,
            "inner_zeros": [[r.real, r.imag] for r in self.inner_zeros],
        }


def inner_outer_factor(p, boundary=None):
    """Split an analytic polynomial as inner x outer with outer(0) > 0.

    Zeros within ``boundary`` of the circle count as circle zeros and stay in
    the outer factor.
    """
    if p.is_zero:
        raise SymbolDomainError("the zero polynomial has no inner-outer factorization")
    if not is_analytic(p):
        raise SymbolDomainError(f"inner_outer_factor needs an analytic polynomial, band is {p.band}")
    boundary = DEFAULT_CONFIG["rational"]["boundary"] if boundary is None else boundary
    root_set = poly_roots(p)
    lead = complex(p.values[-1])
    inside, on, outside = split_by_circle(root_set.roots, tol=boundary)
    outer_roots = np.concatenate([on, outside])

    raw_outer = _reflected_factors(inside) * _from_roots(outer_roots, lead)
    at_zero = complex(raw_outer(0.0))
    constant = at_zero / abs(at_zero)
    outer = raw_outer * (1 / constant)

    numerator = _from_roots(inside, constant).shift(root_set.monomial_order)
    inner = RationalSymbol(numerator, _reflected_factors(inside))
    LOGGER.debug("inner_outer_factor: %d inner zeros, monomial order %d, %d outer zeros",
                 len(inside), root_set.monomial_order, len(outer_roots))
    return InnerOuterFactorization(
        inner=inner,
        outer=RationalSymbol.from_laurent(outer),
        unimodular_constant=constant,
        monomial_order=root_set.monomial_order,
        inner_zeros=inside,
        outer_zeros=outer_roots,
    )


def blaschke(zeros, constant=1.0, boundary=None):
    """constant * prod_j (|z_j|/z_j)(z_j - z)/(1 - conj(z_j) z), with the factor z at z_j = 0."""
    boundary = DEFAULT_CONFIG["rational"]["boundary"] if boundary is None else boundary
    constant = complex(constant)
    if abs(abs(constant) - 1.0) > UNIMODULAR_TOL:
        raise SymbolDomainError(f"Blaschke constant {constant} is not unimodular")
    zeros = np.asarray(list(zeros), dtype=complex)
    if zeros.size and np.max(np.abs(zeros)) >= 1.0 - boundary:
        raise SymbolDomainError(
            f"Blaschke zero of modulus {np.max(np.abs(zeros)):.6f} is not inside the disk"
        )
    origin = zeros[zeros == 0]
    nonzero = zeros[zeros != 0]
    numerator = np.array([constant])
    for z0 in nonzero:
        numerator = P.polymul(numerator, np.array([z0, -1.0]) * (abs(z0) / z0))
    return RationalSymbol(LaurentPoly(len(origin), numerator), _reflected_factors(nonzero))
