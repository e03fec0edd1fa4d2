"""Product, commutator and projection-commutation identities, evaluated column by column."""
import logging
from dataclasses import dataclass

import numpy as np

from config import DEFAULT_CONFIG
from operators.paired import PairedSpec, apply_S, apply_Sigma, hankel_apply, hankel_tilde_apply
from operators.projections import basis_vector, mul_apply, riesz_minus, riesz_plus
from symbols.laurent import LaurentPoly
from symbols.rational import as_rational, conversion_band, rational_to_coeffs

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColumnResidualReport:
    """Column norms of an operator difference R and of its closed form T on e_k, k = -N..N."""

    band: int
    residual_columns: tuple
    formula_columns: tuple
    discrepancy: float

    @property
    def residual_norm(self):
        return max(self.residual_columns, default=0.0)

    @property
    def formula_norm(self):
        return max(self.formula_columns, default=0.0)

    def column(self, k):
        return self.residual_columns[k + self.band]

    def witnesses(self, tol):
        return [k for k in range(-self.band, self.band + 1) if self.column(k) > tol]

    def to_json(self):
        return {
            "N": self.band,
            "residual_norm": self.residual_norm,
            "formula_norm": self.formula_norm,
            "discrepancy": self.discrepancy,
            "witness_f_1": self.column(0),
            "witness_f_zbar": self.column(-1),
        }


def _column_report(band, residual, formula):
    residual_columns, formula_columns, discrepancy = [], [], 0.0
    for k in range(-band, band + 1):
        e_k = basis_vector(k)
        r, t = residual(e_k), formula(e_k)
        residual_columns.append(r.norm())
        formula_columns.append(t.norm())
        discrepancy = max(discrepancy, (r - t).norm())
    return ColumnResidualReport(band, tuple(residual_columns), tuple(formula_columns), discrepancy)


def composition_residual(spec, other, band):
    """S_{a,b} S_{a~,b~} - S_{a a~, b b~} against (a - b)(P+ b~ P- - P- a~ P+)."""
    product = PairedSpec(spec.a * other.a, spec.b * other.b)
    difference = spec.a - spec.b

    def residual(f):
        return apply_S(spec, apply_S(other, f)) - apply_S(product, f)

    def formula(f):
        inner = riesz_plus(mul_apply(other.b, riesz_minus(f))) - riesz_minus(mul_apply(other.a, riesz_plus(f)))
        return difference * inner

    report = _column_report(band, residual, formula)
    LOGGER.debug("composition_residual %s . %s: %.3e (discrepancy %.3e)",
                 spec, other, report.residual_norm, report.discrepancy)
    return report


def sigma_composition_residual(spec, other, band):
    """Sigma_{a,b} Sigma_{a~,b~} - Sigma_{a a~, b b~} against (P- b P+ - P+ a P-)(a~ - b~)."""
    product = PairedSpec(spec.a * other.a, spec.b * other.b)
    difference = other.a - other.b

    def residual(f):
        return apply_Sigma(spec, apply_Sigma(other, f)) - apply_Sigma(product, f)

    def formula(f):
        g = difference * f
        return riesz_minus(mul_apply(spec.b, riesz_plus(g))) - riesz_plus(mul_apply(spec.a, riesz_minus(g)))

    return _column_report(band, residual, formula)


@dataclass(frozen=True)
class CommutatorReport:
    band: int
    commutator_norm: float
    identity_gap: float
    discrepancy: float

    @property
    def commutes(self):
        return self.commutator_norm <= DEFAULT_CONFIG["tolerances"]["exact"]

    def to_json(self):
        return {
            "N": self.band,
            "commutator_norm": self.commutator_norm,
            "identity_gap": self.identity_gap,
            "discrepancy": self.discrepancy,
        }


def commutator_residual(spec, other, band):
    """[S_{a,b}, S_{a~,b~}] on e_k, and the two sides of the commutation identity.

    The commutator equals (a~ - b~)(P- a P+ - P+ b P-) - (a - b)(P- a~ P+ - P+ b~ P-),
    so it vanishes exactly when the two sides agree; ``discrepancy`` checks that equality.
    """

    def lhs(f):
        return (spec.a - spec.b) * (riesz_minus(mul_apply(other.a, riesz_plus(f)))
                                    - riesz_plus(mul_apply(other.b, riesz_minus(f))))

    def rhs(f):
        return (other.a - other.b) * (riesz_minus(mul_apply(spec.a, riesz_plus(f)))
                                      - riesz_plus(mul_apply(spec.b, riesz_minus(f))))

    commutator_norm = identity_gap = discrepancy = 0.0
    for k in range(-band, band + 1):
        e_k = basis_vector(k)
        c = apply_S(spec, apply_S(other, e_k)) - apply_S(other, apply_S(spec, e_k))
        left, right = lhs(e_k), rhs(e_k)
        commutator_norm = max(commutator_norm, c.norm())
        identity_gap = max(identity_gap, (left - right).norm())
        discrepancy = max(discrepancy, (c - (right - left)).norm())
    return CommutatorReport(band, commutator_norm, identity_gap, discrepancy)


@dataclass(frozen=True)
class ProjectionCommutation:
    """The four equivalent conditions for eta and f, each with its measured residual."""

    commutes: bool
    hankel_kernel: bool
    plus_commutes: bool
    minus_commutes: bool
    residuals: tuple

    @property
    def consistent(self):
        return len({self.commutes, self.hankel_kernel, self.plus_commutes, self.minus_commutes}) == 1

    @property
    def holds(self):
        return self.consistent and self.commutes

    def to_json(self):
        return {
            "commutes": self.commutes,
            "hankel_kernel": self.hankel_kernel,
            "plus_commutes": self.plus_commutes,
            "minus_commutes": self.minus_commutes,
            "residuals": list(self.residuals),
        }


DEFAULT_WITNESS = PairedSpec(LaurentPoly.one(), LaurentPoly.monomial(1))


def projection_commutation(eta, f, spec=DEFAULT_WITNESS, tol=None):
    """Evaluate S(eta f) = eta S f, f in ker H_eta + ker H~_eta, and P+-(eta f) = eta P+-f."""
    tol = DEFAULT_CONFIG["tolerances"]["exact"] if tol is None else tol
    scale = max(1.0, eta.norm() * f.norm())
    f_plus, f_minus = riesz_plus(f), riesz_minus(f)
    ef = eta * f
    residuals = (
        (apply_S(spec, ef) - eta * apply_S(spec, f)).norm(),
        max(hankel_apply(eta, f_plus).norm(), hankel_tilde_apply(eta, f_minus).norm()),
        (riesz_plus(ef) - eta * f_plus).norm(),
        (riesz_minus(ef) - eta * f_minus).norm(),
    )
    flags = [r <= tol * scale for r in residuals]
    return ProjectionCommutation(*flags, residuals=residuals)


@dataclass(frozen=True)
class ProjectionIdentityReport:
    plus_residual: float
    minus_residual: float
    band: int
    conversion_band: int

    @property
    def residual(self):
        return max(self.plus_residual, self.minus_residual)

    def to_json(self):
        return {
            "plus_residual": self.plus_residual,
            "minus_residual": self.minus_residual,
            "N": self.band,
            "conversion_band": self.conversion_band,
        }


def projection_identity_residual(eta, f, band):
    """|| P+-(eta f) - eta P+-f || on [-N, N] for rational eta and f.

    f is expanded at its conversion band before projecting, so the truncated
    tails of P+f and P-f stay below the conversion chop.
    """
    eta, f = as_rational(eta), as_rational(f)
    f_band = conversion_band(f, band)
    f_coeffs = rational_to_coeffs(f, f_band)
    f_plus, f_minus = riesz_plus(f_coeffs), riesz_minus(f_coeffs)
    product = rational_to_coeffs(eta * f, band)
    plus_image = rational_to_coeffs(eta * f_plus, band)
    minus_image = rational_to_coeffs(eta * f_minus, band)
    plus_residual = (riesz_plus(product) - plus_image).norm()
    minus_residual = (riesz_minus(product) - minus_image).norm()
    LOGGER.debug("projection_identity_residual: band %d, f converted at %d, residuals %.3e / %.3e",
                 band, f_band, plus_residual, minus_residual)
    return ProjectionIdentityReport(plus_residual, minus_residual, band, f_band)
