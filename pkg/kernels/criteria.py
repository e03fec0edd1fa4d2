"""Kernel comparisons: equality criterion, inclusion, invariance and the Toeplitz bridge."""
import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from config import DEFAULT_CONFIG
from errors import MembershipError, PreconditionError
from kernels.exact import kernel_dimension
from kernels.null_space import band_kernel, kernel_basis, null_space_svd
from operators.paired import PairedSpec, apply_S, apply_Sigma, hankel_apply, hankel_tilde_apply
from operators.projections import riesz_minus, riesz_plus
from operators.sections import SectionKind
from symbols.laurent import AnalyticityClass, LaurentPoly, classify
from symbols.rational import as_rational, conversion_band, rational_to_coeffs

LOGGER = logging.getLogger(__name__)

ANALYTIC_CLASSES = (AnalyticityClass.ANALYTIC, AnalyticityClass.CONSTANT)
COANALYTIC_CLASSES = (
    AnalyticityClass.COANALYTIC,
    AnalyticityClass.COANALYTIC_VANISHING,
    AnalyticityClass.CONSTANT,
)


def _is_laurent_pair(pair):
    return isinstance(pair.a, LaurentPoly) and isinstance(pair.b, LaurentPoly)


def cross_product_residual(first, second, band=None):
    """Size of a b~ - a~ b; exact for Laurent pairs, through coefficients for rational ones."""
    lhs, rhs = first.a * second.b, second.a * first.b
    if _is_laurent_pair(first) and _is_laurent_pair(second):
        scale = max(1.0, lhs.max_abs(), rhs.max_abs())
        return (lhs - rhs).max_abs() / scale
    band = band or DEFAULT_CONFIG["band"]
    difference = as_rational(lhs) - as_rational(rhs)
    return rational_to_coeffs(difference, conversion_band(difference, band)).max_abs()


def same_kernel_test(first, second, tol=None, band=None):
    """k_{a,b} = ker_{a~,b~} iff a b~ = a~ b (given k_{a,b} is nontrivial)."""
    if tol is None:
        tolerances = DEFAULT_CONFIG["tolerances"]
        exact = _is_laurent_pair(first) and _is_laurent_pair(second)
        tol = tolerances["exact"] if exact else tolerances["rational"]
    return cross_product_residual(first, second, band) <= tol


def _check_membership(spec, f, tol):
    residual = apply_S(spec, f).norm()
    if residual > tol * max(1.0, f.norm()):
        raise MembershipError(f"vector is not in the kernel of S_{spec}", residual)
    return residual


@dataclass(frozen=True)
class EtaInvarianceReport:
    invariant: bool
    hankel_condition: bool
    invariant_residual: float
    hankel_residual: float

    @property
    def equivalent(self):
        return self.invariant == self.hankel_condition

    def to_json(self):
        return {
            "invariant": self.invariant,
            "hankel_condition": self.hankel_condition,
            "equivalent": self.equivalent,
            "invariant_residual": self.invariant_residual,
            "hankel_residual": self.hankel_residual,
        }


def eta_invariance_test(spec, eta, f, tol=None):
    """For f in k_{a,b}: eta f in k_{a,b} iff f in ker H_eta + ker H~_eta."""
    tolerances = DEFAULT_CONFIG["tolerances"]
    _check_membership(spec, f, tolerances["membership"])
    tol = tolerances["exact"] if tol is None else tol
    scale = max(1.0, eta.norm() * f.norm() * max(spec.a.norm(), spec.b.norm(), 1.0))
    invariant_residual = apply_S(spec, eta * f).norm()
    hankel_residual = max(hankel_apply(eta, riesz_plus(f)).norm(),
                          hankel_tilde_apply(eta, riesz_minus(f)).norm())
    return EtaInvarianceReport(
        invariant_residual <= tol * scale,
        hankel_residual <= tol * scale,
        invariant_residual,
        hankel_residual,
    )


@dataclass(frozen=True)
class InvarianceReport:
    s_applicable: bool
    s_kernel_dimension: int
    sigma_applicable: bool
    sigma_kernel_dimension: int
    sigma_residual: float
    tolerance: float

    @property
    def s_vacuous(self):
        return self.s_applicable and self.s_kernel_dimension == 0

    @property
    def holds(self):
        s_ok = not self.s_applicable or self.s_kernel_dimension == 0
        sigma_ok = not self.sigma_applicable or self.sigma_residual <= self.tolerance
        return s_ok and sigma_ok

    def to_json(self):
        return {
            "s_applicable": self.s_applicable,
            "s_vacuous": self.s_vacuous,
            "s_kernel_dimension": self.s_kernel_dimension,
            "sigma_applicable": self.sigma_applicable,
            "sigma_kernel_dimension": self.sigma_kernel_dimension,
            "sigma_residual": self.sigma_residual,
            "holds": self.holds,
        }


def invariance_check(spec, other, band):
    """Invariance of ker S_{a,b} under S_{a~,b~} and of ker Sigma_{a,b} under Sigma_{a~,b~}.

    The S statement needs a, a~ analytic and b, b~ coanalytic, where the kernel
    is already trivial; it is reported as vacuous. The Sigma statement needs
    a, a~ coanalytic and b, b~ analytic and is checked on the band kernel.
    """
    classes = [classify(s) for s in (spec.a, other.a, spec.b, other.b)]
    s_applicable = classes[0] in ANALYTIC_CLASSES and classes[1] in ANALYTIC_CLASSES \
        and classes[2] in COANALYTIC_CLASSES and classes[3] in COANALYTIC_CLASSES
    sigma_applicable = classes[0] in COANALYTIC_CLASSES and classes[1] in COANALYTIC_CLASSES \
        and classes[2] in ANALYTIC_CLASSES and classes[3] in ANALYTIC_CLASSES
    s_dimension = kernel_dimension(spec) if s_applicable else 0
    sigma_dimension, sigma_residual = 0, 0.0
    tol = DEFAULT_CONFIG["tolerances"]["exact"]
    scale = max(1.0, spec.a.norm(), spec.b.norm()) * max(1.0, other.a.norm(), other.b.norm())
    if sigma_applicable:
        kernel = kernel_basis(spec, band, SectionKind.SIGMA)
        sigma_dimension = kernel.dimension
        sigma_residual = max((apply_Sigma(spec, apply_Sigma(other, v)).norm() for v in kernel.basis),
                             default=0.0)
    return InvarianceReport(s_applicable, s_dimension, sigma_applicable, sigma_dimension,
                            sigma_residual, tol * scale)


@dataclass(frozen=True)
class InclusionReport:
    first_dimension: int
    second_dimension: int
    included: bool
    intersection_dimension: int
    cross_residual: float

    @property
    def equal(self):
        return self.included and self.first_dimension == self.second_dimension

    @property
    def dichotomy_holds(self):
        """An inclusion of paired kernels is either an equality or starts from {0}."""
        return not self.included or self.equal or self.first_dimension == 0

    @property
    def intersection_rule_holds(self):
        """Two paired kernels that share a nonzero vector coincide."""
        return self.intersection_dimension == 0 or (
            self.first_dimension == self.second_dimension == self.intersection_dimension
        )

    def to_json(self):
        return {
            "first_dimension": self.first_dimension,
            "second_dimension": self.second_dimension,
            "included": self.included,
            "equal": self.equal,
            "intersection_dimension": self.intersection_dimension,
            "cross_residual": self.cross_residual,
        }


def kernel_inclusion(first, second, band):
    """Compare k_first and k_second on the band: inclusion and shared directions."""
    tol = DEFAULT_CONFIG["tolerances"]["membership"]
    k1 = kernel_basis(first, band)
    k2 = kernel_basis(second, band)
    images = [apply_S(second, v) for v in k1.basis]
    images = [image if image.norm() > tol else LaurentPoly() for image in images]
    included = all(image.is_zero for image in images)
    nonzero = [image for image in images if not image.is_zero]
    if not nonzero:
        intersection = len(images)
    else:
        lo = min(image.kmin for image in nonzero)
        hi = max(image.kmax for image in nonzero)
        stacked = np.column_stack([image.to_vector(lo, hi) for image in images])
        null, _ = null_space_svd(stacked, band=band)
        intersection = null.shape[1]
    return InclusionReport(k1.dimension, k2.dimension, included, intersection,
                           cross_product_residual(first, second))


@dataclass(frozen=True)
class BridgeReport:
    symbol: LaurentPoly
    band: int
    toeplitz_basis: tuple
    projected_basis: tuple
    angle: float

    @property
    def toeplitz_dimension(self):
        return len(self.toeplitz_basis)

    @property
    def paired_dimension(self):
        return len(self.projected_basis)

    def to_json(self):
        return {
            "symbol": self.symbol.to_json(),
            "N": self.band,
            "toeplitz_dimension": self.toeplitz_dimension,
            "paired_dimension": self.paired_dimension,
            "angle": self.angle,
        }


def subspace_distance(first, second, lo, hi):
    """Largest principal angle between spans of two vector lists (pi/2 if the dimensions differ)."""
    if len(first) != len(second):
        return math.pi / 2
    if not first:
        return 0.0
    a = np.column_stack([v.to_vector(lo, hi) for v in first])
    b = np.column_stack([v.to_vector(lo, hi) for v in second])
    return float(np.max(scipy.linalg.subspace_angles(a, b)))


def toeplitz_kernel_bridge(G, band):
    """ker T_G on the analytic band against P+ ker S_{G,1}."""
    if G.is_zero:
        raise PreconditionError("the Toeplitz bridge needs G != 0")
    toeplitz, _ = band_kernel(G, band, SectionKind.TOEPLITZ)
    spec = PairedSpec(G, LaurentPoly.one())
    paired = kernel_basis(spec, band).basis if spec.nondegenerate else ()
    projected = tuple(riesz_plus(v) for v in paired)
    angle = subspace_distance(toeplitz, list(projected), 0, band)
    LOGGER.debug("toeplitz_kernel_bridge %s: dims %d / %d, angle %.3e",
                 G.to_expression(), len(toeplitz), len(projected), angle)
    return BridgeReport(G, band, tuple(toeplitz), projected, angle)
