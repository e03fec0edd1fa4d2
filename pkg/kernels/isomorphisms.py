"""The maps J and J~ between paired kernels, and the Coburn-type dichotomy."""
import logging
from dataclasses import dataclass, field

from config import DEFAULT_CONFIG
from errors import InvertibilityError, MembershipError, PreconditionError
from kernels.exact import adjoint_kernel_dimension, kernel_dimension
from kernels.null_space import adjoint_kernel_basis, kernel_basis
from operators.paired import apply_S, apply_Sigma
from operators.projections import riesz_minus, riesz_plus
from symbols.laurent import LaurentPoly
from symbols.rational import RationalSymbol, conversion_band, rational_to_coeffs
from symbols.roots import is_invertible_on_circle

LOGGER = logging.getLogger(__name__)

Z_BAR = LaurentPoly.monomial(-1)

INVERSE_CASES = ("a_minus_b", "a", "b")


def _membership(residual, norm, tol, message):
    if residual > tol * max(1.0, norm):
        raise MembershipError(message, residual)


def J_map(phi, spec, tol=None):
    """J phi = z^-1 conj(phi), from k_{a,b} onto ker_{conj b, conj a}; antilinear and involutive."""
    tol = DEFAULT_CONFIG["tolerances"]["membership"] if tol is None else tol
    _membership(apply_S(spec, phi).norm(), phi.norm(), tol, f"phi is not in the kernel of S_{spec}")
    image = Z_BAR * phi.conj_reflect()
    _membership(apply_S(spec.conj_swapped(), image).norm(), image.norm(), tol,
                f"J phi left the kernel of S_{spec.conj_swapped()}")
    return image


def Jtilde_map(psi, spec, tol=None):
    """J~ psi = (conj a - conj b) psi, from ker S_{a,b}* into ker_{conj a, conj b}."""
    tol = DEFAULT_CONFIG["tolerances"]["membership"] if tol is None else tol
    target = spec.conj()
    _membership(apply_Sigma(target, psi).norm(), psi.norm(), tol,
                f"psi is not in the kernel of S_{spec}*")
    image = (target.a - target.b) * psi
    _membership(apply_S(target, image).norm(), image.norm(), DEFAULT_CONFIG["tolerances"]["rational"],
                f"J~ psi left the kernel of S_{target}")
    return image


def invertibility_cases(spec, tol=None):
    """Which of a - b, a, b have no zero on the circle (invertible in L-infinity)."""
    symbols = {"a_minus_b": spec.a - spec.b, "a": spec.a, "b": spec.b}
    return tuple(case for case in INVERSE_CASES if is_invertible_on_circle(symbols[case], tol))


def Jtilde_inverse(phi, spec, case, band=None):
    """Recover psi from phi = J~ psi.

    a_minus_b: phi / (conj a - conj b); a: P-phi / conj a; b: -P+phi / conj b.
    """
    if case not in INVERSE_CASES:
        raise ValueError(f"unknown inverse case {case!r}; expected one of {INVERSE_CASES}")
    band = band or DEFAULT_CONFIG["band"]
    target = spec.conj()
    divisor, numerator = {
        "a_minus_b": (target.a - target.b, phi),
        "a": (target.a, riesz_minus(phi)),
        "b": (target.b, -riesz_plus(phi)),
    }[case]
    if not is_invertible_on_circle(divisor):
        raise InvertibilityError(f"case {case}: the divisor {divisor.to_expression()} vanishes on the circle")
    quotient = RationalSymbol.reciprocal(divisor) * numerator
    return rational_to_coeffs(quotient, conversion_band(quotient, band))


@dataclass(frozen=True)
class RoundTripReport:
    cases: tuple
    errors: dict
    discrepancy: float

    @property
    def max_error(self):
        return max(self.errors.values(), default=0.0)

    def to_json(self):
        return {"cases": list(self.cases), "errors": dict(self.errors), "discrepancy": self.discrepancy}


def jtilde_round_trip(psi, spec, band=None, cases=None):
    """Jtilde_inverse(Jtilde_map(psi)) against psi for every invertibility case that holds."""
    cases = invertibility_cases(spec) if cases is None else tuple(cases)
    image = Jtilde_map(psi, spec)
    recovered = {case: Jtilde_inverse(image, spec, case, band) for case in cases}
    errors = {case: (vector - psi).norm() for case, vector in recovered.items()}
    vectors = list(recovered.values())
    discrepancy = max(((u - v).norm() for u in vectors for v in vectors), default=0.0)
    return RoundTripReport(cases, errors, discrepancy)


@dataclass(frozen=True)
class CoburnReport:
    spec: object
    dim_ab: int
    dim_ba: int
    dim_conj: int
    dim_adjoint: int
    cases: tuple
    method: str
    violations: tuple = field(default_factory=tuple)

    @property
    def passed(self):
        return not self.violations

    @property
    def toeplitz(self):
        """b = 1: dim ker T_G and dim ker T_G* (T_G* = T_{conj G})."""
        if self.spec.b != LaurentPoly.one():
            return None
        return {"kernel": self.dim_ab, "adjoint_kernel": self.dim_conj}

    def to_json(self):
        return {
            "spec": self.spec.to_json(),
            "method": self.method,
            "dims": {
                "ker_ab": self.dim_ab,
                "ker_ba": self.dim_ba,
                "ker_conj": self.dim_conj,
                "ker_adjoint": self.dim_adjoint,
            },
            "invertible": list(self.cases),
            "toeplitz": self.toeplitz,
            "passed": self.passed,
            "violations": list(self.violations),
        }


def _dimensions(spec, method, band):
    if method == "exact":
        return (kernel_dimension(spec), kernel_dimension(spec.swapped()),
                kernel_dimension(spec.conj()), adjoint_kernel_dimension(spec))
    if method != "band":
        raise ValueError(f"unknown method {method!r}; expected 'exact' or 'band'")
    band = band or DEFAULT_CONFIG["band"]
    return (kernel_basis(spec, band).dimension, kernel_basis(spec.swapped(), band).dimension,
            kernel_basis(spec.conj(), band).dimension, adjoint_kernel_basis(spec, band).dimension)


def coburn_check(spec, band=None, method="exact"):
    """k_{a,b} = {0} or k_{b,a} = {0}; dim k_{b,a} = dim ker_{conj a, conj b};
    dim ker S* = dim ker_{conj a, conj b} whenever a, b or a - b is invertible."""
    if spec.a.is_zero or spec.b.is_zero:
        raise PreconditionError("the dichotomy needs a and b nonzero a.e.")
    dim_ab, dim_ba, dim_conj, dim_adjoint = _dimensions(spec, method, band)
    cases = invertibility_cases(spec)
    violations = []
    if min(dim_ab, dim_ba) != 0:
        violations.append(f"both kernels nontrivial: dim k_ab = {dim_ab}, dim k_ba = {dim_ba}")
    if dim_ba != dim_conj:
        violations.append(f"J dimension mismatch: dim k_ba = {dim_ba}, dim k_conj = {dim_conj}")
    if dim_adjoint > dim_conj:
        violations.append(f"J~ not injective: dim ker S* = {dim_adjoint} > {dim_conj}")
    if cases and dim_adjoint != dim_conj:
        violations.append(f"J~ dimension mismatch under {cases}: {dim_adjoint} != {dim_conj}")
    report = CoburnReport(spec, dim_ab, dim_ba, dim_conj, dim_adjoint, cases, method, tuple(violations))
    LOGGER.debug("coburn_check %s: dims (%d, %d, %d, %d), %s", spec, dim_ab, dim_ba, dim_conj,
                 dim_adjoint, "pass" if report.passed else "; ".join(violations))
    return report
