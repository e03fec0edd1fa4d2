"""Explicit kernel elements and the pair (a, b) whose kernel contains a given function."""
import logging
from dataclasses import dataclass, field

from config import DEFAULT_CONFIG
from errors import MembershipError, PreconditionError
from kernels.criteria import ANALYTIC_CLASSES, COANALYTIC_CLASSES
from operators.paired import PairedSpec, apply_S
from operators.projections import riesz_minus, riesz_plus
from symbols.factorization import inner_outer_factor
from symbols.laurent import AnalyticityClass, LaurentPoly, classify
from symbols.rational import RationalSymbol, as_rational, conversion_band, rational_to_coeffs

LOGGER = logging.getLogger(__name__)

Z = LaurentPoly.monomial(1)
Z_BAR = LaurentPoly.monomial(-1)


def _to_vector(symbol, band):
    symbol = as_rational(symbol)
    return rational_to_coeffs(symbol, conversion_band(symbol, band))


def _verify(spec, f, tol):
    residual = apply_S(spec, f).norm()
    if residual > tol * max(1.0, f.norm()):
        raise MembershipError(f"constructed element does not annihilate S_{spec}", residual)
    return f


def kernel_element_inner(a, b, band=None):
    """f = f+ + f- in k_{a,b} for coanalytic a and analytic b with a nontrivial inner factor.

    f+ = (b_i - b_i(0)) / z * b_o and f- = -a (1 - b_i(0) conj(b_i)) / z.
    """
    if a.is_zero or classify(a) not in COANALYTIC_CLASSES:
        raise PreconditionError(f"a must be a nonzero coanalytic symbol, got {classify(a).value}")
    if b.is_zero or classify(b) not in ANALYTIC_CLASSES:
        raise PreconditionError(f"b must be a nonzero analytic symbol, got {classify(b).value}")
    factorization = inner_outer_factor(b)
    if factorization.inner_is_constant:
        raise PreconditionError("b has a constant inner factor")
    band = band or DEFAULT_CONFIG["band"]
    inner, outer = factorization.inner, factorization.outer
    at_zero = factorization.inner_at_zero()
    f_plus = (inner - at_zero) * Z_BAR * outer
    f_minus = -(a * (1 - at_zero * inner.conj_reflect()) * Z_BAR)
    f = _to_vector(f_plus + f_minus, band)
    return _verify(PairedSpec(a, b), f, DEFAULT_CONFIG["tolerances"]["rational"])


def kernel_element_iii(a, b):
    """f = b - a, which S_{a,b} sends to a b - b a = 0."""
    if a.is_zero or classify(a) != AnalyticityClass.COANALYTIC_VANISHING:
        raise PreconditionError(f"a must vanish at infinity (coanalytic, kmax <= -1), got {classify(a).value}")
    if b.is_zero or classify(b) not in ANALYTIC_CLASSES:
        raise PreconditionError(f"b must be a nonzero analytic symbol, got {classify(b).value}")
    return b - a


@dataclass(frozen=True)
class KernelPair:
    a: RationalSymbol
    b: RationalSymbol
    phi: LaurentPoly
    residual: float
    provenance: dict = field(default_factory=dict, compare=False)
    convention: str = None

    def as_spec(self):
        """The pair as a PairedSpec when both symbols are Laurent polynomials."""
        if not (self.a.is_laurent and self.b.is_laurent):
            return None
        return PairedSpec(self.a.as_laurent(), self.b.as_laurent())

    def to_json(self):
        return {
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "phi": self.phi.to_json(),
            "residual": self.residual,
            "convention": self.convention,
            "provenance": {name: value.to_json() for name, value in self.provenance.items()},
        }


def annihilation_residual(a, b, phi, band=None):
    """|| a P+phi + b P-phi || through coefficient conversion."""
    band = band or DEFAULT_CONFIG["band"]
    image = as_rational(a) * riesz_plus(phi) + as_rational(b) * riesz_minus(phi)
    return _to_vector(image, band).norm()


def pair_from_function(phi, band=None):
    """The pair (a, b) whose paired kernel is the one containing phi.

    phi+ = I+ O+ and z^-1 conj(phi-) = I O; then I- = conj(I), O- = z^-1 conj(O),
    and with H1+ = h1+ = 1, H2+ = O+, h2+ = O:
    a = conj(I+) conj(O), b = -I z O+.
    """
    if phi.is_zero:
        raise PreconditionError("pair_from_function needs phi != 0")
    phi_plus, phi_minus = riesz_plus(phi), riesz_minus(phi)
    one = RationalSymbol.from_laurent(LaurentPoly.one())
    if phi_minus.is_zero:
        a, b = RationalSymbol.from_laurent(LaurentPoly.zero()), RationalSymbol.from_laurent(-Z)
        convention = "phi- = 0: a = 0, b = -z"
        provenance = {}
    elif phi_plus.is_zero:
        a, b = one, RationalSymbol.from_laurent(LaurentPoly.zero())
        convention = "phi+ = 0: a = 1, b = 0"
        provenance = {}
    else:
        plus = inner_outer_factor(phi_plus)
        minus = inner_outer_factor(Z_BAR * phi_minus.conj_reflect())
        a = plus.inner.conj_reflect() * minus.outer.conj_reflect()
        b = -(minus.inner * Z * plus.outer)
        convention = None
        provenance = {
            "I_plus": plus.inner,
            "O_plus": plus.outer,
            "I_minus": minus.inner.conj_reflect(),
            "O_minus": minus.outer.conj_reflect() * Z_BAR,
            "H1_plus": one,
            "H2_plus": plus.outer,
            "h1_plus": one,
            "h2_plus": minus.outer,
        }
    residual = annihilation_residual(a, b, phi, band)
    LOGGER.debug("pair_from_function: residual %.3e%s", residual,
                 f" ({convention})" if convention else "")
    return KernelPair(a, b, phi, residual, provenance, convention)
