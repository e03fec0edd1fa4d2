"""Paired, transposed-paired, Toeplitz and Hankel operators applied exactly.

Every apply here is a finite convolution followed by a split at exponent 0,
so the output band grows and nothing is truncated.
"""
from dataclasses import dataclass, field

from errors import BandViolationError, DegeneratePairError
from operators.projections import (
    conj_vector,
    inner_product,
    is_in_minus,
    is_in_plus,
    mul_apply,
    riesz_minus,
    riesz_plus,
)
from symbols.laurent import LaurentPoly, is_nondegenerate
from symbols.parser import parse_symbol

Z = LaurentPoly.monomial(1)
Z_BAR = LaurentPoly.monomial(-1)


@dataclass(frozen=True)
class PairedSpec:
    """The ordered symbol pair (a, b) behind S_{a,b} and Sigma_{a,b}."""

    a: LaurentPoly
    b: LaurentPoly
    nondegenerate: bool = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nondegenerate", bool(is_nondegenerate(self.a, self.b)))

    @classmethod
    def of(cls, a, b):
        if not isinstance(a, LaurentPoly):
            a = parse_symbol(a) if isinstance(a, str) else LaurentPoly.constant(a)
        if not isinstance(b, LaurentPoly):
            b = parse_symbol(b) if isinstance(b, str) else LaurentPoly.constant(b)
        return cls(a, b)

    def report(self):
        return is_nondegenerate(self.a, self.b)

    def require_nondegenerate(self):
        report = self.report()
        if not report:
            raise DegeneratePairError(report)
        return self

    @property
    def radius(self):
        return max(self.a.radius, self.b.radius)

    def conj(self):
        """(conj a, conj b): S_{a,b}* is Sigma of this pair."""
        return PairedSpec(self.a.conj_reflect(), self.b.conj_reflect())

    def swapped(self):
        return PairedSpec(self.b, self.a)

    def conj_swapped(self):
        """(conj b, conj a), the target pair of the map phi -> z^-1 conj(phi)."""
        return PairedSpec(self.b.conj_reflect(), self.a.conj_reflect())

    def scaled(self, eta):
        return PairedSpec(self.a * eta, self.b * eta)

    def to_json(self):
        return {"a": self.a.to_json(), "b": self.b.to_json(), "nondegenerate": self.nondegenerate}

    @classmethod
    def from_json(cls, data):
        return cls(LaurentPoly.from_json(data["a"]), LaurentPoly.from_json(data["b"]))

    def __str__(self):
        return f"({self.a.to_expression()}, {self.b.to_expression()})"


def apply_S(spec, v):
    """S_{a,b} v = a P+v + b P-v."""
    return mul_apply(spec.a, riesz_plus(v)) + mul_apply(spec.b, riesz_minus(v))


def apply_Sigma(spec, v):
    """Sigma_{a,b} v = P+(a v) + P-(b v)."""
    return riesz_plus(mul_apply(spec.a, v)) + riesz_minus(mul_apply(spec.b, v))


def hankel_apply(eta, f):
    """H_eta f = P-(eta f) for f supported on exponents >= 0."""
    if not is_in_plus(f):
        raise BandViolationError(f"H_eta acts on the analytic half-band, got band {f.band}")
    return riesz_minus(mul_apply(eta, f))


def hankel_tilde_apply(eta, f):
    """H~_eta f = P+(eta f) for f supported on exponents <= -1."""
    if not is_in_minus(f):
        raise BandViolationError(f"H~_eta acts on the coanalytic half-band, got band {f.band}")
    return riesz_plus(mul_apply(eta, f))


def toeplitz_apply(G, f):
    if not is_in_plus(f):
        raise BandViolationError(f"T_G acts on the analytic half-band, got band {f.band}")
    return riesz_plus(mul_apply(G, f))


def conjugation_relation_residual(spec, v):
    """|| conj(S_{a,b} v) - z S_{conj b, conj a}(z^-1 conj v) ||."""
    lhs = conj_vector(apply_S(spec, v))
    rhs = Z * apply_S(spec.conj_swapped(), Z_BAR * conj_vector(v))
    return (lhs - rhs).norm()


def adjoint_residual(spec, u, v):
    """| <S_{a,b} u, v> - <u, Sigma_{conj a, conj b} v> |."""
    return abs(inner_product(apply_S(spec, u), v) - inner_product(u, apply_Sigma(spec.conj(), v)))
