"""Laurent polynomials on the unit circle.

A Laurent polynomial ``a(z) = sum_k c_k z^k`` is stored densely as the
coefficient array of the exponent window ``[kmin, kmax]``; the same type
doubles as the finite-band coefficient vector of an element of L^2
(``CoeffVector`` in the operator layer).
"""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import minimize_scalar

from config import DEFAULT_CONFIG
from errors import SymbolDomainError

LOGGER = logging.getLogger(__name__)


class AnalyticityClass(str, Enum):
    ANALYTIC = "analytic"
    COANALYTIC = "coanalytic"
    COANALYTIC_VANISHING = "coanalytic_vanishing"
    CONSTANT = "constant"
    NEITHER = "neither"


def _format_number(c):
    re, im = float(c.real), float(c.imag)
    if im == 0.0:
        return format(re, ".17g")
    if re == 0.0:
        return f"{format(im, '.17g')}i"
    sign = "+" if im >= 0 else "-"
    return f"({format(re, '.17g')}{sign}{format(abs(im), '.17g')}i)"


class LaurentPoly:
    """Immutable Laurent polynomial with exact (floating) coefficient arithmetic."""

    __slots__ = ("_kmin", "_values")

    def __init__(self, kmin=0, values=()):
        values = np.array(values, dtype=complex).ravel()
        if not np.all(np.isfinite(values)):
            raise SymbolDomainError("Laurent coefficients must be finite")
        nonzero = np.flatnonzero(values)
        if nonzero.size == 0:
            kmin, values = 0, np.zeros(0, dtype=complex)
        else:
            kmin = int(kmin) + int(nonzero[0])
            values = values[nonzero[0]:nonzero[-1] + 1].copy()
        values.setflags(write=False)
        self._kmin = kmin
        self._values = values

    # construction -----------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs):
        coeffs = {int(k): complex(c) for k, c in dict(coeffs).items() if c != 0}
        if not coeffs:
            return cls()
        lo, hi = min(coeffs), max(coeffs)
        values = np.zeros(hi - lo + 1, dtype=complex)
        for k, c in coeffs.items():
            values[k - lo] = c
        return cls(lo, values)

    @classmethod
    def monomial(cls, k, c=1.0):
        return cls(k, [c])

    @classmethod
    def constant(cls, c):
        return cls(0, [c])

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls(0, [1.0])

    # structure --------------------------------------------------------------

    @property
    def values(self):
        return self._values

    @property
    def kmin(self):
        return self._kmin

    @property
    def kmax(self):
        return self._kmin + max(len(self._values) - 1, 0)

    @property
    def band(self):
        return (self.kmin, self.kmax)

    @property
    def width(self):
        return self.kmax - self.kmin

    @property
    def radius(self):
        return max(abs(self.kmin), abs(self.kmax))

    @property
    def is_zero(self):
        return self._values.size == 0

    @property
    def coeffs(self):
        return {self._kmin + i: complex(c) for i, c in enumerate(self._values) if c != 0}

    def coefficient(self, k):
        i = k - self._kmin
        if 0 <= i < len(self._values):
            return complex(self._values[i])
        return 0j

    __getitem__ = coefficient

    def to_vector(self, lo, hi):
        """Dense coefficients on exponents lo..hi; anything outside is dropped."""
        out = np.zeros(hi - lo + 1, dtype=complex)
        if self.is_zero:
            return out
        src_lo, src_hi = max(lo, self.kmin), min(hi, self.kmax)
        if src_lo <= src_hi:
            out[src_lo - lo:src_hi - lo + 1] = self._values[src_lo - self._kmin:src_hi - self._kmin + 1]
        return out

    def restrict(self, lo=None, hi=None):
        if self.is_zero:
            return self
        lo = self.kmin if lo is None else max(lo, self.kmin)
        hi = self.kmax if hi is None else min(hi, self.kmax)
        if lo > hi:
            return LaurentPoly()
        return LaurentPoly(lo, self._values[lo - self._kmin:hi - self._kmin + 1])

    def shift(self, m):
        """Multiply by z^m."""
        return LaurentPoly(self._kmin + m, self._values)

    def conj_reflect(self):
        """Coefficients of the boundary conjugate: c_k -> conj(c_{-k})."""
        if self.is_zero:
            return self
        return LaurentPoly(-self.kmax, np.conj(self._values[::-1]))

    # norms ------------------------------------------------------------------

    def norm(self):
        """L^2 norm for normalised arc length (the coefficient l^2 norm)."""
        return float(np.linalg.norm(self._values))

    def max_abs(self):
        return float(np.max(np.abs(self._values))) if self._values.size else 0.0

    def allclose(self, other, tol):
        return (self - other).max_abs() <= tol

    # evaluation -------------------------------------------------------------

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.is_zero:
            return np.zeros_like(z)
        return np.polynomial.polynomial.polyval(z, self._values) * z ** self._kmin

    def on_circle(self, grid_points):
        """Values at the grid exp(2 pi i j / M), j = 0..M-1 (exact up to rounding, any M)."""
        slots = np.zeros(grid_points, dtype=complex)
        if not self.is_zero:
            exponents = np.arange(self.kmin, self.kmax + 1) % grid_points
            np.add.at(slots, exponents, self._values)
        return np.fft.ifft(slots) * grid_points

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if np.isscalar(other):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo, hi = min(self.kmin, other.kmin), max(self.kmax, other.kmax)
        return LaurentPoly(lo, self.to_vector(lo, hi) + other.to_vector(lo, hi))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self._kmin, -self._values)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return lp_mul(self, other)
        if np.isscalar(other):
            return LaurentPoly(self._kmin, self._values * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._kmin == other._kmin and np.array_equal(self._values, other._values)

    def __hash__(self):
        return hash((self._kmin, self._values.tobytes()))

    # text / json ------------------------------------------------------------

    def to_expression(self):
        """Render in the parse_symbol grammar, so parse_symbol(p.to_expression()) == p."""
        if self.is_zero:
            return "0"
        terms = []
        for k, c in sorted(self.coeffs.items()):
            negative = c.imag == 0 and c.real < 0
            number = _format_number(-c if negative else c)
            if k == 0:
                body = number
            else:
                power = "z" if k == 1 else f"z^{k}"
                body = power if number == "1" else f"{number}*{power}"
            terms.append(("- " if negative else "+ ") + body)
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json(self):
        return {"coeffs": [[k, c.real, c.imag] for k, c in sorted(self.coeffs.items())]}

    @classmethod
    def from_json(cls, data):
        return cls.from_coeffs({int(k): complex(re, im) for k, re, im in data["coeffs"]})

    def __repr__(self):
        return f"LaurentPoly({self.to_expression()!r})"


def lp_mul(a, b):
    """Coefficient convolution, i.e. the pointwise product on the circle."""
    if a.is_zero or b.is_zero:
        return LaurentPoly()
    return LaurentPoly(a.kmin + b.kmin, np.convolve(a.values, b.values))


def conj_reflect(a):
    return a.conj_reflect()


def sup_norm(a, grid_points=None, oversampling=None, min_points=None):
    """Grid maximum of |a| on the circle, refined once around the grid argmax.

    The result never exceeds the true sup-norm; before refinement the deficit
    is O(h^2) in the grid spacing h.
    """
    if a.is_zero:
        return 0.0
    if a.width == 0:
        return float(abs(a.values[0]))
    settings = DEFAULT_CONFIG["sup_norm"]
    oversampling = oversampling or settings["oversampling"]
    min_points = min_points or settings["min_points"]
    points = max(grid_points or 0, min_points, oversampling * (a.width + 1))
    moduli = np.abs(a.on_circle(points))
    j = int(np.argmax(moduli))
    spacing = 2 * np.pi / points
    theta = spacing * j
    refined = minimize_scalar(
        lambda t: -abs(complex(a(np.exp(1j * t)))),
        bounds=(theta - spacing, theta + spacing),
        method="bounded",
        options={"xatol": 1e-12},
    )
    LOGGER.debug("sup_norm: %d grid points, grid max %.16g, refined %.16g",
                 points, moduli[j], -refined.fun)
    return float(max(moduli[j], -refined.fun))


def is_analytic(a):
    return a.is_zero or a.kmin >= 0


def is_coanalytic(a):
    return a.is_zero or a.kmax <= 0


def classify(a):
    if a.is_zero or a.band == (0, 0):
        return AnalyticityClass.CONSTANT
    if a.kmax <= -1:
        return AnalyticityClass.COANALYTIC_VANISHING
    if a.kmin >= 0:
        return AnalyticityClass.ANALYTIC
    if a.kmax <= 0:
        return AnalyticityClass.COANALYTIC
    return AnalyticityClass.NEITHER


@dataclass(frozen=True)
class NondegeneracyReport:
    nondegenerate: bool
    failures: tuple = ()

    def __bool__(self):
        return self.nondegenerate


def is_nondegenerate(a, b):
    """a, b and a - b nonzero a.e.; for Laurent polynomials, not identically zero."""
    failures = []
    if a.is_zero:
        failures.append("a = 0")
    if b.is_zero:
        failures.append("b = 0")
    if (a - b).is_zero:
        failures.append("a - b = 0")
    return NondegeneracyReport(not failures, tuple(failures))
