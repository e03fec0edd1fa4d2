"""Rational symbols p/q with q zero-free on the unit circle.

These carry the inner factors (finite Blaschke products and their
conjugates) and reciprocals of invertible Laurent polynomials. They enter
the coefficient world through :func:`rational_to_coeffs`.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from config import DEFAULT_CONFIG
from errors import ConditioningError, SymbolDomainError
from symbols.laurent import LaurentPoly
from symbols.roots import laurent_roots

LOGGER = logging.getLogger(__name__)

_MIN_GRID = 256
_MAX_GRID = 2 ** 22


class RationalSymbol:
    """numerator / denominator, denominator analytic, monic, with no zero on the circle."""

    __slots__ = ("_numerator", "_denominator")

    def __init__(self, numerator, denominator=None, check=True):
        if not isinstance(numerator, LaurentPoly):
            numerator = LaurentPoly.constant(numerator)
        if denominator is None:
            denominator = LaurentPoly.one()
        if denominator.is_zero:
            raise SymbolDomainError("rational symbol with zero denominator")
        # move z^kmin of the denominator into the numerator, then make it monic
        shift = -denominator.kmin
        numerator, denominator = numerator.shift(shift), denominator.shift(shift)
        lead = denominator.values[-1]
        self._numerator = numerator * (1 / lead)
        self._denominator = denominator * (1 / lead)
        if check:
            self._check_denominator()

    def _check_denominator(self):
        if self._denominator.width == 0:
            return
        boundary = DEFAULT_CONFIG["rational"]["boundary"]
        distance = self.circle_distance()
        samples = np.abs(self._denominator.on_circle(_MIN_GRID))
        if distance <= boundary or samples.min() <= boundary * samples.max():
            raise ConditioningError(
                f"denominator root within {distance:.3e} of the unit circle"
            )

    # construction -----------------------------------------------------------

    @classmethod
    def from_laurent(cls, p):
        return cls(p, LaurentPoly.one(), check=False)

    @classmethod
    def reciprocal(cls, p):
        """1 / p for a Laurent polynomial without zeros on the circle."""
        return cls(LaurentPoly.one(), p)

    # structure --------------------------------------------------------------

    @property
    def numerator(self):
        return self._numerator

    @property
    def denominator(self):
        return self._denominator

    @property
    def is_laurent(self):
        return self._denominator.width == 0

    def as_laurent(self):
        if not self.is_laurent:
            raise SymbolDomainError("rational symbol has a nontrivial denominator")
        return self._numerator

    def denominator_roots(self):
        if self._denominator.width == 0:
            return np.zeros(0, dtype=complex)
        return laurent_roots(self._denominator)

    def circle_distance(self):
        roots = self.denominator_roots()
        if roots.size == 0:
            return np.inf
        return float(np.min(np.abs(np.abs(roots) - 1.0)))

    def decay_rate(self):
        """Geometric decay rate of the Fourier coefficients (0 for a Laurent polynomial)."""
        roots = self.denominator_roots()
        if roots.size == 0:
            return 0.0
        moduli = np.abs(roots)
        return float(np.max(np.minimum(moduli, 1.0 / moduli)))

    # evaluation -------------------------------------------------------------

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self._numerator(z) / self._denominator(z)

    def on_circle(self, grid_points):
        return self._numerator.on_circle(grid_points) / self._denominator.on_circle(grid_points)

    def modulus_deviation(self, grid_points=None):
        grid_points = grid_points or DEFAULT_CONFIG["grid_points"]
        return float(np.max(np.abs(np.abs(self.on_circle(grid_points)) - 1.0)))

    # arithmetic -------------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalSymbol):
            return other
        if isinstance(other, LaurentPoly):
            return RationalSymbol.from_laurent(other)
        if np.isscalar(other):
            return RationalSymbol.from_laurent(LaurentPoly.constant(other))
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalSymbol(self._numerator * other._numerator,
                              self._denominator * other._denominator, check=False)

    __rmul__ = __mul__

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalSymbol(
            self._numerator * other._denominator + other._numerator * self._denominator,
            self._denominator * other._denominator,
            check=False,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalSymbol(-self._numerator, self._denominator, check=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def conj_reflect(self):
        """Boundary conjugate; the reflected denominator keeps its roots off the circle."""
        return RationalSymbol(self._numerator.conj_reflect(), self._denominator.conj_reflect(),
                              check=False)

    # json -------------------------------------------------------------------

    def to_json(self):
        return {"num": self._numerator.to_json(), "den": self._denominator.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))

    def __repr__(self):
        return (f"RationalSymbol(({self._numerator.to_expression()}) / "
                f"({self._denominator.to_expression()}))")


def as_rational(symbol):
    if isinstance(symbol, RationalSymbol):
        return symbol
    return RationalSymbol.from_laurent(symbol)


def decay_band(r, eps=1e-16):
    """Smallest L with decay_rate(r)^L below eps."""
    rate = r.decay_rate()
    if rate == 0.0:
        return 0
    return int(math.ceil(math.log(eps) / math.log(rate)))


def conversion_band(r, working_band, margin=None, eps=1e-16):
    """Band at which r is converted for use against vectors of the given working band."""
    margin = margin or DEFAULT_CONFIG["rational"]["band_margin"]
    return max(margin * working_band, decay_band(r, eps) + working_band)


@dataclass(frozen=True)
class FourierConversion:
    vector: LaurentPoly
    band: int
    grid_points: int
    reconstruction_error: float


def rational_fourier(r, band, grid_points=None, chop=None):
    """Fourier coefficients of r on [-band, band] by grid sampling and an FFT."""
    r = as_rational(r)
    if r.is_laurent:
        vector = r.numerator.restrict(-band, band)
        error = (r.numerator - vector).max_abs()
        return FourierConversion(vector, band, 0, error)
    decay = decay_band(r)
    points = max(grid_points or DEFAULT_CONFIG["grid_points"], _MIN_GRID,
                 8 * (band + r.numerator.radius + r.denominator.width),
                 2 * (band + decay + r.numerator.radius))
    if points > _MAX_GRID:
        raise ConditioningError(
            f"denominator roots decay at rate {r.decay_rate():.6f}; grid of {points} points refused"
        )
    points = 1 << (points - 1).bit_length()
    samples = r.on_circle(points)
    spectrum = np.fft.fft(samples) / points
    exponents = np.arange(-band, band + 1)
    values = spectrum[exponents % points]
    chop = DEFAULT_CONFIG["rational"]["chop"] if chop is None else chop
    scale = np.max(np.abs(values)) if values.size else 0.0
    values = np.where(np.abs(values) > chop * scale, values, 0)
    vector = LaurentPoly(-band, values)
    error = float(np.max(np.abs(vector.on_circle(points) - samples)))
    LOGGER.debug("rational_to_coeffs: band %d, grid %d, reconstruction error %.3e",
                 band, points, error)
    return FourierConversion(vector, band, points, error)


def rational_to_coeffs(r, band, grid_points=None, chop=None):
    return rational_fourier(r, band, grid_points, chop).vector
