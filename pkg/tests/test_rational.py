import numpy as np
import pytest

from errors import ConditioningError, SymbolDomainError
from symbols.laurent import LaurentPoly
from symbols.parser import parse_symbol
from symbols.rational import (
    RationalSymbol,
    as_rational,
    conversion_band,
    decay_band,
    rational_fourier,
    rational_to_coeffs,
)

GRID = 128


@pytest.fixture
def geometric():
    """1 / (2 - z) = sum_k z^k / 2^(k+1)."""
    return RationalSymbol.reciprocal(parse_symbol("2 - z"))


def test_reciprocal_times_polynomial_is_one(geometric):
    values = geometric.on_circle(GRID) * parse_symbol("2 - z").on_circle(GRID)
    assert np.allclose(values, 1.0, atol=1e-14)


def test_denominator_is_normalised(geometric):
    assert geometric.denominator.kmin == 0
    assert geometric.denominator.values[-1] == 1
    assert not geometric.is_laurent


def test_geometric_coefficients(geometric):
    conversion = rational_fourier(geometric, 40)
    expected = LaurentPoly(0, 0.5 ** (np.arange(41) + 1))
    assert conversion.vector.allclose(expected, 1e-14)
    assert conversion.reconstruction_error <= 1e-9
    assert conversion.grid_points & (conversion.grid_points - 1) == 0


def test_coanalytic_rational_coefficients(geometric):
    coefficients = rational_to_coeffs(geometric.conj_reflect(), 10)
    assert coefficients.kmax == 0
    assert coefficients.coefficient(-3) == pytest.approx(0.5 ** 4, abs=1e-14)


def test_laurent_symbols_convert_exactly():
    p = parse_symbol("z^-2 + 3 + z^5")
    assert rational_to_coeffs(as_rational(p), 8) == p
    assert rational_fourier(as_rational(p), 3).reconstruction_error == 1.0
    assert as_rational(p).as_laurent() == p


def test_as_laurent_refuses_a_denominator(geometric):
    with pytest.raises(SymbolDomainError):
        geometric.as_laurent()


@pytest.mark.parametrize("text", ["1 - z", "z^-1 + z"])
def test_denominator_on_the_circle_is_rejected(text):
    with pytest.raises(ConditioningError):
        RationalSymbol.reciprocal(parse_symbol(text))


def test_decay_rate_and_bands(geometric):
    assert geometric.decay_rate() == pytest.approx(0.5)
    assert decay_band(geometric) == 54
    assert conversion_band(geometric, 32) == 86
    assert conversion_band(as_rational(parse_symbol("z")), 32) == 64


def test_arithmetic_matches_pointwise_values(geometric):
    other = RationalSymbol(parse_symbol("z"), parse_symbol("1 - 0.25z"))
    g, o = geometric.on_circle(GRID), other.on_circle(GRID)
    assert np.allclose((geometric * other).on_circle(GRID), g * o, atol=1e-13)
    assert np.allclose((geometric + other).on_circle(GRID), g + o, atol=1e-13)
    assert np.allclose((geometric - 1).on_circle(GRID), g - 1, atol=1e-13)
    assert np.allclose(geometric.conj_reflect().on_circle(GRID), np.conj(g), atol=1e-13)


def test_json_round_trip(geometric):
    restored = RationalSymbol.from_json(geometric.to_json())
    assert restored.numerator == geometric.numerator
    assert restored.denominator == geometric.denominator
