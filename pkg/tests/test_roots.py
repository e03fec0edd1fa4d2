import numpy as np
import pytest

from errors import SymbolDomainError
from symbols.parser import parse_symbol
from symbols.roots import (
    circle_distance,
    is_invertible_on_circle,
    laurent_roots,
    poly_roots,
    split_by_circle,
)


def test_poly_roots_of_factored_polynomial():
    root_set = poly_roots(parse_symbol("(z - 2)*(z - 0.5)"))
    assert np.allclose(np.sort_complex(root_set.roots), [0.5, 2.0], atol=1e-12)
    assert root_set.monomial_order == 0
    assert np.all(root_set.residuals <= 1e-10)


def test_poly_roots_reports_the_monomial_factor():
    root_set = poly_roots(parse_symbol("z^2*(1 - z)"))
    assert root_set.monomial_order == 2
    assert len(root_set) == 1
    assert np.allclose(root_set.roots, [1.0])


def test_complex_roots():
    roots = poly_roots(parse_symbol("z^2 + 1")).roots
    assert np.allclose(np.sort_complex(roots), [-1j, 1j], atol=1e-12)


@pytest.mark.parametrize("text", ["0", "z^-1 + 1"])
def test_poly_roots_rejects_invalid_input(text):
    with pytest.raises(SymbolDomainError):
        poly_roots(parse_symbol(text))


def test_laurent_roots_ignore_the_origin():
    assert np.allclose(laurent_roots(parse_symbol("z^-3*(z - 3)")), [3.0])
    assert laurent_roots(parse_symbol("z^4")).size == 0


def test_circle_distance():
    assert circle_distance(parse_symbol("z - 0.5")) == pytest.approx(0.5)
    assert circle_distance(parse_symbol("2")) == np.inf
    assert circle_distance(parse_symbol("z^-1 - 1")) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("text, invertible", [
    ("2 - z", True),
    ("1 - z", False),
    ("z^-1 + z", False),
    ("z^-1", True),
    ("0", False),
])
def test_is_invertible_on_circle(text, invertible):
    assert is_invertible_on_circle(parse_symbol(text)) == invertible


def test_split_by_circle():
    inside, on, outside = split_by_circle(np.array([0.5, 1.0, 1j, 3.0, -0.2j]))
    assert np.allclose(inside, [0.5, -0.2j])
    assert np.allclose(on, [1.0, 1j])
    assert np.allclose(outside, [3.0])
