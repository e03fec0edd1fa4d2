import math

import pytest

from errors import SymbolSyntaxError
from symbols.laurent import LaurentPoly
from symbols.parser import parse_symbol, tokenize


@pytest.mark.parametrize("text, coeffs", [
    ("1", {0: 1}),
    ("z^-2", {-2: 1}),
    ("1 - z^-2", {0: 1, -2: -1}),
    ("2z", {1: 2}),
    ("3(1+z)", {0: 3, 1: 3}),
    ("(1+z)*(1-z^-2)", {0: 1, 1: 1, -2: -1, -1: -1}),
    ("z^+2", {2: 1}),
    ("-z", {1: -1}),
    ("i*z", {1: 1j}),
    ("2.5j", {0: 2.5j}),
    ("(2z)^-1", {-1: 0.5}),
    ("1e-3 z", {1: 1e-3}),
    ("z - z", {}),
])
def test_parse_symbol(text, coeffs):
    assert parse_symbol(text) == LaurentPoly.from_coeffs(coeffs)


@pytest.mark.parametrize("text, position", [
    ("z/2", 1),
    ("x + 1", 0),
    ("(1 + z", 6),
    ("1 + ", 4),
    ("z^1.5", 2),
    ("(1+z)^-1", 0),
    ("1 $ z", 2),
])
def test_syntax_errors_carry_a_position(text, position):
    with pytest.raises(SymbolSyntaxError) as error:
        parse_symbol(text)
    assert error.value.position == position
    assert error.value.text == text


def test_syntax_error_message_points_at_the_character():
    with pytest.raises(SymbolSyntaxError) as error:
        parse_symbol("z/2")
    lines = str(error.value).splitlines()
    assert lines[1].strip() == "z/2"
    assert lines[2].index("^") - lines[1].index("z") == 1


def test_tokenize_kinds():
    kinds = [token.kind for token in tokenize("2i z^-1 (i)")]
    assert kinds == ["imag", "z", "^", "-", "number", "(", "unit", ")", "end"]


def test_powers_expand_by_squaring():
    assert parse_symbol("(1+z)^20") == LaurentPoly(0, [math.comb(20, k) for k in range(21)])
    assert parse_symbol("2^-2") == LaurentPoly.constant(0.25)
    assert parse_symbol("(2z^-3)^5") == LaurentPoly.monomial(-15, 32)
    assert parse_symbol("0^3").is_zero


@pytest.mark.parametrize("text, position, message", [
    ("z^50000000", 2, "digits"),
    ("z^200000", 0, "exponent range"),
    ("(1+z)^20000", 0, "exponent range"),
    ("10^400", 0, "overflows"),
    ("(1+z)^1100", 0, "overflows"),
])
def test_oversized_powers_are_rejected(text, position, message):
    with pytest.raises(SymbolSyntaxError, match=message) as error:
        parse_symbol(text)
    assert error.value.position == position
