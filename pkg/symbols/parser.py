"""Recursive-descent parser for symbol expressions.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := factor (['*'] factor)*          # juxtaposition multiplies: 2z, 3(1+z)
    factor  := ('+' | '-') factor | primary ['^' ['+' | '-'] INT]
    primary := NUMBER ['i' | 'j'] | 'i' | 'j' | 'z' | '(' expr ')'

Negative powers are accepted for monomials only; there is no division. Exponents have at most
MAX_EXPONENT_DIGITS digits, and a power may not reach past z^+-MAX_POWER_DEGREE; both raise
SymbolSyntaxError, as does a constant power that overflows.
"""
import cmath
import re
from dataclasses import dataclass

from errors import SymbolDomainError, SymbolSyntaxError
from symbols.laurent import LaurentPoly

MAX_EXPONENT_DIGITS = 6
MAX_POWER_DEGREE = 10_000

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?P<imag>[ij])?"
    r"|(?P<name>[A-Za-z_])"
    r"|(?P<op>[-+*^()/])"
    r")"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise SymbolSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = match.start(match.lastgroup) if match.lastgroup != "imag" else match.start("number")
        if match.group("number") is not None:
            kind = "imag" if match.group("imag") else "number"
            tokens.append(Token(kind, match.group("number"), match.start("number")))
        elif match.group("name") is not None:
            name = match.group("name")
            if name not in ("z", "i", "j"):
                raise SymbolSyntaxError(f"unknown name {name!r}", text, start)
            tokens.append(Token("z" if name == "z" else "unit", name, start))
        else:
            op = match.group("op")
            if op == "/":
                raise SymbolSyntaxError("division is not part of the symbol grammar", text, start)
            tokens.append(Token(op, op, start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.current
        self.index += 1
        return token

    def expect(self, kind):
        if self.current.kind != kind:
            wanted = "end of input" if kind == "end" else repr(kind)
            raise SymbolSyntaxError(f"expected {wanted}", self.text, self.current.position)
        return self.advance()

    def parse(self):
        result = self.expr()
        self.expect("end")
        return result

    def expr(self):
        result = self.term()
        while self.current.kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.factor()
        while True:
            if self.current.kind == "*":
                self.advance()
                result = result * self.factor()
            elif self.current.kind in ("number", "imag", "unit", "z", "("):
                result = result * self.factor()
            else:
                return result

    def factor(self):
        if self.current.kind in ("+", "-"):
            op = self.advance().kind
            operand = self.factor()
            return operand if op == "+" else -operand
        base_token = self.current
        base = self.primary()
        if self.current.kind != "^":
            return base
        self.advance()
        sign = 1
        if self.current.kind in ("+", "-"):
            sign = -1 if self.advance().kind == "-" else 1
        exponent_token = self.current
        if exponent_token.kind != "number" or not exponent_token.text.isdigit():
            raise SymbolSyntaxError("exponent must be an integer", self.text, exponent_token.position)
        if len(exponent_token.text) > MAX_EXPONENT_DIGITS:
            raise SymbolSyntaxError(f"exponent has more than {MAX_EXPONENT_DIGITS} digits", self.text,
                                    exponent_token.position)
        self.advance()
        return self._power(base, sign * int(exponent_token.text), base_token)

    def _power(self, base, exponent, token):
        if exponent == 0:
            return LaurentPoly.one()
        if base.is_zero:
            if exponent < 0:
                raise SymbolSyntaxError("negative powers are only defined for monomials", self.text,
                                        token.position)
            return base
        if max(abs(base.kmin), abs(base.kmax)) * abs(exponent) > MAX_POWER_DEGREE:
            raise SymbolSyntaxError(f"power leaves the exponent range +-{MAX_POWER_DEGREE}", self.text,
                                    token.position)
        if len(base.coeffs) == 1:
            (k, c), = base.coeffs.items()
            try:
                value = complex(c) ** exponent
            except (OverflowError, ZeroDivisionError):
                value = complex("nan")
            if not cmath.isfinite(value):
                raise SymbolSyntaxError("power overflows", self.text, token.position)
            return LaurentPoly.monomial(k * exponent, value)
        if exponent < 0:
            raise SymbolSyntaxError("negative powers are only defined for monomials", self.text,
                                    token.position)
        result = LaurentPoly.one()
        try:
            while exponent:
                if exponent & 1:
                    result = result * base
                exponent >>= 1
                if exponent:
                    base = base * base
        except SymbolDomainError as error:
            raise SymbolSyntaxError("power overflows", self.text, token.position) from error
        return result

    def primary(self):
        token = self.current
        if token.kind == "number":
            self.advance()
            return LaurentPoly.constant(float(token.text))
        if token.kind == "imag":
            self.advance()
            return LaurentPoly.constant(complex(0, float(token.text)))
        if token.kind == "unit":
            self.advance()
            return LaurentPoly.constant(1j)
        if token.kind == "z":
            self.advance()
            return LaurentPoly.monomial(1)
        if token.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        what = "end of input" if token.kind == "end" else repr(token.text)
        raise SymbolSyntaxError(f"unexpected {what}", self.text, token.position)


def parse_symbol(text):
    """Expand an expression such as ``"(1+z)*(1-z^-2)"`` into a LaurentPoly."""
    return _Parser(text).parse()
