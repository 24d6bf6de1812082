"""Parsing of textual rational first-order ODEs.

Accepted input, the package's only textual ingestion format:

    dy/dx = <expr>       the ODE form
    <expr> ; <expr>      the dynamical-system form (M ; N), meaning
                         dx/dt = N, dy/dt = M, i.e. dy/dx = M/N

where <expr> is built from the variables x and y, integer literals,
``+ - * / ^`` and parentheses.  ``/`` is exact rational division (so 1/2
is the rational one-half), and ``^`` takes a nonnegative integer literal
exponent only: that restriction is what keeps every input inside the
rational-ODE class by construction.

The result is normalized to a pair of integer-coefficient polynomials
(M, N) with gcd 1 (content included) and the leading coefficient of N
positive, so rendering is canonical and parse/render round-trips.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .poly import ONE, Poly2, RationalFn, X, Y, poly_gcd


class OdeParseError(Exception):
    """Base parse failure; `position` indexes into the offending token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class OdeSyntaxError(OdeParseError):
    pass


class UnsupportedFunction(OdeParseError):
    """A function symbol (sin, exp, ...) appeared; only rational ODEs are handled."""


class NonPolynomialPower(OdeParseError):
    """Exponent is not a nonnegative integer literal."""


class UnsupportedSymbol(OdeParseError):
    """A symbolic parameter appeared; coefficients must be numeric."""


@dataclass(frozen=True)
class OdeInput:
    """A parsed ODE dy/dx = m/n in canonical form."""

    source_text: str
    m: Poly2
    n: Poly2


_TOKEN_RE = re.compile(
    r"(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^();=])"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # int | ident | op | end
    text: str
    pos: int


def _tokenize(text: str, offset: int = 0) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise OdeSyntaxError(f"unexpected character {text[pos]!r}", offset + pos)
        kind = match.lastgroup
        tokens.append(_Token(kind, match.group(kind), offset + pos))
        pos = match.end()
    tokens.append(_Token("end", "", offset + len(text)))
    return tokens


class _Parser:
    """Precedence-climbing parser evaluating directly into RationalFn."""

    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, text: str) -> _Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise OdeSyntaxError(f"expected {text!r}", tok.pos)
        return self.advance()

    def parse_expr(self, min_prec: int = 0) -> RationalFn:
        left = self.parse_unary()
        while True:
            tok = self.peek()
            if tok.kind != "op" or tok.text not in ("+", "-", "*", "/"):
                return left
            prec = 0 if tok.text in "+-" else 1
            if prec < min_prec:
                return left
            self.advance()
            right = self.parse_expr(prec + 1)
            if tok.text == "+":
                left = left + right
            elif tok.text == "-":
                left = left - right
            elif tok.text == "*":
                left = left * right
            else:
                if right.is_zero():
                    raise OdeSyntaxError("division by zero", tok.pos)
                left = left / right

    def parse_unary(self) -> RationalFn:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return -self.parse_unary()
        if tok.kind == "op" and tok.text == "+":
            self.advance()
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> RationalFn:
        base = self.parse_atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            exponent = self.parse_exponent()
            return _rational_pow(base, exponent)
        return base

    def parse_exponent(self) -> int:
        # a nonnegative integer literal, optionally in parentheses;
        # a minus sign is recognized so the error can name the real problem
        tok = self.peek()
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            value = self.parse_exponent()
            self.expect_op(")")
            return value
        if tok.kind == "op" and tok.text == "-":
            raise NonPolynomialPower("negative exponents are not allowed", tok.pos)
        if tok.kind == "int":
            self.advance()
            value = int(tok.text)
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "^":  # 2^3 in exponent position: right-associative
                self.advance()
                value = value ** self.parse_exponent()
            return value
        raise NonPolynomialPower("exponent must be a nonnegative integer literal", tok.pos)

    def parse_atom(self) -> RationalFn:
        tok = self.advance()
        if tok.kind == "int":
            return RationalFn(Poly2.constant(int(tok.text)), ONE)
        if tok.kind == "ident":
            if self.peek().kind == "op" and self.peek().text == "(":
                raise UnsupportedFunction(
                    f"function {tok.text!r} is not supported; only rational expressions in x and y are accepted",
                    tok.pos,
                )
            if tok.text == "x":
                return RationalFn(X, ONE)
            if tok.text == "y":
                return RationalFn(Y, ONE)
            raise UnsupportedSymbol(
                f"symbolic parameter {tok.text!r} is not supported; substitute an explicit rational value",
                tok.pos,
            )
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise OdeSyntaxError(f"unexpected token {tok.text!r}" if tok.text else "unexpected end of input", tok.pos)


def _rational_pow(base: RationalFn, exponent: int) -> RationalFn:
    return RationalFn(base.num**exponent, base.den**exponent)


_LHS_RE = re.compile(r"^\s*dy\s*/\s*dx\s*$")


def parse_ode(text: str) -> OdeInput:
    """Parse into canonical (M, N); see the module docstring for the grammar."""
    semicolon = text.find(";")
    if semicolon >= 0:
        m_poly = _parse_polynomial(text[:semicolon], 0)
        n_poly = _parse_polynomial(text[semicolon + 1:], semicolon + 1)
        if n_poly.is_zero():
            raise OdeSyntaxError("the second polynomial (N) must be nonzero", semicolon + 1)
        return _canonicalize(text, RationalFn(m_poly, ONE) / RationalFn(n_poly, ONE))

    eq = text.find("=")
    if eq < 0:
        raise OdeSyntaxError("expected 'dy/dx = <expression>' or '<M> ; <N>'", 0)
    lhs = text[:eq]
    if not _LHS_RE.match(lhs):
        raise OdeSyntaxError("left-hand side must be dy/dx", 0)
    parser = _Parser(_tokenize(text[eq + 1:], eq + 1))
    value = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise OdeSyntaxError(f"unexpected trailing input {trailing.text!r}", trailing.pos)
    return _canonicalize(text, value)


def _parse_polynomial(fragment: str, offset: int) -> Poly2:
    parser = _Parser(_tokenize(fragment, offset))
    value = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise OdeSyntaxError(f"unexpected trailing input {trailing.text!r}", trailing.pos)
    if not value.den.is_constant():
        raise OdeSyntaxError("expected a polynomial (no division by x or y)", offset)
    return value.num * (1 / value.den.constant_value())


def _canonicalize(source: str, value: RationalFn) -> OdeInput:
    """Clear to jointly-primitive integer coefficients with N's leading
    coefficient positive; the rational function value is preserved."""
    num, den = value.num, value.den  # den already primitive, positive leading coeff
    if num.is_zero():
        return OdeInput(source_text=source, m=Poly2.zero(), n=ONE)
    scale, num_prim = num.primitive_positive()
    # value = (scale * num_prim) / den with scale = p/q reduced: multiply
    # both sides by q to clear the fraction, keeping gcd(M, N) trivial
    p, q = scale.numerator, scale.denominator
    return OdeInput(source_text=source, m=num_prim * p, n=den * q)


def render_ode(ode: OdeInput) -> str:
    """Canonical text of the parsed ODE; stable across runs."""
    if ode.n == 1:
        return f"dy/dx = {ode.m.render()}"
    return f"dy/dx = ({ode.m.render()})/({ode.n.render()})"
