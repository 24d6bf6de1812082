"""Shared fixtures: the worked example operators and oracle helpers.

Oracles deliberately go through sympy (an independent implementation)
wherever a second route is required, so no test ever checks the code
against itself.
"""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy as sp

from lioufact import build_operator
from lioufact.poly import Poly2, X, Y

SX, SY = sp.symbols("x y")


def to_sympy(p: Poly2):
    return sp.expand(sum(sp.Rational(c) * SX**i * SY**j for (i, j), c in p.terms.items()))


def from_sympy(expr) -> Poly2:
    poly = sp.Poly(sp.expand(expr), SX, SY)
    terms = {}
    for (i, j), c in poly.terms():
        q = sp.Rational(c)
        terms[(i, j)] = Fraction(int(q.p), int(q.q))
    return Poly2(terms)


def normalize_row(coeffs, rhs):
    """Scale a linear row to coprime integers with positive first nonzero;
    the canonical form used for system comparisons."""
    entries = [Fraction(e) for e in coeffs] + [Fraction(rhs)]
    num, den = 0, 1
    for e in entries:
        num = math.gcd(num, abs(e.numerator))
        den = den * e.denominator // math.gcd(den, e.denominator)
    if num == 0:
        return tuple(entries[:-1]), entries[-1]
    scale = Fraction(den, num)
    if next(e for e in entries if e) < 0:
        scale = -scale
    return tuple(e * scale for e in entries[:-1]), entries[-1] * scale


def row_set(system):
    return {normalize_row(row, rhs) for row, rhs in zip(system.matrix, system.rhs)}


# -- the worked examples ----------------------------------------------------


@pytest.fixture
def op_ex1():
    """dy/dx = (x+1)y / (x - xy - y^2 + x^2)"""
    return build_operator((X + 1) * Y, X - X * Y - Y**2 + X**2)


@pytest.fixture
def op_kamke():
    """(x+1)^2 y' + (x+1)y^3 + y^2 = 0 with unit parameters."""
    return build_operator(-((X + 1) * Y**3 + Y**2), (X + 1) ** 2)


@pytest.fixture
def op_simple():
    """dy/dx = y(1+x) / (x + x^2 - y^2)"""
    return build_operator(Y * (1 + X), X + X**2 - Y**2)


@pytest.fixture
def op_twofold():
    """dy/dx = (-1+x+y+3y^2) / (4x+2y+2xy+2y^2-2y^3)"""
    return build_operator(-1 + X + Y + 3 * Y**2, 4 * X + 2 * Y + 2 * X * Y + 2 * Y**2 - 2 * Y**3)


@pytest.fixture
def op_liouville():
    """dy/dx = -y^2(-2y+1-2x+x^2 y) / (x^2(-2x+1-2y+x y^2))"""
    return build_operator(-(Y**2) * (-2 * Y + 1 - 2 * X + X**2 * Y), X**2 * (-2 * X + 1 - 2 * Y + X * Y**2))


@pytest.fixture
def op_degree5():
    """The degree-5 field solved with degree-1 Darboux polynomials only."""
    m = (
        -14 * X - 14 * Y - 28 * X**3 + 14 * Y**3 + 40 * X**4 - 58 * X**5
        - 19 * X**2 * Y + 30 * X**3 * Y - 23 * X**2 * Y**2 + 26 * X**3 * Y**2
        + 14 * X * Y**3 + 21 * X**4 * Y
    )
    n = X * (
        7 * X**2 + 7 * X**3 + 7 * X + 7 * Y + 7 * X * Y + 7 * Y**2
        + 13 * X**2 * Y + 7 * X * Y**2 + 13 * X**3 * Y + 7 * X**4
    )
    return build_operator(m, n)
