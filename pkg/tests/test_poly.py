"""Polynomial core: arithmetic, gcd, division, reduction, rendering."""

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from lioufact.poly import (
    ONE,
    NotDivisible,
    Poly2,
    RationalFn,
    X,
    Y,
    divexact,
    poly_gcd,
    ratfn_reduce,
)

from conftest import SX, SY, from_sympy, to_sympy


# -- strategies -------------------------------------------------------------

coeffs = st.fractions(
    min_value=-6, max_value=6, max_denominator=4
)


@st.composite
def polys(draw, max_deg=3, max_terms=6):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        i = draw(st.integers(0, max_deg))
        j = draw(st.integers(0, max_deg - i if max_deg >= i else 0))
        terms[(i, j)] = draw(coeffs)
    return Poly2(terms)


nonzero_polys = polys().filter(lambda p: not p.is_zero())


# -- arithmetic examples ------------------------------------------------------


def test_add_basic():
    assert (X + Y) + (X - Y) == 2 * X
    p = 3 * X**2 * Y - Y + 7
    assert p + Poly2.zero() == p
    assert (X**2 - Y**2) + Y**2 == X**2


def test_mul_basic():
    assert (X + Y) * (X - Y) == X**2 - Y**2
    p = 5 * X * Y**3 - 2
    assert p * ONE == p


def test_mul_hand_expansion_matches_operator_image():
    # (x+y)*(1+x-y) expanded by hand; this is D[x+y] for the first worked ODE
    assert (X + Y) * (1 + X - Y) == X + X**2 + Y - Y**2


def test_diff():
    assert (X**2 * Y).diff("x") == 2 * X * Y
    assert (X**2).diff("y") == Poly2.zero()
    assert (X - X * Y - Y**2 + X**2).diff("x") == 1 - Y + 2 * X


def test_eval():
    assert (X + Y).eval(1, 2) == 3
    assert Poly2.zero().eval(17, -5) == 0
    # (1,1) is a zero of the first worked example's denominator
    assert (X - X * Y - Y**2 + X**2).eval(1, 1) == 0


def test_pow_and_bool():
    assert (X + 1) ** 0 == ONE
    assert (X + 1) ** 3 == X**3 + 3 * X**2 + 3 * X + 1
    assert not Poly2.zero()
    assert X


# -- gcd / exact division ----------------------------------------------------


def test_gcd_basic():
    assert poly_gcd(X**2 - Y**2, X + Y) == X + Y
    assert poly_gcd(X, Y) == ONE


def test_gcd_worked_example_coprime():
    m = (X + 1) * Y
    n = X - X * Y - Y**2 + X**2
    assert poly_gcd(m, n) == ONE
    # independent oracle
    assert sp.gcd(to_sympy(m), to_sympy(n), SX, SY) == 1


def test_divexact():
    assert divexact(X**2 - Y**2, X + Y) == X - Y
    with pytest.raises(NotDivisible):
        divexact(X, Y)


def test_divexact_darboux_quotient():
    # D[x+y^2]/(x+y^2) for dy/dx=(-1+x+y+3y^2)/(4x+2y+2xy+2y^2-2y^3)
    n = 4 * X + 2 * Y + 2 * X * Y + 2 * Y**2 - 2 * Y**3
    m = -1 + X + Y + 3 * Y**2
    v = X + Y**2
    image = n * v.diff("x") + m * v.diff("y")
    assert divexact(image, v) == 4 + 4 * Y


def test_ratfn_reduce():
    assert ratfn_reduce(X**2 - Y**2, X + Y) == ratfn_reduce(X - Y, ONE)
    half = ratfn_reduce(X, 2 * X)
    assert half.num == Poly2.constant(Fraction(1, 2)) and half.den == ONE
    r = ratfn_reduce((X + 1) * Y, X - X * Y - Y**2 + X**2)
    assert r.num == (X + 1) * Y and r.den == X - X * Y - Y**2 + X**2
    with pytest.raises(ZeroDivisionError):
        ratfn_reduce(X, Poly2.zero())


def test_render():
    assert (X**2 - X * Y + 3).render() == "x^2 - x*y + 3"
    assert Poly2.zero().render() == "0"
    assert (Poly2.constant(Fraction(1, 2)) * X**2).render() == "1/2*x^2"
    assert (-(Y**2) + X).render() == "-y^2 + x"
    assert (X * Y).render() == "x*y"


# -- algebraic laws ------------------------------------------------------------


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@given(polys(), polys())
def test_diff_is_derivation(p, q):
    for var in ("x", "y"):
        assert (p * q).diff(var) == p * q.diff(var) + q * p.diff(var)


@given(polys(), nonzero_polys)
def test_mul_div_roundtrip(p, q):
    assert divexact(p * q, q) == p


@given(nonzero_polys, nonzero_polys)
@settings(max_examples=60)
def test_gcd_divides_and_matches_sympy(p, q):
    g = poly_gcd(p, q)
    assert divexact(p, g) * g == p
    assert divexact(q, g) * g == q
    assert g.degree() <= min(p.degree(), q.degree())
    expected = sp.gcd(to_sympy(p), to_sympy(q), SX, SY)
    assert g == from_sympy(expected).normalized()


@given(nonzero_polys, nonzero_polys)
@settings(max_examples=40)
def test_ratfn_reduce_idempotent_and_value(p, q):
    r = ratfn_reduce(p, q)
    again = ratfn_reduce(r.num, r.den)
    assert again == r
    assert to_sympy(r.num) * to_sympy(q) - to_sympy(r.den) * to_sympy(p) == 0 or sp.simplify(
        to_sympy(r.num) * to_sympy(q) - to_sympy(r.den) * to_sympy(p)
    ) == 0


@given(polys())
def test_normalized_primitive(p):
    if p.is_zero():
        return
    scale, prim = p.primitive_positive()
    assert scale * prim == p
    assert prim.content() == 1
    assert prim.lex_leading_coeff() > 0
