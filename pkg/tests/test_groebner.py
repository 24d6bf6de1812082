"""The small elimination engine behind the Darboux search."""

from fractions import Fraction

import pytest

from lioufact.groebner import (
    MPoly,
    groebner_basis,
    rational_roots,
    reduce_poly,
    solve_rational_system,
)

F = Fraction


def mk(n, *terms):
    return MPoly(n, {tuple(e): F(c) for *e, c in terms})


def test_mpoly_arithmetic():
    u0 = MPoly.var(2, 0)
    u1 = MPoly.var(2, 1)
    p = u0 * u0 - u1
    assert p.substitute(0, F(2)).substitute(1, F(4)).is_zero()
    assert (p + p.__neg__()).is_zero()


def test_rational_roots():
    # (t - 1/2)(t + 3) * t = t^3 + (5/2)t^2 - (3/2)t
    assert rational_roots([F(0), F(-3, 2), F(5, 2), F(1)]) == [F(-3), F(0), F(1, 2)]
    # t^2 + 1 has no rational roots
    assert rational_roots([F(1), F(0), F(1)]) == []
    with pytest.raises(ValueError):
        rational_roots([F(0)])


def test_groebner_simple_elimination():
    # u0 - u1 = 0, u1^2 - 1 = 0  ->  basis contains a univariate in u1
    u0 = MPoly.var(2, 0)
    u1 = MPoly.var(2, 1)
    one = MPoly.const(2, 1)
    basis = groebner_basis([u0 - u1, u1 * u1 - one])
    univ = [g for g in basis if g.variables() <= {1}]
    assert univ, basis
    sols, exhaustive = solve_rational_system([u0 - u1, u1 * u1 - one], 2)
    assert exhaustive
    assert sorted(sols) == [(F(-1), F(-1)), (F(1), F(1))]


def test_groebner_inconsistent():
    one = MPoly.const(1, 1)
    u0 = MPoly.var(1, 0)
    sols, exhaustive = solve_rational_system([u0, u0 - one], 1)
    assert sols == [] and exhaustive


def test_reduce_poly():
    u0 = MPoly.var(2, 0)
    u1 = MPoly.var(2, 1)
    r = reduce_poly(u0 * u0 * u1, [u0 * u0 - MPoly.const(2, 1)])
    assert r == u1


def test_free_variable_family():
    # single equation u0*u1 = 0 in two unknowns: positive-dimensional
    u0 = MPoly.var(2, 0)
    u1 = MPoly.var(2, 1)
    sols, exhaustive = solve_rational_system([u0 * u1], 2)
    assert not exhaustive
    assert (F(0), F(0)) in sols and (F(0), F(1)) in sols


def test_irrational_solutions_dropped():
    # u0^2 = 2 has no rational points
    u0 = MPoly.var(1, 0)
    sols, exhaustive = solve_rational_system([u0 * u0 - MPoly.const(1, 2)], 1)
    assert sols == [] and exhaustive
