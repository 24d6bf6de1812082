"""Exact linear solving: correctness against a naive eliminator and the
worked example's hand-solved system."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lioufact.linsolve import (
    InconsistentSystem,
    LinSolution,
    LinSystem,
    residual,
    solve_linear,
    zero_free_vars,
)

F = Fraction


def make_system(rows, rhs, names=None):
    rows = tuple(tuple(F(v) for v in r) for r in rows)
    rhs = tuple(F(v) for v in rhs)
    if names is None:
        names = tuple(f"x{i+1}" for i in range(len(rows[0]) if rows else 0))
    return LinSystem(matrix=rows, rhs=rhs, unknowns=tuple(names))


def naive_solve(system: LinSystem):
    """Plain rational Gaussian elimination; the cross-oracle for Bareiss.

    Kept deliberately independent: fractions all the way, no fraction-free
    division step.
    """
    m = [list(row) + [b] for row, b in zip(system.matrix, system.rhs)]
    n = system.cols
    piv_cols = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pivot = m[r][c]
        m[r] = [v / pivot for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][n] != 0:
            raise InconsistentSystem("naive: inconsistent")
    free = [c for c in range(n) if c not in piv_cols]
    particular = [F(0)] * n
    for k, c in enumerate(piv_cols):
        particular[c] = m[k][n]
    basis = []
    for fcol in free:
        vec = [F(0)] * n
        vec[fcol] = F(1)
        for k, c in enumerate(piv_cols):
            vec[c] = -m[k][fcol]
        first = next((v for v in vec if v), F(0))
        if first < 0:
            vec = [-v for v in vec]
        basis.append(tuple(vec))
    return tuple(particular), tuple(basis), tuple(system.unknowns[c] for c in free)


def test_worked_example_system():
    # n1+n2+2=0, -n2-a2-1=0, -a1=0, n1+n2+3-a2=0 over (a1,a2,a3,n1,n2)
    sys1 = make_system(
        [
            [0, 0, 0, 1, 1],
            [0, -1, 0, 0, -1],
            [-1, 0, 0, 0, 0],
            [0, -1, 0, 1, 1],
        ],
        [-2, 1, 0, -3],
        names=["a1", "a2", "a3", "n1", "n2"],
    )
    sol = solve_linear(sys1)
    assert zero_free_vars(sol) == (F(0), F(1), F(0), F(0), F(-2))
    assert sol.free_unknowns == ("a3",)
    assert all(v == 0 for v in residual(sys1, sol.particular))


def test_identity_and_single_equation():
    ident = make_system([[1, 0], [0, 1]], [0, 0])
    sol = solve_linear(ident)
    assert sol.particular == (F(0), F(0))
    assert sol.nullspace == ()

    single = make_system([[1, 1]], [0])
    sol = solve_linear(single)
    assert sol.particular == (F(0), F(0))
    assert sol.nullspace == ((F(1), F(-1)),)


def test_zero_system_and_empty():
    zero = make_system([[0, 0], [0, 0]], [0, 0])
    sol = solve_linear(zero)
    assert zero_free_vars(sol) == (F(0), F(0))
    assert len(sol.nullspace) == 2

    empty = LinSystem(matrix=(), rhs=(), unknowns=("u",))
    sol = solve_linear(empty)
    assert sol.particular == (F(0),)
    assert sol.nullspace == ((F(1),),)


def test_inconsistent():
    bad = make_system([[1, 1], [1, 1]], [0, 1])
    with pytest.raises(InconsistentSystem):
        solve_linear(bad)
    with pytest.raises(InconsistentSystem):
        solve_linear(make_system([[0]], [5]))


entries = st.fractions(min_value=-5, max_value=5, max_denominator=3)


@given(
    st.integers(1, 5), st.integers(1, 5),
    st.data(),
)
@settings(max_examples=120)
def test_bareiss_matches_naive_oracle(nrows, ncols, data):
    rows = [[data.draw(entries) for _ in range(ncols)] for _ in range(nrows)]
    rhs = [data.draw(entries) for _ in range(nrows)]
    system = make_system(rows, rhs)
    try:
        mine = solve_linear(system)
        failed = False
    except InconsistentSystem:
        failed = True
    try:
        expected = naive_solve(system)
        naive_failed = False
    except InconsistentSystem:
        naive_failed = True
    assert failed == naive_failed
    if not failed:
        assert mine.particular == expected[0]
        assert mine.nullspace == expected[1]
        assert mine.free_unknowns == expected[2]
        # exact residuals and rank-nullity
        assert all(v == 0 for v in residual(system, mine.particular))
        for vec in mine.nullspace:
            combined = tuple(p + n for p, n in zip(mine.particular, vec))
            assert all(
                sum(a * v for a, v in zip(row, combined)) == b
                for row, b in zip(system.matrix, system.rhs)
            )
        assert mine.rank + len(mine.nullspace) == system.cols


def test_rank_nullity_consistent_random():
    rng = random.Random(7)
    for _ in range(30):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[F(rng.randint(-4, 4)) for _ in range(nc)] for _ in range(nr)]
        solution = [F(rng.randint(-3, 3)) for _ in range(nc)]
        rhs = [sum(a * s for a, s in zip(row, solution)) for row in rows]
        sol = solve_linear(make_system(rows, rhs))
        assert sol.rank + len(sol.nullspace) == nc
        assert all(v == 0 for v in residual(make_system(rows, rhs), sol.particular))
