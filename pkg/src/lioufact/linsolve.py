"""Exact linear algebra over Q.

Solves the (typically under- or over-determined) linear systems produced by
the integrating-factor search.  Elimination is fraction-free (Bareiss) on
integer-scaled rows to bound coefficient growth; back-substitution happens
in plain rationals.  Pivoting is deterministic: columns are processed left
to right and the first row with a nonzero entry is chosen, so the set of
free unknowns (and therefore the canonical solution) never depends on
anything but the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

_ZERO = Fraction(0)


class InconsistentSystem(Exception):
    """The system has no solution (the current search candidate fails)."""


@dataclass(frozen=True)
class LinSystem:
    """matrix * unknowns = rhs with named unknowns."""

    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    unknowns: tuple[str, ...]

    def __post_init__(self):
        if len(self.matrix) != len(self.rhs):
            raise ValueError("row count of matrix and rhs differ")
        for row in self.matrix:
            if len(row) != len(self.unknowns):
                raise ValueError("row length does not match unknown count")

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.unknowns)


@dataclass(frozen=True)
class LinSolution:
    """Exact solution: particular vector plus nullspace basis.

    The particular solution is computed with every free unknown set to 0;
    each nullspace basis vector turns on exactly one free unknown (unit
    magnitude) and is sign-normalized so its first nonzero entry is
    positive.
    """

    particular: tuple[Fraction, ...]
    nullspace: tuple[tuple[Fraction, ...], ...]
    free_unknowns: tuple[str, ...]
    pivot_columns: tuple[int, ...] = field(default=())

    @property
    def rank(self) -> int:
        return len(self.pivot_columns)


def _integer_rows(system: LinSystem) -> list[list[int]]:
    """Augmented rows [a_1 .. a_n | b], scaled to integers per row."""
    rows = []
    for coeffs, b in zip(system.matrix, system.rhs):
        entries = list(coeffs) + [b]
        scale = 1
        for e in entries:
            scale = scale * e.denominator // math.gcd(scale, e.denominator)
        rows.append([int(e * scale) for e in entries])
    return rows


def solve_linear(system: LinSystem) -> LinSolution:
    """Solve exactly, or raise :class:`InconsistentSystem`.

    Returns the particular solution with free unknowns at 0 together with
    the canonical nullspace basis (one vector per free unknown).
    """
    n = system.cols
    rows = _integer_rows(system)
    m = len(rows)

    pivot_cols: list[int] = []
    prev_pivot = 1
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, m):
            if all(v == 0 for v in rows[i]):
                continue
            factor = rows[i][c]
            for j in range(n + 1):
                rows[i][j] = (rows[i][j] * piv - factor * rows[r][j]) // prev_pivot
        prev_pivot = piv
        pivot_cols.append(c)
        r += 1
        if r == m:
            break

    for i in range(r, m):
        if any(v != 0 for v in rows[i][:n]):
            # Bareiss leaves untouched rows only when they are all zero in
            # remaining columns; guard anyway.
            raise AssertionError("elimination left a nonzero row below the rank")
        if rows[i][n] != 0:
            raise InconsistentSystem("no exact solution exists")

    free_cols = [c for c in range(n) if c not in pivot_cols]

    def back_substitute(rhs_col: Sequence[int], free_values: dict[int, Fraction]) -> list[Fraction]:
        sol = [_ZERO] * n
        for c, v in free_values.items():
            sol[c] = v
        for k in range(len(pivot_cols) - 1, -1, -1):
            c = pivot_cols[k]
            acc = Fraction(rhs_col[k])
            for j in range(c + 1, n):
                if rows[k][j]:
                    acc -= Fraction(rows[k][j]) * sol[j]
            sol[c] = acc / Fraction(rows[k][c])
        return sol

    particular = back_substitute([rows[k][n] for k in range(len(pivot_cols))], {c: _ZERO for c in free_cols})

    basis = []
    for f in free_cols:
        values = {c: (Fraction(1) if c == f else _ZERO) for c in free_cols}
        vec = back_substitute([0] * len(pivot_cols), values)
        first = next((v for v in vec if v), _ZERO)
        if first < 0:
            vec = [-v for v in vec]
        basis.append(tuple(vec))

    return LinSolution(
        particular=tuple(particular),
        nullspace=tuple(basis),
        free_unknowns=tuple(system.unknowns[c] for c in free_cols),
        pivot_columns=tuple(pivot_cols),
    )


def zero_free_vars(solution: LinSolution) -> tuple[Fraction, ...]:
    """The canonical solution vector: every free unknown exactly 0.

    `solve_linear` already builds its particular solution this way; this
    accessor is the single place that choice is made explicit.
    """
    return solution.particular


def residual(system: LinSystem, vector: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """matrix*vector - rhs, exactly (used by tests and verification)."""
    out = []
    for coeffs, b in zip(system.matrix, system.rhs):
        acc = -b
        for a, v in zip(coeffs, vector):
            acc += a * v
        out.append(acc)
    return tuple(out)
