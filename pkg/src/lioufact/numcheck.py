"""Numeric end-to-end validation of a verified integrating factor.

The symbolic check in `verify` is the ground truth; this module closes the
loop numerically: it reconstructs the first integral I by quadrature of the
exact 1-form  omega = (R*M) dx - (R*N) dy  and confirms that I is constant
along numerically integrated trajectories of dx/dt = N, dy/dt = M.

Potentials are integrated over axis-parallel L-shaped paths, so only two
one-dimensional quadratures are ever needed and singularity screening
reduces to sampling |Q| and the relevant |v| along two segments.  Paths or
trajectories that approach a zero of the exponent denominator (or of a
factor carrying a negative or fractional power) are rejected outright:
clamping the exponential would silently mask verification failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad, solve_ivp

from .darboux import DOperator
from .poly import Poly2
from .search import IntegratingFactor

Point = tuple[float, float]


class SingularPoint(Exception):
    """Evaluation at a zero of Q, or of a factor whose power does not
    tolerate a zero base."""


class PathSingular(Exception):
    """An integration path passes too close to a singular point of R."""


class TrajectoryHitSingularity(Exception):
    """The trajectory approached a singular set or an equilibrium stall."""


@dataclass(frozen=True)
class TrajectoryCheck:
    base_point: Point
    sample_points: tuple[Point, ...]
    integral_values: tuple[float, ...]
    max_rel_deviation: float

    def to_json_dict(self) -> dict:
        return {
            "base_point": list(self.base_point),
            "sample_points": [list(p) for p in self.sample_points],
            "integral_values": list(self.integral_values),
            "max_rel_deviation": self.max_rel_deviation,
        }


def eval_R(factor: IntegratingFactor, x: float, y: float) -> float:
    """Evaluate R in double precision.

    Negative bases with fractional exponents use |v|^c (the real branch on
    each sign region); integer exponents keep their sign.  Overflow of the
    exponential is allowed to propagate: silently clamping it would defeat
    the purpose of the check.
    """
    exponent = 0.0
    if not factor.p.is_zero():
        q = factor.q().eval_float(x, y)
        if q == 0.0:
            raise SingularPoint(f"exponent denominator vanishes at ({x}, {y})")
        exponent = factor.p.eval_float(x, y) / q
    value = math.exp(exponent)
    for v, c in factor.s_factors:
        base = v.eval_float(x, y)
        if base == 0.0:
            if c < 0 or c.denominator != 1:
                raise SingularPoint(f"factor {v} vanishes at ({x}, {y}) with exponent {c}")
            value = 0.0
            continue
        if c.denominator == 1:
            value *= base ** int(c)
        else:
            value *= abs(base) ** float(c)
    return value


def _singular_polys(factor: IntegratingFactor) -> list[Poly2]:
    """Polynomials whose zeros make R singular: the exponent denominator's
    factors, plus any power factor with a negative or fractional exponent."""
    out = [v for v, _m in factor.q_factors] if not factor.p.is_zero() else []
    for v, c in factor.s_factors:
        if c < 0 or c.denominator != 1:
            out.append(v)
    return out


def _screen_segment(polys: list[Poly2], p0: Point, p1: Point, *, samples: int, tol: float):
    for k in range(samples + 1):
        t = k / samples
        x = p0[0] + t * (p1[0] - p0[0])
        y = p0[1] + t * (p1[1] - p0[1])
        for poly in polys:
            if abs(poly.eval_float(x, y)) <= tol:
                raise PathSingular(
                    f"path through ({x:.6g}, {y:.6g}) passes within tolerance of a zero of {poly}"
                )


def potential(
    factor: IntegratingFactor,
    op: DOperator,
    base: Point,
    target: Point,
    *,
    abs_tol: float = 1e-10,
    screen_samples: int = 64,
    screen_tol: float = 1e-8,
) -> float:
    """I(target) - I(base) by quadrature along the L-shaped path
    (x0,y0) -> (x1,y0) -> (x1,y1), using dI/dx = R*M and dI/dy = -R*N."""
    x0, y0 = base
    x1, y1 = target
    guards = _singular_polys(factor)
    _screen_segment(guards, (x0, y0), (x1, y0), samples=screen_samples, tol=screen_tol)
    _screen_segment(guards, (x1, y0), (x1, y1), samples=screen_samples, tol=screen_tol)

    total = 0.0
    if x1 != x0:
        fx = lambda t: eval_R(factor, t, y0) * op.m.eval_float(t, y0)
        val, _err = quad(fx, x0, x1, epsabs=abs_tol, epsrel=1e-12, limit=200)
        total += val
    if y1 != y0:
        fy = lambda s: eval_R(factor, x1, s) * op.n.eval_float(x1, s)
        val, _err = quad(fy, y0, y1, epsabs=abs_tol, epsrel=1e-12, limit=200)
        total -= val
    return total


_BASE_LATTICE = [Fraction(k, 2) for k in (-4, -3, -2, -1, 1, 2, 3, 4)]


def default_base_point(op: DOperator, factor: IntegratingFactor, *, min_abs: float = 1e-3) -> Point:
    """Scan the lattice {+-1/2, +-1, +-3/2, +-2}^2 for a point where |N|,
    |Q| and every power factor stay clear of zero, preferring the smallest
    |x|+|y| (ties broken by coordinates)."""
    relevant = [v for v, _ in factor.q_factors] + [v for v, _ in factor.s_factors]
    q = factor.q()
    best = None
    for x0 in _BASE_LATTICE:
        for y0 in _BASE_LATTICE:
            checks = [op.n.eval(x0, y0), q.eval(x0, y0)]
            checks.extend(v.eval(x0, y0) for v in relevant)
            if all(abs(c) > min_abs for c in checks):
                key = (abs(x0) + abs(y0), x0, y0)
                if best is None or key < best[0]:
                    best = (key, (float(x0), float(y0)))
    if best is None:
        raise SingularPoint("no lattice point avoids the singular sets; pass a base point explicitly")
    return best[1]


def trajectory_constancy(
    op: DOperator,
    factor: IntegratingFactor,
    base: Point,
    t_span: float,
    n_samples: int,
    *,
    rtol: float = 1e-10,
    guard_tol: float = 1e-6,
    quad_abs_tol: float = 1e-10,
) -> TrajectoryCheck:
    """Integrate dx/dt = N, dy/dt = M from `base` and report how far the
    reconstructed first integral drifts across `n_samples` points.

    Raises :class:`TrajectoryHitSingularity` when the trajectory approaches
    a zero of the exponent denominator / power factors or stalls at an
    equilibrium (|N| + |M| ~ 0), where the first integral's level structure
    degenerates.
    """
    if n_samples < 1:
        raise ValueError("need at least one sample")
    guards = _singular_polys(factor)

    def initial_ok(x: float, y: float) -> bool:
        return all(abs(g.eval_float(x, y)) > guard_tol for g in guards)

    if not initial_ok(*base):
        raise TrajectoryHitSingularity(f"base point {base} is singular for the factor")

    if t_span == 0.0:
        points = tuple(base for _ in range(n_samples))
        values = tuple(0.0 for _ in range(n_samples))
        return TrajectoryCheck(base, points, values, 0.0)

    def rhs(_t, z):
        return [op.n.eval_float(z[0], z[1]), op.m.eval_float(z[0], z[1])]

    events = []
    for g in guards:
        def make_event(poly):
            def event(_t, z):
                return abs(poly.eval_float(z[0], z[1])) - guard_tol
            event.terminal = True
            return event
        events.append(make_event(g))

    def stall(_t, z):
        return abs(op.n.eval_float(z[0], z[1])) + abs(op.m.eval_float(z[0], z[1])) - 1e-9
    stall.terminal = True
    events.append(stall)

    t_eval = np.linspace(0.0, t_span, n_samples)
    sol = solve_ivp(
        rhs, (0.0, t_span), list(base), method="RK45",
        rtol=rtol, atol=1e-12, t_eval=t_eval, events=events, dense_output=False,
    )
    if not sol.success and sol.status != 1:
        raise TrajectoryHitSingularity(f"trajectory integration failed: {sol.message}")
    if sol.status == 1:
        raise TrajectoryHitSingularity("trajectory approached a singular set or equilibrium")

    points = tuple((float(px), float(py)) for px, py in zip(sol.y[0], sol.y[1]))
    values = tuple(potential(factor, op, base, pt, abs_tol=quad_abs_tol) for pt in points)
    i0 = values[0]
    max_dev = max(abs(v - i0) for v in values) / max(1.0, abs(i0))
    return TrajectoryCheck(base, points, values, max_dev)
