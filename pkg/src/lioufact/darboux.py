"""The derivation D = N*d/dx + M*d/dy and its Darboux polynomials.

A Darboux polynomial (eigenpolynomial) of D is a non-constant v with
D[v] = lambda*v for a polynomial cofactor lambda; its zero set is an
invariant algebraic curve of the planar system dx/dt = N, dy/dt = M.
These are the building blocks of every Liouvillian integrating factor,
so the search below has to be *complete* up to the requested degree.

Search method: undetermined coefficients.  For each candidate leading
monomial mu of total degree d we write v = mu + sum of unknown-coefficient
lower terms, compute D[v] with coefficients in Q[u], divide by the monic v
(the quotient is the cofactor, the remainder must vanish), and solve the
resulting polynomial system in the unknowns exactly for all its rational
points.  Pinning the leading coefficient to 1 removes the scaling gauge.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .groebner import MPoly, solve_rational_system
from .poly import Monomial, NotDivisible, Poly2, divexact, grlex_key, poly_gcd


class ZeroDenominator(ValueError):
    """The x-coefficient polynomial of the operator is zero."""


class NotDarboux(Exception):
    """v does not divide D[v]."""


class DegreeTooLarge(ValueError):
    """Requested Darboux degree exceeds the configured safety cap."""


class NonExhaustiveFamilyWarning(UserWarning):
    """A one-parameter family of Darboux polynomials was found; only the
    representatives with parameter values 0 and 1 are reported."""


class SearchTimeout(Exception):
    """Cooperative deadline exceeded; carries whatever was found so far."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class DOperator:
    """D = n*d/dx + m*d/dy, stored with gcd(m, n) = 1 and a canonical
    joint scale (integer coefficients, joint content 1, n's leading
    coefficient positive)."""

    n: Poly2
    m: Poly2

    def apply(self, f: Poly2) -> Poly2:
        return self.n * f.diff("x") + self.m * f.diff("y")

    def divergence(self) -> Poly2:
        """d(n)/dx + d(m)/dy, the negated right side of the integrating
        factor identity D[R]/R = -(div)."""
        return self.n.diff("x") + self.m.diff("y")

    def max_degree(self) -> int:
        return max(self.m.degree(), self.n.degree())

    def render(self) -> str:
        return f"w -> ({self.n.render()})*(d/dx w) + ({self.m.render()})*(d/dy w)"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class DarbouxPair:
    """A Darboux polynomial with its cofactor: apply(v) = cofactor * v."""

    v: Poly2
    cofactor: Poly2


def build_operator(m: Poly2, n: Poly2) -> DOperator:
    """Canonical operator for dy/dx = m/n.

    The common polynomial factor of (m, n) is divided out and the pair is
    scaled to joint-primitive integer coefficients with the leading
    coefficient of n positive; this is the form reported back to the user.
    """
    if n.is_zero():
        raise ZeroDenominator("the coefficient of d/dx must be nonzero")
    if not m.is_zero():
        g = poly_gcd(m, n)
        if g.degree() > 0:
            m, n = divexact(m, g), divexact(n, g)
    cm, cn = m.content(), n.content()
    joint = cn if m.is_zero() else _frac_gcd(cm, cn)
    if n.lex_leading_coeff() < 0:
        joint = -joint
    return DOperator(n=n * (1 / joint), m=m * (1 / joint))


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    """gcd of two positive rationals: largest c with a/c and b/c integral."""
    return Fraction(
        math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )


def cofactor_of(op: DOperator, v: Poly2) -> Poly2:
    """The cofactor of v, or raise :class:`NotDarboux` when v does not
    divide D[v].  v must be non-constant."""
    if v.is_constant():
        raise ValueError("Darboux polynomials are non-constant")
    image = op.apply(v)
    if image.is_zero():
        return Poly2.zero()
    try:
        return divexact(image, v)
    except NotDivisible as exc:
        raise NotDarboux(f"({v}) does not divide D[{v}] = ({image})") from exc


def _monomials_upto(deg: int) -> list[Monomial]:
    out = [(i, t - i) for t in range(deg + 1) for i in range(t + 1)]
    out.sort(key=grlex_key)
    return out


class _ParamPoly:
    """Bivariate polynomial whose coefficients are MPoly's in the unknowns."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[Monomial, MPoly] | None = None):
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def lift(cls, p: Poly2, n: int) -> "_ParamPoly":
        return cls(n, {mono: MPoly.const(n, c) for mono, c in p.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "_ParamPoly") -> "_ParamPoly":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out[mono] + c if mono in out else c
        return _ParamPoly(self.n, out)

    def __sub__(self, other: "_ParamPoly") -> "_ParamPoly":
        return self + other.scale(Fraction(-1))

    def scale(self, c: Fraction) -> "_ParamPoly":
        return _ParamPoly(self.n, {m: t.scale(c) for m, t in self.terms.items()})

    def __mul__(self, other: "_ParamPoly") -> "_ParamPoly":
        out: dict[Monomial, MPoly] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                prod = c1 * c2
                out[key] = out[key] + prod if key in out else prod
        return _ParamPoly(self.n, out)

    def diff(self, var: str) -> "_ParamPoly":
        idx = 0 if var == "x" else 1
        out: dict[Monomial, MPoly] = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[idx]
            if e == 0:
                continue
            key = (i - 1, j) if idx == 0 else (i, j - 1)
            scaled = c.scale(Fraction(e))
            out[key] = out[key] + scaled if key in out else scaled
        return _ParamPoly(self.n, out)

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=grlex_key)

    def divide_by_monic(self, divisor: "_ParamPoly") -> tuple["_ParamPoly", "_ParamPoly"]:
        """Division by a divisor whose leading coefficient is the constant 1.

        Returns (quotient, remainder); the identity self = q*divisor + r
        holds for every specialization of the unknowns, so the remainder's
        coefficient system characterizes divisibility exactly.
        """
        lm = divisor.leading_monomial()
        quot: dict[Monomial, MPoly] = {}
        rem: dict[Monomial, MPoly] = {}
        work = dict(self.terms)
        while work:
            mono = max(work, key=grlex_key)
            coeff = work.pop(mono)
            if coeff.is_zero():
                continue
            qi, qj = mono[0] - lm[0], mono[1] - lm[1]
            if qi < 0 or qj < 0:
                rem[mono] = rem[mono] + coeff if mono in rem else coeff
                continue
            quot[(qi, qj)] = quot[(qi, qj)] + coeff if (qi, qj) in quot else coeff
            for (di, dj), dc in divisor.terms.items():
                if (di, dj) == lm:
                    continue  # the popped term itself (leading coefficient is 1)
                key = (qi + di, qj + dj)
                delta = coeff * dc
                new = (work[key] - delta) if key in work else delta.scale(Fraction(-1))
                if new.is_zero():
                    work.pop(key, None)
                else:
                    work[key] = new
        return _ParamPoly(self.n, quot), _ParamPoly(self.n, rem)


def _products_of_lower_degree(pairs: Sequence[DarbouxPair], degree: int) -> set[Poly2]:
    """Normalized products of already-found lower-degree Darboux polynomials
    whose total degree is exactly `degree` (the only redundancy excluded)."""
    lower = [p.v for p in pairs if p.v.degree() < degree]
    out: set[Poly2] = set()

    def rec(idx: int, remaining: int, acc: Poly2, count: int):
        if remaining == 0:
            if count >= 2:
                out.add(acc.normalized())
            return
        if idx == len(lower):
            return
        d = lower[idx].degree()
        power = acc
        k = 0
        while k * d <= remaining:
            rec(idx + 1, remaining - k * d, power, count + k)
            power = power * lower[idx]
            k += 1

    rec(0, degree, Poly2.constant(1), 0)
    return out


def find_darboux(
    op: DOperator,
    max_deg: int,
    *,
    degree_cap: int = 4,
    deadline: float | None = None,
) -> list[DarbouxPair]:
    """All pairwise non-associate Darboux polynomials of degree <= max_deg,
    each with its cofactor, in deterministic order (degree, then canonical
    polynomial order).

    Exact products of lower-degree results are excluded.  One-parameter
    families (which occur e.g. for linear fields where every line through a
    fixed point is invariant) are reported through representatives with the
    parameter set to 0 and 1, and a NonExhaustiveFamilyWarning is emitted.
    """
    if max_deg < 1:
        raise ValueError("max_deg must be >= 1")
    if max_deg > degree_cap:
        raise DegreeTooLarge(f"requested degree {max_deg} exceeds the safety cap {degree_cap}")

    found: list[DarbouxPair] = []
    seen: set[Poly2] = set()
    family_seen = False

    for d in range(1, max_deg + 1):
        excluded = _products_of_lower_degree(found, d)
        monos = _monomials_upto(d)
        leading = [mu for mu in monos if mu[0] + mu[1] == d]
        for mu in sorted(leading, key=grlex_key, reverse=True):
            if deadline is not None and time.monotonic() > deadline:
                raise SearchTimeout("Darboux search exceeded the deadline", partial=found)
            unknown_monos = [nu for nu in monos if grlex_key(nu) < grlex_key(mu)]
            k = len(unknown_monos)
            v_terms = {mu: MPoly.const(k, 1)}
            for idx, nu in enumerate(unknown_monos):
                v_terms[nu] = MPoly.var(k, idx)
            v_sym = _ParamPoly(k, v_terms)
            dv = _ParamPoly.lift(op.n, k) * v_sym.diff("x") + _ParamPoly.lift(op.m, k) * v_sym.diff("y")
            _, rem = dv.divide_by_monic(v_sym)
            equations = list(rem.terms.values())
            solutions, exhaustive = solve_rational_system(equations, k)
            if not exhaustive:
                family_seen = True
            for sol in solutions:
                terms = {mu: Fraction(1)}
                for idx, nu in enumerate(unknown_monos):
                    if sol[idx]:
                        terms[nu] = sol[idx]
                v = Poly2(terms).normalized()
                if v in seen or v in excluded:
                    continue
                lam = cofactor_of(op, v)
                seen.add(v)
                found.append(DarbouxPair(v=v, cofactor=lam))

    if family_seen:
        warnings.warn(
            "a family of invariant curves with a free parameter was found; "
            "only representatives with parameter 0 and 1 are listed",
            NonExhaustiveFamilyWarning,
            stacklevel=2,
        )
    found.sort(key=lambda p: (p.v.degree(), p.v.sort_key()))
    return found
