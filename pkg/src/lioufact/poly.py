"""Exact sparse bivariate polynomials and rational functions over Q.

Coefficients are `fractions.Fraction` (arbitrary precision, always reduced,
denominator positive — exactly the rational-number contract this package
relies on).  Monomials are ``(deg_x, deg_y)`` tuples, ordered by graded
lexicographic order with x > y.  Every value is immutable after
construction and kept canonical: no stored zero coefficients, deterministic
term order, so equality and rendering are reliable everywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Monomial = tuple[int, int]
CoeffLike = Union[Fraction, int]

_ZERO = Fraction(0)


class NotDivisible(Exception):
    """Exact polynomial division left a remainder.

    This is informative, not fatal: callers use it as a divisibility
    predicate (e.g. the Darboux test "does v divide D[v]?").
    """


def grlex_key(mono: Monomial) -> tuple[int, int]:
    """Sort key realizing graded lex with x > y (larger key = larger monomial)."""
    return (mono[0] + mono[1], mono[0])


class Poly2:
    """Sparse bivariate polynomial with exact rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, CoeffLike] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                i, j = int(mono[0]), int(mono[1])
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in monomial {mono!r}")
                c = Fraction(c)
                if not c:
                    continue
                key = (i, j)
                acc = clean.get(key, _ZERO) + c if key in clean else c
                if acc:
                    clean[key] = acc
                elif key in clean:
                    del clean[key]
        self._terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly2":
        return cls()

    @classmethod
    def constant(cls, c: CoeffLike) -> "Poly2":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def monomial(cls, deg_x: int, deg_y: int, coeff: CoeffLike = 1) -> "Poly2":
        return cls({(deg_x, deg_y): Fraction(coeff)})

    # -- basic queries ------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        """The term map; treat as read-only."""
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or self._terms.keys() == {(0, 0)}

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (0 for the zero polynomial)."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0, 0), _ZERO)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def degree_in(self, var: str) -> int:
        if not self._terms:
            return -1
        idx = _var_index(var)
        return max(mono[idx] for mono in self._terms)

    def coeff(self, deg_x: int, deg_y: int) -> Fraction:
        return self._terms.get((deg_x, deg_y), _ZERO)

    def terms_desc(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order (the canonical order)."""
        for mono in sorted(self._terms, key=grlex_key, reverse=True):
            yield mono, self._terms[mono]

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=grlex_key)

    def leading_coeff(self) -> Fraction:
        return self._terms[self.leading_monomial()]

    def lex_leading_coeff(self) -> Fraction:
        """Coefficient of the pure-lex (x-major) leading monomial.

        Sign normalization is anchored here rather than at the graded-lex
        leading term: this is the convention that keeps denominators like
        4x + 2y + 2xy + 2y^2 - 2y^3 (lex leader 2xy) un-negated.
        """
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self._terms[max(self._terms)]

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Poly2 | CoeffLike") -> "Poly2":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            acc = out.get(mono, _ZERO) + c
            if acc:
                out[mono] = acc
            elif mono in out:
                del out[mono]
        return _raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly2":
        return _raw({mono: -c for mono, c in self._terms.items()})

    def __sub__(self, other: "Poly2 | CoeffLike") -> "Poly2":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: CoeffLike) -> "Poly2":
        return (-self) + other

    def __mul__(self, other: "Poly2 | CoeffLike") -> "Poly2":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                acc = out.get(key, _ZERO) + c1 * c2
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly2":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly2.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly2):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly2.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- calculus and evaluation ---------------------------------------

    def diff(self, var: str) -> "Poly2":
        """Formal partial derivative with respect to ``"x"`` or ``"y"``."""
        idx = _var_index(var)
        out: dict[Monomial, Fraction] = {}
        for (i, j), c in self._terms.items():
            e = (i, j)[idx]
            if e == 0:
                continue
            key = (i - 1, j) if idx == 0 else (i, j - 1)
            out[key] = out.get(key, _ZERO) + c * e
        return _raw({k: v for k, v in out.items() if v})

    def eval(self, x0: CoeffLike, y0: CoeffLike) -> Fraction:
        """Exact evaluation at a rational point."""
        x0, y0 = Fraction(x0), Fraction(y0)
        total = _ZERO
        for (i, j), c in self._terms.items():
            total += c * x0**i * y0**j
        return total

    def eval_float(self, x0: float, y0: float) -> float:
        total = 0.0
        for (i, j), c in self._terms.items():
            total += float(c) * x0**i * y0**j
        return total

    # -- normalization -------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients.

        The content of the zero polynomial is 0.
        """
        if not self._terms:
            return _ZERO
        num = 0
        den = 1
        for c in self._terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_positive(self) -> tuple[Fraction, "Poly2"]:
        """Split as ``scale * prim`` with prim primitive (integer, content 1)
        and with a positive lex-leading coefficient; scale carries sign and
        content."""
        if not self._terms:
            return _ZERO, Poly2.zero()
        scale = self.content()
        if self.lex_leading_coeff() < 0:
            scale = -scale
        prim = _raw({mono: c / scale for mono, c in self._terms.items()})
        return scale, prim

    def normalized(self) -> "Poly2":
        """The primitive positive-leading-coefficient associate."""
        return self.primitive_positive()[1]

    # -- rendering ------------------------------------------------------

    def render(self) -> str:
        """Canonical text form: descending graded-lex terms, ``^`` powers,
        ``*`` products, e.g. ``x^2 - x*y + 3``."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for k, (mono, c) in enumerate(self.terms_desc()):
            mstr = _mono_str(mono)
            mag = abs(c)
            if mstr:
                body = mstr if mag == 1 else f"{mag}*{mstr}"
            else:
                body = str(mag)
            if k == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Poly2({self.render()})"

    def sort_key(self) -> tuple:
        """Total order on polynomials: term-by-term in canonical order.

        Used wherever output lists must be deterministically sorted.
        """
        key: list[int] = []
        for (i, j), c in self.terms_desc():
            key.extend((i + j, i, c.numerator, c.denominator))
        return tuple(key)


def _raw(terms: dict[Monomial, Fraction]) -> Poly2:
    """Internal constructor bypassing re-validation (terms already clean)."""
    p = Poly2.__new__(Poly2)
    p._terms = terms
    return p


def _coerce(value) -> Poly2:
    if isinstance(value, Poly2):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly2.constant(value)
    return NotImplemented


def _var_index(var: str) -> int:
    if var == "x":
        return 0
    if var == "y":
        return 1
    raise ValueError(f"unknown variable {var!r}")


def _mono_str(mono: Monomial) -> str:
    i, j = mono
    parts = []
    if i == 1:
        parts.append("x")
    elif i > 1:
        parts.append(f"x^{i}")
    if j == 1:
        parts.append("y")
    elif j > 1:
        parts.append(f"y^{j}")
    return "*".join(parts)


X = Poly2.monomial(1, 0)
Y = Poly2.monomial(0, 1)
ONE = Poly2.constant(1)


# -- division and gcd ----------------------------------------------------


def divexact(a: Poly2, b: Poly2) -> Poly2:
    """Return q with a = q*b, or raise :class:`NotDivisible`.

    Division in graded-lex order against the single divisor b; because the
    leading term of any multiple of b is divisible by b's leading term, the
    division succeeds without remainder exactly when b | a.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return Poly2.zero()
    lb_mono = b.leading_monomial()
    lb_coeff = b.leading_coeff()
    quotient: dict[Monomial, Fraction] = {}
    rest = a
    while not rest.is_zero():
        (ri, rj) = rest.leading_monomial()
        qi, qj = ri - lb_mono[0], rj - lb_mono[1]
        if qi < 0 or qj < 0:
            raise NotDivisible(f"({b}) does not divide ({a})")
        qc = rest.leading_coeff() / lb_coeff
        quotient[(qi, qj)] = qc
        rest = rest - Poly2.monomial(qi, qj, qc) * b
    return _raw(quotient)


def divides(b: Poly2, a: Poly2) -> bool:
    try:
        divexact(a, b)
        return True
    except NotDivisible:
        return False


def _coeffs_in_x(p: Poly2) -> dict[int, Poly2]:
    """View p as a polynomial in x with coefficients in Q[y]."""
    out: dict[int, dict[Monomial, Fraction]] = {}
    for (i, j), c in p.terms.items():
        out.setdefault(i, {})[(0, j)] = c
    return {i: _raw(t) for i, t in out.items()}


def _from_coeffs_in_x(coeffs: dict[int, Poly2]) -> Poly2:
    out: dict[Monomial, Fraction] = {}
    for i, q in coeffs.items():
        for (_, j), c in q.terms.items():
            out[(i, j)] = c
    return _raw(out)


def _univariate_gcd_y(a: Poly2, b: Poly2) -> Poly2:
    """Euclidean gcd of two polynomials in y alone, normalized primitive."""
    while not b.is_zero():
        a, b = b, _univariate_rem_y(a, b)
    return a.normalized()


def _univariate_rem_y(a: Poly2, b: Poly2) -> Poly2:
    db = b.degree_in("y")
    lb = b.coeff(0, db)
    r = a
    while not r.is_zero() and r.degree_in("y") >= db:
        dr = r.degree_in("y")
        r = r - Poly2.monomial(0, dr - db, r.coeff(0, dr) / lb) * b
    return r


def _content_in_x(p: Poly2) -> Poly2:
    """gcd over Q[y] of the x-coefficients of p."""
    coeffs = _coeffs_in_x(p)
    g = Poly2.zero()
    for q in coeffs.values():
        if g.is_zero():
            g = q.normalized()
        else:
            g = _univariate_gcd_y(g, q)
        if g.is_constant():
            return ONE
    return g


def _prem_x(a: Poly2, b: Poly2) -> Poly2:
    """Pseudo-remainder of a by b with respect to x (coefficients in Q[y])."""
    db = b.degree_in("x")
    lb = _coeffs_in_x(b)[db]
    r = a
    while not r.is_zero() and r.degree_in("x") >= db:
        dr = r.degree_in("x")
        lr = _coeffs_in_x(r)[dr]
        r = lb * r - Poly2.monomial(dr - db, 0) * lr * b
    return r


def poly_gcd(a: Poly2, b: Poly2) -> Poly2:
    """A greatest common divisor of a and b, primitive with positive
    leading coefficient.

    Uses the content/primitive-part split in x with a pseudo-remainder
    sequence (re-primitivized each step), so all arithmetic stays exact
    and no factorization is needed.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    if a.is_constant() or b.is_constant():
        return ONE
    if a.degree_in("x") == 0 and b.degree_in("x") == 0:
        return _univariate_gcd_y(a, b)

    cont_a, cont_b = _content_in_x(a), _content_in_x(b)
    g_cont = _univariate_gcd_y(cont_a, cont_b) if not (cont_a.is_constant() and cont_b.is_constant()) else ONE
    pp_a = divexact(a, cont_a).normalized()
    pp_b = divexact(b, cont_b).normalized()
    if pp_a.degree_in("x") < pp_b.degree_in("x"):
        pp_a, pp_b = pp_b, pp_a
    while not pp_b.is_zero():
        r = _prem_x(pp_a, pp_b)
        pp_a, pp_b = pp_b, (r.normalized() if r.is_zero() else divexact(r, _content_in_x(r) * r.content()).normalized())
    g_pp = ONE if pp_a.degree_in("x") == 0 else pp_a.normalized()
    return (g_cont * g_pp).normalized()


class RationalFn:
    """A reduced ratio of two bivariate polynomials.

    Invariants: den != 0, den is primitive with positive leading
    coefficient, and the primitive part of num is coprime to den.  The
    numerator carries whatever rational scale is needed to preserve the
    exact value (so e.g. x/(2x) is stored as (1/2)/1).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly2, den: Poly2):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly2.zero(), ONE
            return
        g = poly_gcd(num, den)
        if not g.is_constant() or g != ONE:
            num = divexact(num, g)
            den = divexact(den, g)
        scale, den_prim = den.primitive_positive()
        self.num = num * (1 / scale)
        self.den = den_prim

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den)

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFn") -> "RationalFn":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def render(self) -> str:
        if self.den == ONE:
            return self.num.render()
        return f"({self.num.render()})/({self.den.render()})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RationalFn({self.render()})"


def ratfn_reduce(num: Poly2, den: Poly2) -> RationalFn:
    """Reduce num/den to the canonical coprime form."""
    return RationalFn(num, den)
