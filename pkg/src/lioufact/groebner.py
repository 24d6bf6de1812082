"""Multivariate polynomial elimination over Q for small systems.

This is the nonlinear-solve engine behind the Darboux polynomial search:
the undetermined-coefficient ansatz produces a small polynomial system in
the unknown coefficients, and we need *all rational* solutions of it,
exactly.  The approach is classical: a lexicographic Groebner basis
(Buchberger's algorithm), then back-substitution variable by variable using
rational root extraction on the univariate eliminant.

Variables are ordered u0 > u1 > ... > u_{k-1}; exponent vectors are plain
tuples, so Python's tuple comparison *is* the lex order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class MPoly:
    """Sparse polynomial in n variables with Fraction coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Exponent, Fraction] | None = None):
        self.n = n
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def const(cls, n: int, value) -> "MPoly":
        return cls(n, {(0,) * n: Fraction(value)})

    @classmethod
    def var(cls, n: int, i: int) -> "MPoly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): _ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or self.terms.keys() == {(0,) * self.n}

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.n, _ZERO)

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e, _ZERO) + c
            if acc:
                out[e] = acc
            elif e in out:
                del out[e]
        return _raw(self.n, out)

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __neg__(self) -> "MPoly":
        return _raw(self.n, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "MPoly") -> "MPoly":
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(key, _ZERO) + c1 * c2
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return _raw(self.n, out)

    def scale(self, c: Fraction) -> "MPoly":
        if not c:
            return MPoly(self.n)
        return _raw(self.n, {e: v * c for e, v in self.terms.items()})

    def lead(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def variables(self) -> set[int]:
        out: set[int] = set()
        for e in self.terms:
            for i, d in enumerate(e):
                if d:
                    out.add(i)
        return out

    def substitute(self, i: int, value: Fraction) -> "MPoly":
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            c2 = c * value ** e[i]
            if not c2:
                continue
            key = e[:i] + (0,) + e[i + 1 :]
            acc = out.get(key, _ZERO) + c2
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        return _raw(self.n, out)

    def univariate_coeffs(self, i: int) -> list[Fraction]:
        """Ascending coefficient list, valid only when self involves var i alone."""
        deg = max((e[i] for e in self.terms), default=0)
        out = [_ZERO] * (deg + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "MPoly(0)"
        bits = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"u{i}^{d}" if d > 1 else f"u{i}" for i, d in enumerate(e) if d)
            bits.append(f"{self.terms[e]}{'*' + mono if mono else ''}")
        return "MPoly(" + " + ".join(bits) + ")"


def _raw(n: int, terms: dict[Exponent, Fraction]) -> MPoly:
    p = MPoly.__new__(MPoly)
    p.n = n
    p.terms = terms
    return p


def _divides(e1: Exponent, e2: Exponent) -> bool:
    return all(a <= b for a, b in zip(e1, e2))


def _mono_mul(e1: Exponent, e2: Exponent) -> Exponent:
    return tuple(a + b for a, b in zip(e1, e2))


def _mono_div(e1: Exponent, e2: Exponent) -> Exponent:
    return tuple(a - b for a, b in zip(e1, e2))


def _lcm(e1: Exponent, e2: Exponent) -> Exponent:
    return tuple(max(a, b) for a, b in zip(e1, e2))


def reduce_poly(f: MPoly, basis: Sequence[MPoly]) -> MPoly:
    """Full normal form of f modulo basis (repeated top reduction)."""
    remainder: dict[Exponent, Fraction] = {}
    work = f
    while not work.is_zero():
        le, lc = work.lead()
        for g in basis:
            ge, gc = g.lead()
            if _divides(ge, le):
                shift = _mono_div(le, ge)
                factor = lc / gc
                sub = _raw(work.n, {_mono_mul(shift, e): c * factor for e, c in g.terms.items()})
                work = work - sub
                break
        else:
            remainder[le] = lc
            work = _raw(work.n, {e: c for e, c in work.terms.items() if e != le})
    return _raw(f.n, remainder)


def _s_poly(f: MPoly, g: MPoly) -> MPoly:
    fe, fc = f.lead()
    ge, gc = g.lead()
    l = _lcm(fe, ge)
    mf = _raw(f.n, {_mono_mul(_mono_div(l, fe), e): c / fc for e, c in f.terms.items()})
    mg = _raw(g.n, {_mono_mul(_mono_div(l, ge), e): c / gc for e, c in g.terms.items()})
    return mf - mg


def groebner_basis(gens: Iterable[MPoly]) -> list[MPoly]:
    """Reduced lexicographic Groebner basis (monic, interreduced, sorted)."""
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return []
    n = basis[0].n
    if any(g.is_constant() for g in basis):
        return [MPoly.const(n, 1)]

    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        # normal selection: smallest lcm degree first, deterministic
        pairs.sort(key=lambda ij: (sum(_lcm(basis[ij[0]].lead()[0], basis[ij[1]].lead()[0])),
                                   _lcm(basis[ij[0]].lead()[0], basis[ij[1]].lead()[0])))
        i, j = pairs.pop(0)
        fe, ge = basis[i].lead()[0], basis[j].lead()[0]
        if _lcm(fe, ge) == _mono_mul(fe, ge):
            continue  # coprime leading monomials: s-poly reduces to zero
        r = reduce_poly(_s_poly(basis[i], basis[j]), basis)
        if r.is_zero():
            continue
        if r.is_constant():
            return [MPoly.const(n, 1)]
        basis.append(r)
        k = len(basis) - 1
        pairs.extend((t, k) for t in range(k))

    # interreduce: drop redundant heads, then tail-reduce and make monic
    basis.sort(key=lambda g: g.lead()[0])
    kept: list[MPoly] = []
    for idx, g in enumerate(basis):
        others = [h for t, h in enumerate(basis) if t != idx]
        if any(_divides(h.lead()[0], g.lead()[0]) and h.lead()[0] != g.lead()[0] for h in others):
            continue
        if any(h.lead()[0] == g.lead()[0] for h in kept):
            continue
        kept.append(g)
    reduced = []
    for idx, g in enumerate(kept):
        rest = kept[:idx] + kept[idx + 1 :]
        r = g
        if rest:
            le, lc = g.lead()
            tail = reduce_poly(g - _raw(g.n, {le: lc}), rest)
            r = _raw(g.n, {le: lc}) + tail
        _, lc = r.lead()
        reduced.append(r.scale(1 / lc))
    reduced.sort(key=lambda g: g.lead()[0], reverse=True)
    return reduced


# -- rational root extraction ---------------------------------------------


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots of the polynomial with ascending coefficients.

    Exact: clears denominators, strips the zero root, then tests the
    finitely many p/q candidates given by the rational root theorem.
    """
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("the zero polynomial has every root")
    scale = 1
    for c in cs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    ints = [int(c * scale) for c in cs]
    roots = []
    if ints[0] == 0:
        roots.append(_ZERO)
        while ints and ints[0] == 0:
            ints.pop(0)
    if len(ints) <= 1:
        return sorted(roots)
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]

    def value(r: Fraction) -> Fraction:
        acc = _ZERO
        for c in reversed(ints):
            acc = acc * r + c
        return acc

    for p in _int_divisors(ints[0]):
        for q in _int_divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and value(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def solve_rational_system(polys: Sequence[MPoly], nvars: int) -> tuple[list[tuple[Fraction, ...]], bool]:
    """All rational solutions of {p = 0 for p in polys}.

    Returns (solutions, exhaustive).  When a variable is unconstrained (the
    solution set has positive dimension), the representative values 0 and 1
    are substituted for it and `exhaustive` comes back False.  Non-rational
    solutions are deliberately ignored: the callers only work over Q.
    """

    def go(system: list[MPoly], k: int) -> tuple[list[tuple[Fraction, ...]], bool]:
        live = [p for p in system if not p.is_zero()]
        for p in live:
            if p.is_constant():
                return [], True
        if k == 0:
            return [()], True
        if not live:
            sols, _ = go([], k - 1)
            return [s + (v,) for v in (_ZERO, _ONE) for s in sols], False

        basis = groebner_basis(live)
        if len(basis) == 1 and basis[0].is_constant():
            return [], True
        last = k - 1
        univ = [g for g in basis if g.variables() <= {last}]
        if not univ:
            out = []
            for v in (_ZERO, _ONE):
                sub = [g.substitute(last, v) for g in basis]
                sols, _ = go(sub, k - 1)
                out.extend(s + (v,) for s in sols)
            return _dedupe(out), False
        roots = set(rational_roots(univ[0].univariate_coeffs(last)))
        for extra in univ[1:]:
            roots &= set(rational_roots(extra.univariate_coeffs(last)))
        out = []
        exhaustive = True
        for r in sorted(roots):
            sub = [g.substitute(last, r) for g in basis]
            sols, e = go(sub, k - 1)
            exhaustive = exhaustive and e
            out.extend(s + (r,) for s in sols)
        return _dedupe(out), exhaustive

    return go(list(polys), nvars)


def _dedupe(sols: list[tuple[Fraction, ...]]) -> list[tuple[Fraction, ...]]:
    seen = set()
    out = []
    for s in sols:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out
