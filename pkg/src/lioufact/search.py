"""The integrating-factor search.

For a rational first-order ODE dy/dx = m/n with derivation
D = n*d/dx + m*d/dy, a Liouvillian first integral forces an integrating
factor of the shape

    R = exp(P/Q) * prod_i v_i^{c_i}

where the v_i are Darboux polynomials of D, the c_i are constants, and the
denominator Q itself factors as a product of Darboux polynomials with
positive integer multiplicities Q = prod v_i^{m_i}.  Once degree bounds for
the Darboux polynomials, Q and P are fixed, only finitely many exponent
vectors {m_i} are possible, and for each of them the defining identity

    D[P] - P * sum_i m_i*lam_i + Q * (sum_j c_j*lam_j + div) = 0

is *linear* in the coefficients of P and in the c_j.  So the search is:
enumerate exponent vectors, assemble the linear system by matching monomial
coefficients, solve it exactly, and verify the candidate symbolically.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .darboux import DarbouxPair, DOperator, NotDarboux, SearchTimeout, cofactor_of, find_darboux
from .linsolve import InconsistentSystem, LinSystem, solve_linear, zero_free_vars
from .poly import Monomial, NotDivisible, Poly2, divexact, ratfn_reduce

ExponentVector = tuple[int, ...]

DEFAULT_SCHEDULE: tuple[tuple[int, int, int], ...] = (
    (1, 1, 1), (1, 2, 2), (1, 3, 3), (1, 4, 4), (1, 5, 5),
    (2, 2, 2), (2, 3, 3), (2, 4, 4), (2, 5, 5),
)


@dataclass(frozen=True)
class IntegratingFactor:
    """exp(p/Q) * prod v^c in fully factored exact form, Q = prod of the
    q_factors.  p may carry rational coefficients; the q-factor polynomials
    are primitive with positive leading coefficients, so the product
    reconstructs Q exactly."""

    p: Poly2
    q_factors: tuple[tuple[Poly2, int], ...]
    s_factors: tuple[tuple[Poly2, Fraction], ...]

    def q(self) -> Poly2:
        out = Poly2.constant(1)
        for v, m in self.q_factors:
            out = out * v**m
        return out

    def is_constant_factor(self) -> bool:
        """True when R is just a constant (no exponential or power parts)."""
        return self.p.is_zero() and not self.s_factors

    def render(self) -> str:
        parts = []
        if not self.p.is_zero():
            q = self.q()
            if q == 1:
                parts.append(f"exp({self.p.render()})")
            else:
                parts.append(f"exp(({self.p.render()})/({q.render()}))")
        for v, c in self.s_factors:
            exp = str(c) if c.denominator == 1 and c >= 0 else f"({c})"
            parts.append(f"({v.render()})^{exp}")
        return " * ".join(parts) if parts else "1"

    def __str__(self) -> str:
        return self.render()

    def to_json_dict(self) -> dict:
        return {
            "P": self.p.render(),
            "Qfactors": [{"v": v.render(), "m": m} for v, m in self.q_factors],
            "Sfactors": [{"v": v.render(), "c": str(c)} for v, c in self.s_factors],
        }


@dataclass
class SystemTrace:
    mvec: ExponentVector
    rows: int
    cols: int
    outcome: str  # inconsistent | trivialOnly | success


@dataclass
class SolveReport:
    """What the search tried: degree settings, exponent vectors, and the
    dimensions/outcome of every linear system solved."""

    degrees_tried: list[tuple[int, int, int]] = field(default_factory=list)
    candidates_tried: int = 0
    systems: list[SystemTrace] = field(default_factory=list)
    elapsed: float = 0.0

    def merge(self, other: "SolveReport") -> None:
        self.degrees_tried.extend(other.degrees_tried)
        self.candidates_tried += other.candidates_tried
        self.systems.extend(other.systems)
        self.elapsed += other.elapsed

    def to_json_dict(self) -> dict:
        return {
            "degrees_tried": [list(t) for t in self.degrees_tried],
            "candidates_tried": self.candidates_tried,
            "systems": [
                {"m": list(s.mvec), "rows": s.rows, "cols": s.cols, "outcome": s.outcome}
                for s in self.systems
            ],
            "elapsed": self.elapsed,
        }


@dataclass
class SearchResult:
    factor: IntegratingFactor | None
    report: SolveReport

    @property
    def found(self) -> bool:
        return self.factor is not None


def enumerate_exponents(pool: Sequence[DarbouxPair], deg_q: int) -> list[ExponentVector]:
    """All multiplicity vectors m with sum m_i*deg(v_i) <= deg_q.

    Ordered by ascending total Q-degree, then descending lexicographic
    order inside a weight class; the zero vector (Q = 1, the classical
    power-product case) always comes first.
    """
    degrees = [p.v.degree() for p in pool]
    by_weight: dict[int, list[ExponentVector]] = {}

    def rec(idx: int, weight: int, prefix: tuple[int, ...]):
        if idx == len(degrees):
            by_weight.setdefault(weight, []).append(prefix)
            return
        d = degrees[idx]
        top = (deg_q - weight) // d
        for k in range(top + 1):
            rec(idx + 1, weight + k * d, prefix + (k,))

    rec(0, 0, ())
    out: list[ExponentVector] = []
    for w in sorted(by_weight):
        out.extend(sorted(by_weight[w], reverse=True))
    return out


def _p_monomials(deg_p: int) -> list[Monomial]:
    """Unknown-coefficient monomials of P in label order: ascending total
    degree, x-major inside a degree (1, x, y, x^2, x*y, y^2, ...)."""
    return [(i, t - i) for t in range(deg_p + 1) for i in range(t, -1, -1)]


def _normalize_row(coeffs: list[Fraction], rhs: Fraction) -> tuple[tuple[Fraction, ...], Fraction]:
    entries = coeffs + [rhs]
    num = 0
    den = 1
    for e in entries:
        num = math.gcd(num, abs(e.numerator))
        den = den * e.denominator // math.gcd(den, e.denominator)
    if num == 0:
        return tuple(coeffs), rhs
    scale = Fraction(den, num)
    first = next(e for e in entries if e)
    if first < 0:
        scale = -scale
    return tuple(c * scale for c in coeffs), rhs * scale


def assemble_system(
    op: DOperator,
    pool: Sequence[DarbouxPair],
    mvec: ExponentVector,
    deg_p: int,
) -> LinSystem:
    """The linear system expressing the integrating-factor identity for one
    exponent vector.

    Unknowns are the coefficients of P (labels a1, a2, ... in canonical
    monomial order) followed by one exponent c_j per pool member (labels
    n1, n2, ...).  Each row matches the coefficient of one monomial of the
    expanded identity; rows are normalized to coprime integers with
    positive first entry, identically-zero rows are dropped and duplicate
    rows appear once.
    """
    if len(mvec) != len(pool):
        raise ValueError("exponent vector length does not match the pool")
    p_monos = _p_monomials(deg_p)
    names = [f"a{k + 1}" for k in range(len(p_monos))] + [f"n{j + 1}" for j in range(len(pool))]

    q = Poly2.constant(1)
    lam_q = Poly2.zero()
    for (pair, m) in zip(pool, mvec):
        if m:
            q = q * pair.v**m
            lam_q = lam_q + m * pair.cofactor

    columns: list[Poly2] = []
    for (i, j) in p_monos:
        mono = Poly2.monomial(i, j)
        columns.append(op.apply(mono) - mono * lam_q)
    for pair in pool:
        columns.append(q * pair.cofactor)
    const = q * op.divergence()

    row_monos: set[Monomial] = set()
    for col in columns:
        row_monos.update(col.terms)
    row_monos.update(const.terms)

    matrix: list[tuple[Fraction, ...]] = []
    rhs: list[Fraction] = []
    seen_rows: set[tuple] = set()
    for mono in sorted(row_monos, key=lambda m: (m[0] + m[1], m[0]), reverse=True):
        coeffs = [col.coeff(*mono) for col in columns]
        b = -const.coeff(*mono)
        if not b and not any(coeffs):
            continue
        coeffs_n, b_n = _normalize_row(coeffs, b)
        key = (coeffs_n, b_n)
        if key in seen_rows:
            continue
        seen_rows.add(key)
        matrix.append(coeffs_n)
        rhs.append(b_n)

    return LinSystem(matrix=tuple(matrix), rhs=tuple(rhs), unknowns=tuple(names))


def _build_candidate(
    op: DOperator,
    pool: Sequence[DarbouxPair],
    mvec: ExponentVector,
    p_monos: Sequence[Monomial],
    solution: Sequence[Fraction],
) -> IntegratingFactor | None:
    """Assemble the factored form from a solved coefficient vector,
    reducing P/Q to lowest terms and re-deriving the factorization of the
    reduced denominator.  Returns None when the reduced denominator cannot
    be certified as a product of Darboux polynomials."""
    p = Poly2({mono: c for mono, c in zip(p_monos, solution)})
    cs = list(solution[len(p_monos):])

    q = Poly2.constant(1)
    for pair, m in zip(pool, mvec):
        q = q * pair.v**m

    if p.is_zero():
        q_factors: list[tuple[Poly2, int]] = []
    else:
        reduced = ratfn_reduce(p, q)
        p, q = reduced.num, reduced.den
        if q == 1:
            q_factors = []
            if p.is_constant():
                p = Poly2.zero()  # exp(const) is a harmless scalar
        else:
            q_factors = []
            rest = q
            for pair, m in zip(pool, mvec):
                if not m:
                    continue
                count = 0
                while count < m:
                    try:
                        rest = divexact(rest, pair.v)
                    except NotDivisible:
                        break
                    count += 1
                if count:
                    q_factors.append((pair.v, count))
            if not rest.is_constant():
                # a factor cancelled only partially; keep the leftover as a
                # single factor when it is itself Darboux, otherwise reject
                try:
                    cofactor_of(op, rest)
                except NotDarboux:
                    return None
                leftover = rest.normalized()
                q_factors.append((leftover, 1))
                rest = divexact(rest, leftover)
            if rest.constant_value() != 1:
                return None

    s_factors = tuple((pair.v, c) for pair, c in zip(pool, cs) if c)
    return IntegratingFactor(p=p, q_factors=tuple(q_factors), s_factors=s_factors)


def search(
    op: DOperator,
    deg: int,
    deg_q: int,
    deg_p: int,
    *,
    deadline: float | None = None,
    pool: Sequence[DarbouxPair] | None = None,
) -> SearchResult:
    """One pass at fixed degree settings.

    Iterates exponent vectors in enumeration order, solves each assembled
    system, and returns the first candidate that verifies exactly and is
    not a bare constant (a constant R is accepted only when the divergence
    vanishes, i.e. the ODE is already exact).  A miss is a value, not an
    error: it only means no factor exists at this level.
    """
    from .verify import check  # local import to avoid a cycle

    t0 = time.monotonic()
    report = SolveReport(degrees_tried=[(deg, deg_q, deg_p)])
    if pool is None:
        pool = find_darboux(op, deg, deadline=deadline)
    p_monos = _p_monomials(deg_p)
    divergence_zero = op.divergence().is_zero()

    for mvec in enumerate_exponents(pool, deg_q):
        if deadline is not None and time.monotonic() > deadline:
            report.elapsed = time.monotonic() - t0
            raise SearchTimeout("integrating-factor search exceeded the deadline", partial=report)
        system = assemble_system(op, pool, mvec, deg_p)
        report.candidates_tried += 1
        trace = SystemTrace(mvec=mvec, rows=system.rows, cols=system.cols, outcome="inconsistent")
        report.systems.append(trace)
        try:
            solution = solve_linear(system)
        except InconsistentSystem:
            continue
        vector = zero_free_vars(solution)
        candidate = _build_candidate(op, pool, mvec, p_monos, vector)
        if candidate is None:
            trace.outcome = "trivialOnly"
            continue
        if candidate.is_constant_factor() and not divergence_zero:
            trace.outcome = "trivialOnly"
            continue
        if not check(op, candidate).ok:
            trace.outcome = "trivialOnly"
            continue
        trace.outcome = "success"
        report.elapsed = time.monotonic() - t0
        return SearchResult(factor=candidate, report=report)

    report.elapsed = time.monotonic() - t0
    return SearchResult(factor=None, report=report)


def auto_search(
    op: DOperator,
    schedule: Sequence[tuple[int, int, int]] = DEFAULT_SCHEDULE,
    *,
    deadline: float | None = None,
) -> SearchResult:
    """Run `search` over a schedule of degree settings, returning the first
    success.  Darboux pools are cached per degree."""
    if not schedule:
        raise ValueError("schedule must be nonempty")
    merged = SolveReport()
    pools: dict[int, list[DarbouxPair]] = {}
    for (deg, deg_q, deg_p) in schedule:
        if deg not in pools:
            pools[deg] = find_darboux(op, deg, deadline=deadline)
        try:
            result = search(op, deg, deg_q, deg_p, deadline=deadline, pool=pools[deg])
        except SearchTimeout as exc:
            if isinstance(exc.partial, SolveReport):
                merged.merge(exc.partial)
            raise SearchTimeout(str(exc), partial=merged) from None
        merged.merge(result.report)
        if result.found:
            return SearchResult(factor=result.factor, report=merged)
    return SearchResult(factor=None, report=merged)


def build_schedule(deg: int, deg_q: int, deg_p: int) -> list[tuple[int, int, int]]:
    """Degree schedule capped by a configuration: Darboux degree d ramps
    from 1 while Q/P budgets grow together up to their caps."""
    steps: list[tuple[int, int, int]] = []
    top = max(deg_q, deg_p, 1)
    for d in range(1, deg + 1):
        for k in range(max(d, 1), top + 1):
            step = (d, min(k, deg_q), min(k, deg_p))
            if step not in steps:
                steps.append(step)
    if not steps:
        steps.append((deg, deg_q, deg_p))
    return steps
