"""Exact symbolic verification of integrating-factor candidates.

A candidate R = exp(P/Q) * prod v^c is an integrating factor precisely when

    D[P/Q] + sum_j c_j*lam_j + div = 0,

an identity between rational functions.  Multiplying through by Q^2 (and by
an integer clearing the denominators of the rational exponents c_j) turns
the check into a pure polynomial identity: no exponential ever has to be
constructed or simplified, which is what keeps the whole pipeline exact.
The residual below is that cleared polynomial; the candidate is valid iff
it is the literal zero polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .darboux import DOperator, NotDarboux, cofactor_of
from .poly import Poly2
from .search import IntegratingFactor


class NotDarbouxFactor(Exception):
    """A polynomial in the candidate's factorization is not a Darboux
    polynomial of the operator (the candidate is structurally malformed)."""


@dataclass(frozen=True)
class VerifyResidual:
    """The cleared polynomial residual; zero means the identity holds."""

    residual_num: Poly2

    @property
    def ok(self) -> bool:
        return self.residual_num.is_zero()

    def render(self) -> str:
        return self.residual_num.render()


def check(op: DOperator, factor: IntegratingFactor, *, clearing_multiplier: int = 1) -> VerifyResidual:
    """Compute the exact residual of the integrating-factor identity.

    Every polynomial in the candidate's Q- and S-factorizations must have a
    cofactor (else :class:`NotDarbouxFactor` is raised).  The verdict is
    invariant under the positive `clearing_multiplier`, which exists so the
    scale-invariance of the check can be exercised directly.
    """
    if clearing_multiplier < 1:
        raise ValueError("clearing multiplier must be a positive integer")

    cofactor_sum = Poly2.zero()
    for v, c in factor.s_factors:
        try:
            lam = cofactor_of(op, v)
        except NotDarboux as exc:
            raise NotDarbouxFactor(f"S-factor {v} is not Darboux: {exc}") from exc
        cofactor_sum = cofactor_sum + c * lam
    for v, _m in factor.q_factors:
        try:
            cofactor_of(op, v)
        except NotDarboux as exc:
            raise NotDarbouxFactor(f"Q-factor {v} is not Darboux: {exc}") from exc

    q = factor.q()
    p = factor.p

    k = clearing_multiplier
    for _v, c in factor.s_factors:
        k = k * c.denominator // math.gcd(k, c.denominator)

    base = q * op.apply(p) - p * op.apply(q) + q * q * (cofactor_sum + op.divergence())
    return VerifyResidual(residual_num=base * k)
