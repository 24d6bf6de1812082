"""Exact Liouvillian integrating factors for rational first-order ODEs.

Given dy/dx = M(x,y)/N(x,y) with polynomial M, N, this package searches for
an integrating factor of the form exp(P/Q) * prod v_i^{c_i} built from
Darboux polynomials of the derivation D = N*d/dx + M*d/dy, verifies it as
an exact polynomial identity, and presents the first integral as a
verified quadrature.
"""

from .darboux import (
    DarbouxPair,
    DegreeTooLarge,
    DOperator,
    NonExhaustiveFamilyWarning,
    NotDarboux,
    SearchTimeout,
    ZeroDenominator,
    build_operator,
    cofactor_of,
    find_darboux,
)
from .linsolve import InconsistentSystem, LinSolution, LinSystem, solve_linear, zero_free_vars
from .numcheck import (
    PathSingular,
    SingularPoint,
    TrajectoryCheck,
    TrajectoryHitSingularity,
    default_base_point,
    eval_R,
    potential,
    trajectory_constancy,
)
from .odeparse import (
    NonPolynomialPower,
    OdeInput,
    OdeParseError,
    OdeSyntaxError,
    UnsupportedFunction,
    UnsupportedSymbol,
    parse_ode,
    render_ode,
)
from .poly import NotDivisible, Poly2, RationalFn, divexact, poly_gcd, ratfn_reduce
from .search import (
    DEFAULT_SCHEDULE,
    IntegratingFactor,
    SearchResult,
    SolveReport,
    assemble_system,
    auto_search,
    build_schedule,
    enumerate_exponents,
    search,
)
from .verify import NotDarbouxFactor, VerifyResidual, check

__version__ = "0.1.0"

__all__ = [
    "DarbouxPair",
    "DegreeTooLarge",
    "DOperator",
    "DEFAULT_SCHEDULE",
    "InconsistentSystem",
    "IntegratingFactor",
    "LinSolution",
    "LinSystem",
    "NonExhaustiveFamilyWarning",
    "NonPolynomialPower",
    "NotDarboux",
    "NotDarbouxFactor",
    "NotDivisible",
    "OdeInput",
    "OdeParseError",
    "OdeSyntaxError",
    "PathSingular",
    "Poly2",
    "RationalFn",
    "SearchResult",
    "SearchTimeout",
    "SingularPoint",
    "SolveReport",
    "TrajectoryCheck",
    "TrajectoryHitSingularity",
    "UnsupportedFunction",
    "UnsupportedSymbol",
    "VerifyResidual",
    "ZeroDenominator",
    "assemble_system",
    "auto_search",
    "build_operator",
    "build_schedule",
    "check",
    "cofactor_of",
    "default_base_point",
    "divexact",
    "enumerate_exponents",
    "eval_R",
    "find_darboux",
    "parse_ode",
    "poly_gcd",
    "potential",
    "ratfn_reduce",
    "render_ode",
    "search",
    "solve_linear",
    "trajectory_constancy",
    "zero_free_vars",
]
