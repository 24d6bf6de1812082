"""Command-line interface.

Four commands mirror the solver's natural workflow, plus a corpus runner:

  lsolve   parse, search, verify, and print the first integral as explicit
           quadratures (optionally validating numerically along a trajectory)
  intfact  like lsolve but stops at the verified integrating factor
  darboux  list the Darboux polynomials and cofactors up to a degree
  ldop     print the derivation associated with the ODE
  corpus   run lsolve over a file of ODEs (one per line, # comments)

Exit codes are a contract: 0 success, 2 input error, 3 no factor found at
the requested degrees, 4 timeout (corpus: 1 when any entry fails).
All commands support --json for machine-readable output; JSON success
reports always embed the verification residual, which must read "0".
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .darboux import DegreeTooLarge, SearchTimeout, build_operator, find_darboux
from .numcheck import (
    PathSingular,
    SingularPoint,
    TrajectoryHitSingularity,
    default_base_point,
    trajectory_constancy,
)
from .odeparse import OdeInput, OdeParseError, parse_ode, render_ode
from .search import SolveReport, auto_search, build_schedule
from .verify import check

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_FOUND = 3
EXIT_TIMEOUT = 4


@dataclass
class CliConfig:
    deg: int = 1
    deg_q: int = 5
    deg_p: int = 5
    output_json: bool = False
    numcheck: bool = False
    base_point: tuple[Fraction, Fraction] | None = None
    timeout_seconds: int = 60
    show_residual: bool = False


def _add_common(parser: argparse.ArgumentParser, *, degrees: bool = True):
    if degrees:
        parser.add_argument("--deg", type=int, default=1,
                            help="maximum degree of the Darboux polynomials (default 1)")
        parser.add_argument("--deg-q", type=int, default=5, dest="deg_q",
                            help="maximum degree of the exponent denominator Q (default 5)")
        parser.add_argument("--deg-p", type=int, default=5, dest="deg_p",
                            help="maximum degree of the exponent numerator P (default 5)")
        parser.add_argument("--timeout", type=int, default=60,
                            help="search time budget in seconds (default 60)")
        parser.add_argument("--verify", action="store_true",
                            help="print the verification residual")
    parser.add_argument("--json", action="store_true", help="machine-readable output")


def _config(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        deg=getattr(args, "deg", 1),
        deg_q=getattr(args, "deg_q", 5),
        deg_p=getattr(args, "deg_p", 5),
        output_json=args.json,
        numcheck=getattr(args, "numcheck", False),
        base_point=getattr(args, "base_parsed", None),
        timeout_seconds=getattr(args, "timeout", 60),
        show_residual=getattr(args, "verify", False),
    )


def _parse_base(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("base point must look like x,y (rationals allowed)")
    try:
        return Fraction(parts[0].strip()), Fraction(parts[1].strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad base point: {exc}")


def _emit(payload: dict, cfg: CliConfig):
    print(json.dumps(payload, indent=2, sort_keys=True))


def _solve(ode: OdeInput, cfg: CliConfig):
    """parse -> operator -> scheduled search; shared by lsolve/intfact."""
    op = build_operator(ode.m, ode.n)
    deadline = time.monotonic() + cfg.timeout_seconds
    schedule = build_schedule(cfg.deg, cfg.deg_q, cfg.deg_p)
    result = auto_search(op, schedule, deadline=deadline)
    return op, result


def _report_not_found(ode: OdeInput, report: SolveReport, cfg: CliConfig, command: str) -> int:
    if cfg.output_json:
        _emit({
            "command": command,
            "status": "not_found",
            "ode": render_ode(ode),
            "report": report.to_json_dict(),
        }, cfg)
    else:
        print("could not find an integrating factor")
    return EXIT_NOT_FOUND


def _report_timeout(ode: OdeInput, exc: SearchTimeout, cfg: CliConfig, command: str) -> int:
    report = exc.partial if isinstance(exc.partial, SolveReport) else SolveReport()
    if cfg.output_json:
        _emit({
            "command": command,
            "status": "timeout",
            "ode": render_ode(ode),
            "report": report.to_json_dict(),
        }, cfg)
    else:
        print("search timed out", file=sys.stderr)
    return EXIT_TIMEOUT


def _numcheck_payload(op, factor, cfg: CliConfig) -> dict:
    try:
        if cfg.base_point is not None:
            base = (float(cfg.base_point[0]), float(cfg.base_point[1]))
        else:
            base = default_base_point(op, factor)
        t_span = 0.5
        last_error = None
        for _ in range(5):
            try:
                result = trajectory_constancy(op, factor, base, t_span, 9)
                return {"status": "ok", **result.to_json_dict()}
            except (TrajectoryHitSingularity, PathSingular, OverflowError) as exc:
                last_error = exc
                t_span /= 2
        return {"status": "failed", "error": str(last_error)}
    except (SingularPoint, PathSingular, TrajectoryHitSingularity, OverflowError) as exc:
        return {"status": "failed", "error": str(exc)}


def cmd_intfact(args: argparse.Namespace) -> int:
    cfg = _config(args)
    try:
        ode = parse_ode(args.ode)
    except OdeParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        op, result = _solve(ode, cfg)
    except SearchTimeout as exc:
        return _report_timeout(ode, exc, cfg, "intfact")
    if not result.found:
        return _report_not_found(ode, result.report, cfg, "intfact")
    factor = result.factor
    residual = check(op, factor)
    if cfg.output_json:
        _emit({
            "command": "intfact",
            "status": "success",
            "ode": render_ode(ode),
            "integrating_factor": factor.to_json_dict(),
            "integrating_factor_text": factor.render(),
            "residual": residual.render(),
            "report": result.report.to_json_dict(),
        }, cfg)
    else:
        print("For the ODE in the form")
        print(f"  {render_ode(ode)}")
        print("the integrating factor will be")
        print(f"  {factor.render()}")
        if cfg.show_residual:
            print(f"residual: {residual.render()}")
    return EXIT_OK


def cmd_lsolve(args: argparse.Namespace) -> int:
    cfg = _config(args)
    try:
        ode = parse_ode(args.ode)
    except OdeParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        op, result = _solve(ode, cfg)
    except SearchTimeout as exc:
        return _report_timeout(ode, exc, cfg, "lsolve")
    if not result.found:
        return _report_not_found(ode, result.report, cfg, "lsolve")
    factor = result.factor
    residual = check(op, factor)
    r_text = factor.render()
    rm_text = f"{r_text} * ({op.m.render()})"
    rn_text = f"{r_text} * ({op.n.render()})"
    numcheck_payload = _numcheck_payload(op, factor, cfg) if cfg.numcheck else None
    if cfg.output_json:
        payload = {
            "command": "lsolve",
            "status": "success",
            "ode": render_ode(ode),
            "integrating_factor": factor.to_json_dict(),
            "integrating_factor_text": r_text,
            "residual": residual.render(),
            "first_integral": {
                "RM": rm_text,
                "RN": rn_text,
                "quadrature": "I(x,y) = int_{x0..x} RM(t, y0) dt - int_{y0..y} RN(x, s) ds",
            },
            "report": result.report.to_json_dict(),
        }
        if numcheck_payload is not None:
            payload["numcheck"] = numcheck_payload
        _emit(payload, cfg)
    else:
        print("For the ODE in the form")
        print(f"  {render_ode(ode)}")
        print("the integrating factor will be")
        print(f"  {r_text}")
        print("the first integral (constant along trajectories) is")
        print("  I(x,y) = int_{x0..x} [R*M](t, y0) dt - int_{y0..y} [R*N](x, s) ds")
        print(f"  with R*M = {rm_text}")
        print(f"  and  R*N = {rn_text}")
        print("  omega = (R*M) dx - (R*N) dy")
        if cfg.show_residual:
            print(f"residual: {residual.render()}")
        if numcheck_payload is not None:
            if numcheck_payload["status"] == "ok":
                print(f"numcheck: max relative deviation {numcheck_payload['max_rel_deviation']:.3e} "
                      f"from base {tuple(numcheck_payload['base_point'])}")
            else:
                print(f"numcheck: failed ({numcheck_payload['error']})")
    return EXIT_OK


def cmd_darboux(args: argparse.Namespace) -> int:
    cfg = _config(args)
    try:
        ode = parse_ode(args.ode)
    except OdeParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        op = build_operator(ode.m, ode.n)
        pairs = find_darboux(op, args.deg)
    except DegreeTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.output_json:
        _emit({
            "command": "darboux",
            "ode": render_ode(ode),
            "pairs": [{"v": p.v.render(), "lambda": p.cofactor.render()} for p in pairs],
        }, cfg)
    else:
        vs = ", ".join(p.v.render() for p in pairs)
        ls = ", ".join(p.cofactor.render() for p in pairs)
        print(f"[[{vs}],[{ls}]]")
    return EXIT_OK


def cmd_ldop(args: argparse.Namespace) -> int:
    cfg = _config(args)
    try:
        ode = parse_ode(args.ode)
    except OdeParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    op = build_operator(ode.m, ode.n)
    if cfg.output_json:
        _emit({
            "command": "ldop",
            "ode": render_ode(ode),
            "operator": op.render(),
            "N": op.n.render(),
            "M": op.m.render(),
        }, cfg)
    else:
        print(op.render())
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    cfg = _config(args)
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        print(f"error: cannot read corpus file: {exc}", file=sys.stderr)
        return EXIT_INPUT

    entries = []
    solved = 0
    total = 0
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        total += 1
        started = time.monotonic()
        entry = {"line": lineno, "ode": text}
        try:
            ode = parse_ode(text)
            op = build_operator(ode.m, ode.n)
            deadline = time.monotonic() + cfg.timeout_seconds
            result = auto_search(op, build_schedule(cfg.deg, cfg.deg_q, cfg.deg_p), deadline=deadline)
            if result.found:
                residual = check(op, result.factor)
                entry["status"] = "solved"
                entry["integrating_factor"] = result.factor.render()
                entry["residual"] = residual.render()
                if residual.ok:
                    solved += 1
                else:
                    entry["status"] = "verify-failed"
            else:
                entry["status"] = "not_found"
        except OdeParseError as exc:
            entry["status"] = "parse-error"
            entry["error"] = str(exc)
        except SearchTimeout:
            entry["status"] = "timeout"
        entry["time"] = time.monotonic() - started
        entries.append(entry)

    if cfg.output_json:
        _emit({"command": "corpus", "entries": entries, "solved": solved, "total": total}, cfg)
    else:
        for e in entries:
            extra = f"  residual: {e.get('residual', '-')}" if e["status"] == "solved" else ""
            print(f"line {e['line']:>3}  {e['status']:<12} {e['time']:7.3f}s{extra}  {e['ode']}")
        print(f"solved {solved}/{total}")
    return EXIT_OK if solved == total else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="lioufact",
        description="Liouvillian integrating factors for rational first-order ODEs, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_lsolve = sub.add_parser("lsolve", help="solve: find, verify, and present the first integral")
    p_lsolve.add_argument("ode", help="e.g. \"dy/dx = (x+1)*y/(x - x*y - y^2 + x^2)\"")
    _add_common(p_lsolve)
    p_lsolve.add_argument("--numcheck", action="store_true",
                          help="validate the first integral numerically along a trajectory")
    p_lsolve.add_argument("--base", type=_parse_base, dest="base_parsed", default=None,
                          help="base point x,y for quadrature and trajectories")
    p_lsolve.set_defaults(func=cmd_lsolve)

    p_intfact = sub.add_parser("intfact", help="compute just the integrating factor")
    p_intfact.add_argument("ode")
    _add_common(p_intfact)
    p_intfact.set_defaults(func=cmd_intfact)

    p_darboux = sub.add_parser("darboux", help="Darboux polynomials and cofactors up to a degree")
    p_darboux.add_argument("ode")
    p_darboux.add_argument("--deg", type=int, default=1, help="maximum degree (default 1)")
    p_darboux.add_argument("--json", action="store_true")
    p_darboux.set_defaults(func=cmd_darboux)

    p_ldop = sub.add_parser("ldop", help="print the derivation N*d/dx + M*d/dy")
    p_ldop.add_argument("ode")
    p_ldop.add_argument("--json", action="store_true")
    p_ldop.set_defaults(func=cmd_ldop)

    p_corpus = sub.add_parser("corpus", help="run lsolve over a corpus file")
    p_corpus.add_argument("file")
    _add_common(p_corpus)
    p_corpus.set_defaults(func=cmd_corpus)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
