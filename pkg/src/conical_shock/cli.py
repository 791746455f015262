"""Command-line front end.

    conical-shock direct    --theta0 DEG --epsilon EPS [--E0 E0]
    conical-shock inverse   --beta DEG --epsilon EPS [--E0 E0]
    conical-shock sweep     --theta0 DEG --eps 0.08,0.04,0.02,0.01
    conical-shock measures  --theta0 DEG --eps 0.08,0.04,0.02,0.01
    conical-shock chaplygin --M0 M0 --theta0 DEG [--rho0 RHO0]

Angles are in degrees here and radians everywhere else.  Exit codes:
0 success, 2 invalid input, 3 outside the attached-shock regime, 4 I/O error,
1 any other solver failure.
"""
from __future__ import annotations

import argparse
import logging
import math
import os
import sys

from . import output
from .direct import SweepConfig, hypersonic_sweep, solve_direct
from .errors import ConicalFlowError, DomainError, RegimeError, RegimeFailure
from .gas import derive_parameters
from .measures import Family, convergence_report
from .oracle import rk4_cone_angle
from .shock import (
    BOUNDARY_TOL,
    ChaplyginParameters,
    chaplygin_concentration_regime,
    chaplygin_shock_angle,
    chaplygin_surface_pressure,
)
from .taylor_maccoll import IntegratorOptions, integrate_inverse

EXIT_OK, EXIT_FAILURE, EXIT_DOMAIN, EXIT_REGIME, EXIT_IO = 0, 1, 2, 3, 4

log = logging.getLogger("conical_shock")


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _eps_list(text: str) -> list[float]:
    try:
        return [_positive(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _radians(deg: float) -> float:
    return math.radians(deg)


def _options(args) -> IntegratorOptions:
    return IntegratorOptions(rel_tol=args.rel_tol, abs_tol=args.abs_tol)


def _emit(args, doc, rows=None, columns=None) -> None:
    if args.format == "csv":
        if rows is None:
            raise DomainError("this command has no CSV form")
        text = output.to_csv(rows, columns)
    else:
        text = output.to_json(doc)
    if args.out:
        output.atomic_write(args.out, text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)


def cmd_direct(args) -> int:
    params = derive_parameters(args.epsilon, args.E0)
    sol = solve_direct(_radians(args.theta0), params, _options(args), args.angle_tol)
    doc = output.direct_document(sol)
    if args.seed_oracle:
        ref = rk4_cone_angle(sol.beta, params)
        doc["oracle"] = {
            "theta_cone_deg": math.degrees(ref.theta_cone),
            "discrepancy_rad": abs(ref.theta_cone - sol.field.theta_cone),
            "n_steps": ref.n_steps,
        }
    _emit(args, doc, output.grid_rows(sol.field), output.GRID_COLUMNS)
    return EXIT_OK


def cmd_inverse(args) -> int:
    params = derive_parameters(args.epsilon, args.E0)
    field = integrate_inverse(_radians(args.beta), params, _options(args))
    doc = output.inverse_document(field)
    if args.seed_oracle:
        ref = rk4_cone_angle(field.beta, params)
        doc["oracle"] = {
            "theta_cone_deg": math.degrees(ref.theta_cone),
            "discrepancy_rad": abs(ref.theta_cone - field.theta_cone),
            "n_steps": ref.n_steps,
        }
    _emit(args, doc, output.grid_rows(field), output.GRID_COLUMNS)
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = SweepConfig(angle_tol=args.angle_tol, on_violation="warn")
    eps = sorted(args.eps, reverse=True)
    result = hypersonic_sweep(_radians(args.theta0), eps, args.E0, _options(args), config)
    for rec in result.records:
        if rec.error:
            log.warning("eps=%g failed: %s", rec.epsilon, rec.error)
    _emit(args, output.sweep_document(result), output.sweep_rows(result), output.SWEEP_COLUMNS)
    return EXIT_OK


def cmd_measures(args) -> int:
    report = convergence_report(
        _radians(args.theta0), args.eps, E0=args.E0, opts=_options(args), angle_tol=args.angle_tol
    )
    for eps, msg in report.failures:
        log.warning("eps=%g failed: %s", eps, msg)
    _emit(args, output.measures_document(report), output.measure_rows(report), output.MEASURE_COLUMNS)
    return EXIT_OK


NOTE_CONCENTRATION = "M0 >= 1/sin(theta0) => concentration layer on the cone"
NOTE_ATTACHED = "M0 < 1/sin(theta0) => attached discontinuity independent of cone"


def cmd_chaplygin(args) -> int:
    theta0 = _radians(args.theta0)
    if not 0.0 < theta0 < 0.5 * math.pi:
        raise DomainError(f"theta0 must lie in (0, 90) degrees, got {args.theta0}")
    beta0 = chaplygin_shock_angle(args.M0)
    chap = ChaplyginParameters(A=1.0, B=1.0, M0=args.M0, rho0=args.rho0)
    doc = {"M0": args.M0, "theta0_deg": args.theta0, "rho0": args.rho0, "beta0_deg": math.degrees(beta0)}
    boundary = abs(args.M0 * math.sin(theta0) - 1.0) <= BOUNDARY_TOL
    failure = None
    if chaplygin_concentration_regime(theta0, args.M0):
        doc["W_C"] = chaplygin_surface_pressure(theta0, chap)
        doc["regime"] = [NOTE_CONCENTRATION]
    else:
        doc["W_C"] = None
        doc["regime"] = [NOTE_ATTACHED]
        try:
            chaplygin_surface_pressure(theta0, chap)
        except RegimeError as exc:
            failure = exc
    if boundary:
        # discontinuity sits on the cone: both descriptions apply
        doc["regime"] = ["boundary M0 = 1/sin(theta0)", NOTE_CONCENTRATION, NOTE_ATTACHED]
    if args.format == "json":
        _emit(args, doc)
    else:
        lines = [f"beta0 = {doc['beta0_deg']:.6f} deg"]
        lines += [f"regime: {note}" for note in doc["regime"]]
        if doc["W_C"] is not None:
            lines.append(f"W_C = {doc['W_C']:.6f}")
        text = "\n".join(lines) + "\n"
        if args.out:
            output.atomic_write(args.out, text)
        else:
            sys.stdout.write(text)
    if failure is not None:
        raise failure
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conical-shock", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="json", formats=("json", "csv")):
        p.add_argument("--E0", type=float, default=1.0, help="total enthalpy, > 1/2 (default 1)")
        p.add_argument("--rel-tol", type=_positive, default=1e-12)
        p.add_argument("--abs-tol", type=_positive, default=1e-14)
        p.add_argument("--angle-tol", type=_positive, default=1e-8, help="radians")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=formats, default=fmt_default)

    p = sub.add_parser("direct", help="shock angle for a given cone")
    p.add_argument("--theta0", type=float, required=True, help="cone half-angle, degrees")
    p.add_argument("--epsilon", type=float, required=True, help="gamma - 1")
    p.add_argument("--seed-oracle", action="store_true", help="also run the fixed-step RK4 reference")
    common(p)
    p.set_defaults(func=cmd_direct)

    p = sub.add_parser("inverse", help="cone angle for a given shock")
    p.add_argument("--beta", type=float, required=True, help="shock half-angle, degrees")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--seed-oracle", action="store_true")
    common(p)
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("sweep", help="direct problem along an epsilon ladder")
    p.add_argument("--theta0", type=float, required=True)
    p.add_argument("--eps", type=_eps_list, required=True, help="comma-separated epsilons")
    common(p, fmt_default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("measures", help="vague-convergence gap table")
    p.add_argument("--theta0", type=float, required=True)
    p.add_argument("--eps", type=_eps_list, required=True)
    common(p, fmt_default="csv")
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("chaplygin", help="Chaplygin-gas discontinuity angle and cone pressure")
    p.add_argument("--M0", type=float, required=True)
    p.add_argument("--theta0", type=float, required=True)
    p.add_argument("--rho0", type=_positive, default=1.0)
    p.add_argument("--out")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_chaplygin)
    return parser


def _configure_logging() -> None:
    level = os.environ.get("CONICAL_SHOCK_LOG", "error").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.ERROR),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except RegimeFailure as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_REGIME
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConicalFlowError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
