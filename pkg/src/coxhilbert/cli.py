"""Command-line front end.

Exit codes: 0 success or certified, 1 sound-but-negative verdict,
2 input error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Sequence

from .budget import Budget, default_budget
from .certificate import Growth, ModuleSlice, certify_constant, gasharov_check, hypercube_vertices, module_slice
from .errors import (
    BudgetExceeded,
    InterpolationError,
    NotHilbertPolynomial,
    ParseError,
    StabilizationError,
)
from .ideal import hilbert_value, load_ideal
from .macaulay import gotzmann_representation, macaulay_rep, min_certificate_point_2d
from .oracle import DEFAULT_HORIZON, compute_grid, verify_persistence
from .polynomial import NumericalPolynomial, hilbert_polynomial

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class _Negative(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from exc


def _load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _poly_arg(args: argparse.Namespace, nvars: int | None = None) -> NumericalPolynomial:
    if getattr(args, "m", None) is not None and nvars is not None:
        return NumericalPolynomial.constant(nvars, args.m)
    if args.poly_file:
        poly = NumericalPolynomial.from_json(_load_json(args.poly_file))
    elif args.poly_json:
        try:
            poly = NumericalPolynomial.from_json(json.loads(args.poly_json))
        except json.JSONDecodeError as exc:
            raise ParseError(f"--poly-json: {exc}") from exc
    else:
        raise ParseError("give the polynomial with --poly-file or --poly-json")
    if nvars is not None and poly.nvars != nvars:
        raise ParseError(f"polynomial has {poly.nvars} variables, expected {nvars}")
    return poly


def _budget(args: argparse.Namespace) -> Budget:
    base = default_budget()
    return Budget(
        max_monomials=args.max_monomials or base.max_monomials,
        max_rank_rows=args.max_rank_rows or base.max_rank_rows,
        max_box_points=base.max_box_points,
    )


def _emit(args: argparse.Namespace, payload: Any, plain: str) -> None:
    if args.format == "plain":
        print(plain)
    else:
        print(json.dumps(payload))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_hilbert_eval(args: argparse.Namespace) -> None:
    ideal = load_ideal(args.ideal)
    hv = hilbert_value(ideal, args.degree, budget=_budget(args), allow_probabilistic=args.allow_probabilistic)
    plain = str(hv.value) + ("" if hv.verified else " (unverified)")
    _emit(args, hv.to_json(), plain)


def cmd_hilbert_poly(args: argparse.Namespace) -> None:
    ideal = load_ideal(args.ideal)
    poly = hilbert_polynomial(ideal, budget=_budget(args), max_retries=args.max_retries)
    payload = poly.to_json() | {"text": poly.text(), "binomial": poly.binomial_text()}
    _emit(args, payload, f"{poly.text()}\n{poly.binomial_text()}")


def cmd_certify(args: argparse.Namespace) -> None:
    ideal = load_ideal(args.ideal)
    verdict = certify_constant(ideal, args.d, args.m, budget=_budget(args), threads=args.threads)
    payload = verdict.to_json()
    _emit(args, payload, " ".join(f"{k}={v}" for k, v in payload.items()))
    if not verdict.certified:
        raise _Negative


def cmd_gotzmann(args: argparse.Namespace) -> None:
    poly = NumericalPolynomial.univariate(args.poly)
    rep = gotzmann_representation(poly)
    payload = {"poly": poly.text(), "gotzmann_number": rep.r, "degrees": list(rep.degrees)}
    _emit(args, payload, str(rep.r))


def cmd_macaulay_growth(args: argparse.Namespace) -> None:
    rep = macaulay_rep(args.alpha, args.d)
    payload = {"alpha": args.alpha, "d": args.d, "kappas": list(rep.kappas), "growth": rep.growth()}
    _emit(args, payload, str(rep.growth()))


def cmd_slice(args: argparse.Namespace) -> None:
    ideal = load_ideal(args.ideal)
    axis = None if args.axis is None else args.axis - 1
    sl = module_slice(ideal, args.prefix, args.u_max, axis=axis, budget=_budget(args))
    plain = " ".join(str(sl.hf[u]) for u in sorted(sl.hf))
    _emit(args, sl.to_json(), f"v={sl.v} a={sl.generator_degree_bound} hf: {plain}")


def cmd_gasharov(args: argparse.Namespace) -> None:
    sl = ModuleSlice.from_json(_load_json(args.slice))
    try:
        res = gasharov_check(sl, args.d)
    except KeyError as exc:
        raise ParseError(str(exc)) from exc
    _emit(args, res.to_json(), res.outcome.value)
    if res.outcome is Growth.BOUND_VIOLATED:
        raise _Negative


def cmd_grid(args: argparse.Namespace) -> None:
    ideal = load_ideal(args.ideal)
    grid = compute_grid(ideal, args.lower, args.upper, budget=_budget(args), threads=args.threads)
    if args.format == "json":
        rows = [{"degree": list(pt), "value": grid[pt]} for pt in grid.points()]
        print(json.dumps({"lower": list(grid.lower), "upper": list(grid.upper), "values": rows}))
    else:
        sys.stdout.write(grid.to_csv())


def cmd_verify(args: argparse.Namespace) -> None:
    ideal = load_ideal(args.ideal)
    poly = _poly_arg(args, ideal.ring.s)
    report = verify_persistence(ideal, args.d, poly, args.horizon, budget=_budget(args), threads=args.threads)
    plain = "true" if report.holds else f"false witness={list(report.witness)}"
    _emit(args, report.to_json(), plain)
    if not report.holds:
        raise _Negative


def cmd_min_point(args: argparse.Namespace) -> None:
    poly = _poly_arg(args)
    point = min_certificate_point_2d(poly, args.d1)
    payload = {"point": list(point), "vertices": [list(v) for v in hypercube_vertices(point)]}
    _emit(args, payload, f"({point[0]},{point[1]})")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "plain"), default=None,
                        help="output format (default json; grid defaults to csv)")
    common.add_argument("--max-monomials", type=int, default=None,
                        help="enumeration cap (default 10^7 or $COXHILBERT_MAX_MONOMIALS)")
    common.add_argument("--max-rank-rows", type=int, default=None,
                        help="rows per rank computation (default 200000 or $COXHILBERT_MAX_RANK_ROWS)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for independent degrees")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="coxhilbert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hilbert-eval", parents=[common], help="Hilbert function at one multidegree")
    p.add_argument("ideal")
    p.add_argument("--degree", type=_ints, required=True)
    p.add_argument("--allow-probabilistic", action="store_true",
                   help="rank modulo a random prime; result is marked unverified")
    p.set_defaults(func=cmd_hilbert_eval)

    p = sub.add_parser("hilbert-poly", parents=[common], help="Hilbert polynomial of a monomial ideal")
    p.add_argument("ideal")
    p.add_argument("--max-retries", type=int, default=6)
    p.set_defaults(func=cmd_hilbert_poly)

    p = sub.add_parser("certify", parents=[common], help="hypercube certificate for a constant polynomial")
    p.add_argument("ideal")
    p.add_argument("--d", type=_ints, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("gotzmann", parents=[common], help="Gotzmann number of a univariate polynomial")
    p.add_argument("--poly", type=_rationals, required=True, help="ascending coefficients c0,c1,...")
    p.set_defaults(func=cmd_gotzmann)

    p = sub.add_parser("macaulay-growth", parents=[common], help="alpha^<d> and its representation")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_macaulay_growth)

    p = sub.add_parser("slice", parents=[common], help="module slice along one axis")
    p.add_argument("ideal")
    p.add_argument("--prefix", type=_ints, required=True, help="fixed degrees of the other factors")
    p.add_argument("--u-max", type=int, required=True)
    p.add_argument("--axis", type=int, default=None, help="free axis, 1-based (default: last)")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("gasharov", parents=[common], help="Macaulay bound / persistence on a slice")
    p.add_argument("slice")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_gasharov)

    p = sub.add_parser("grid", parents=[common], help="Hilbert function on a box, as CSV")
    p.add_argument("ideal")
    p.add_argument("--lower", type=_ints, required=True)
    p.add_argument("--upper", type=_ints, required=True)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("verify", parents=[common], help="compare H with a polynomial on [d, d+horizon]")
    p.add_argument("ideal")
    p.add_argument("--d", type=_ints, required=True)
    p.add_argument("--m", type=int, default=None, help="constant polynomial")
    p.add_argument("--poly-file", default=None)
    p.add_argument("--poly-json", default=None)
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("min-point", parents=[common], help="minimum certificate point for two factors")
    p.add_argument("--poly-file", default=None)
    p.add_argument("--poly-json", default=None)
    p.add_argument("--d1", type=int, required=True)
    p.set_defaults(func=cmd_min_point)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.format is None:
        args.format = "csv" if args.command == "grid" else "json"
    try:
        args.func(args)
    except _Negative:
        return EXIT_NEGATIVE
    except (BudgetExceeded, StabilizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, NotHilbertPolynomial, InterpolationError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
