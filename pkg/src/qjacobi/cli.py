"""Command-line front end.

Exit codes: 0 verified, 1 a claim was violated, 2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import core
from . import zeros as Z
from .errors import QJacobiError
from .interlace import COPRIME_TOL, ClaimId, check
from .reference import TABLE1_TOL
from .report import (
    OutputFormat,
    ReportRow,
    SweepConfig,
    TABLE1_COLUMNS,
    render,
    run_sweep,
    table1_rows,
    verdict_row,
)

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(records, fmt, columns=None, out=None):
    (out or sys.stdout).write(render(records, fmt or "json", columns))


def cmd_eval(args):
    params = core.classify(args.alpha, args.beta)
    if args.method == "sum":
        value = core.eval_sum(args.n, params, args.x, compensated=True)
    else:
        value = core.eval_recurrence(args.n, params, args.x)
    value = float(value)
    if args.format is None:
        print(repr(value))
    else:
        _emit([{"n": args.n, "alpha": params.alpha, "beta": params.beta, "x": args.x, "value": value}], args.format)
    return EXIT_OK


def cmd_zeros(args):
    params = core.classify(args.alpha, args.beta)
    zs = Z.oracle_zeros(args.n, params) if args.oracle else Z.zeros(args.n, params)
    rec = {"n": zs.n, "alpha": params.alpha, "beta": params.beta, "regime": params.regime.value,
           "method": zs.method.value, "zeros": list(zs.zeros), "residuals": list(zs.residuals)}
    if args.format == "csv":
        recs = [{"index": i + 1, "zero": z, "residual": r} for i, (z, r) in enumerate(zip(zs.zeros, zs.residuals))]
        _emit(recs, "csv", ("index", "zero", "residual"))
    else:
        _emit([rec], "json")
    return EXIT_OK


def cmd_bounds(args):
    params = core.classify(args.alpha, args.beta)
    bc = Z.bound_chain(args.n, params)
    rec = {"n": args.n, "alpha": params.alpha, "beta": params.beta, "loose_lower": bc.loose_lower,
           "tight_lower": bc.tight_lower, "upper": bc.upper, "delta": Z.askey_delta(args.n, params)}
    _emit([rec], args.format)
    return EXIT_OK


def cmd_verify(args):
    params = core.classify(args.alpha, args.beta)
    tol = COPRIME_TOL if args.tol is None else args.tol
    v = check(args.claim, args.n, params, t=args.t, k=args.k, tol=tol)
    row = verdict_row(v, args.n, params, args.t).as_dict()
    if args.format == "csv":
        _emit([row], "csv", ReportRow.FIELDS)
    else:
        row["notes"] = v.notes
        _emit([row], "json")
    if v.status == "fails":
        return EXIT_VIOLATED
    if v.status in ("vacuous", "boundary") and not args.allow_vacuous:
        print(f"{v.status}: {v.notes}", file=sys.stderr)
        return EXIT_VIOLATED
    return EXIT_OK


def cmd_table1(args):
    tol = TABLE1_TOL if args.tol is None else args.tol
    rows, ok = table1_rows(tol)
    _emit(rows, args.format or "csv", TABLE1_COLUMNS)
    return EXIT_OK if ok else EXIT_VIOLATED


def _sweep_config(args) -> SweepConfig:
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
    else:
        data = {}
    if args.claims is not None:
        data["claims"] = args.claims
    for key in ("alpha_list", "beta_list", "t_list"):
        if getattr(args, key) is not None:
            data[key] = getattr(args, key)
    if args.n_min is not None or args.n_max is not None:
        if args.n_min is None or args.n_max is None:
            raise UsageError("--n-min and --n-max go together")
        data["n_range"] = list(range(args.n_min, args.n_max + 1))
    if args.parallelism is not None:
        data["parallelism"] = args.parallelism
    if args.format is not None:
        data["output_format"] = args.format
    if args.tol is not None:
        data["tol"] = args.tol
    missing = [k for k in ("claims", "alpha_list", "beta_list", "n_range") if k not in data]
    if missing:
        raise UsageError(f"sweep needs {', '.join(missing)} (flags or --config)")
    try:
        return SweepConfig.from_dict(data)
    except (TypeError, KeyError) as exc:
        raise UsageError(f"bad sweep config: {exc}") from None


def cmd_sweep(args):
    cfg = _sweep_config(args)
    result = run_sweep(cfg)
    text = render([r.as_dict() for r in result.rows], cfg.output_format, ReportRow.FIELDS)
    if args.output:
        Path(args.output).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)
    print(result.summary(), file=sys.stderr)
    return EXIT_VIOLATED if result.any_failure else EXIT_OK


def _global_flags(parser, default):
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=default)
    parser.add_argument("--tol", type=float, default=default)
    parser.add_argument("--allow-vacuous", action="store_true",
                        default=False if default is None else default)


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand; the copy on
    # each subparser only writes when the flag is given there
    common = _Parser(add_help=False)
    _global_flags(common, argparse.SUPPRESS)

    p = _Parser(prog="qjacobi", description=__doc__.splitlines()[0])
    _global_flags(p, None)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def params(sp, need_n=True):
        if need_n:
            sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--alpha", type=float, required=True)
        sp.add_argument("--beta", type=float, required=True)

    sp = sub.add_parser("eval", parents=[common], help="evaluate P_n^(alpha,beta)(x)")
    params(sp)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--method", choices=["recurrence", "sum"], default="recurrence")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("zeros", parents=[common], help="all real zeros")
    params(sp)
    sp.add_argument("--oracle", action="store_true", help="sign-scan oracle (n <= 12)")
    sp.set_defaults(func=cmd_zeros)

    sp = sub.add_parser("bounds", parents=[common], help="bounds for the zero below -1")
    params(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("verify", parents=[common], help="check one claim at one point")
    sp.add_argument("--claim", required=True, choices=[c.value for c in ClaimId])
    params(sp)
    sp.add_argument("--t", type=float)
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table1", parents=[common], help="reproduce the published n=15 bounds")
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("sweep", parents=[common], help="run claims over a parameter grid")
    sp.add_argument("--config", help="JSON file with SweepConfig fields")
    sp.add_argument("--claims", nargs="*")
    sp.add_argument("--alpha-list", dest="alpha_list", nargs="+", type=float)
    sp.add_argument("--beta-list", dest="beta_list", nargs="+", type=float)
    sp.add_argument("--t-list", dest="t_list", nargs="+", type=float)
    sp.add_argument("--n-min", type=int)
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--parallelism", type=int)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (QJacobiError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
