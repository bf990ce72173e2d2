"""Command line front end: ``peribc <study> [flags]``.

Exit status is 0 on success, 1 for bad configuration or I/O trouble and
2 when a solve fails numerically.
"""
import argparse
import sys

from .errors import ConfigurationError, NumericalError
from .problem import Case
from .studies import (
    DEFAULT_DELTA_METHODS,
    DeltaConvergence,
    EdmCorrection,
    MConvergence,
    SolveOnce,
    SteepGradient,
    StudySpec,
    fmt,
    run_study,
)

COMMANDS = ("delta-conv", "m-conv", "edm-correction", "steep-gradient", "solve")


class _Parser(argparse.ArgumentParser):
    # usage errors are configuration errors; 2 is reserved for numerics
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--case", default=None, choices=[c.value for c in Case],
                   help="manufactured solution")
    p.add_argument("--method", action="append", default=None,
                   help="method label (LLEM, EDM, EDM_full, EDM_I, EDM_II, VHM); repeatable")
    p.add_argument("--n", type=int, nargs="+", default=None, help="grid size(s)")
    p.add_argument("--m", type=int, nargs="+", default=None, help="horizon ratio(s) delta/h")
    p.add_argument("--eps", type=float, default=None, help="boundary layer width")
    p.add_argument("--delta", type=float, default=None, help="fixed horizon for m-conv")
    p.add_argument("--out", default=".", metavar="DIR", help="output directory")
    p.add_argument("--profiles", action="store_true", help="write pointwise error files")
    p.add_argument("--dump-matrix", action="store_true", help="write the dense system (solve)")


def build_parser():
    parser = _Parser(prog="peribc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "delta-conv": "relative errors while delta = 2h shrinks",
        "m-conv": "VHM errors at fixed delta while h = delta/m shrinks",
        "edm-correction": "plain and corrected EDM on the quartic case",
        "steep-gradient": "absolute errors for the boundary-layer solution",
        "solve": "single solve with solution and optional matrix dump",
    }
    for name in COMMANDS:
        _common(sub.add_parser(name, help=helps[name]))
    return parser


def _study(args):
    cmd = args.command
    if cmd == "delta-conv":
        kw = {"case": Case(args.case or "quadratic")}
        if args.method:
            kw["methods"] = tuple(args.method)
        if args.n:
            kw["n_list"] = tuple(args.n)
        return DeltaConvergence(**kw)
    if cmd == "m-conv":
        kw = {}
        if args.delta is not None:
            kw["delta"] = args.delta
        if args.m:
            kw["m_list"] = tuple(args.m)
        return MConvergence(**kw)
    if cmd == "edm-correction":
        return EdmCorrection(tuple(args.n)) if args.n else EdmCorrection()
    if cmd == "steep-gradient":
        return SteepGradient(0.1 if args.eps is None else args.eps,
                             tuple(args.n) if args.n else None)
    if args.n and len(args.n) > 1 or args.m and len(args.m) > 1:
        raise ConfigurationError("solve takes a single --n and --m")
    if args.method and len(args.method) > 1:
        raise ConfigurationError("solve takes a single --method")
    case = Case(args.case or "quadratic")
    return SolveOnce(case=case,
                     method=args.method[0] if args.method else "VHM",
                     n=args.n[0] if args.n else 8,
                     m=args.m[0] if args.m else 2,
                     epsilon=args.eps if case is Case.EXPONENTIAL else None)


def _report(result, out):
    if result.study == "solve":
        rep = result.reports[0]
        out.write(f"max_relative {fmt(rep.max_relative) or 'n/a'}\n")
        out.write(f"max_absolute {fmt(rep.max_absolute)}\n")
    else:
        out.write(",".join(result.header) + "\n")
        for row in result.rows:
            out.write(",".join(fmt(v) for v in row) + "\n")
        for name, rates in result.rates.items():
            shown = " ".join("exact" if r is None else f"{r:.3f}" for r in rates)
            out.write(f"rates {name}: {shown}\n")
    out.write(f"wrote {result.path}\n")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        spec = StudySpec(_study(args), args.out, args.profiles, args.dump_matrix)
        result = run_study(spec)
    except (ConfigurationError, OSError) as exc:
        print(f"peribc: error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"peribc: numerical failure: {exc}", file=sys.stderr)
        return 2
    _report(result, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
