"""Command-line interface: ``glhs <command> --flag value``.

Exit codes: 0 success, 1 validation failure or numerical error, 2 usage or
domain error. Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import sys

from . import _io
from .curve import build_curve
from .density import density_profile, support
from .errors import DomainError, GLHSError
from .moments import moment_table
from .simulate import SimConfig, empirical_vs_limit, simulate
from .validate import run_checks


def _int(text: str) -> int:
    """Integer flag that also accepts scientific notation such as 1e3."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value != int(value):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--flag -1e-3`` as ``--flag=-1e-3``.

    argparse only recognises plain negatives such as -1 or -0.5 as values;
    anything in scientific notation would otherwise be read as an option.
    """
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and tok.startswith("-"):
            try:
                float(tok)
            except ValueError:
                pass
            else:
                out[-1] = f"{out[-1]}={tok}"
                continue
        out.append(tok)
    return out


def _add_output(p: argparse.ArgumentParser, formats=("csv", "json"), default="csv"):
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--output", default="-", help="output path, '-' for stdout")


def _emit(obj, args) -> None:
    if args.format == "json":
        obj.to_json(args.output)
    else:
        obj.to_csv(args.output)


def cmd_moments(args) -> int:
    _emit(moment_table(args.n_max, args.t, args.method), args)
    return 0


def cmd_support(args) -> int:
    support(args.t).to_json(args.output)
    return 0


def cmd_curve(args) -> int:
    _emit(build_curve(args.t, args.samples), args)
    return 0


def cmd_density(args) -> int:
    _emit(density_profile(args.t, args.points, args.grid), args)
    return 0


def cmd_simulate(args) -> int:
    config = SimConfig(
        t=args.t,
        dim=args.dim,
        steps=args.steps,
        reps=args.reps,
        seed=args.seed,
        n_max=args.n_max,
        integrator=args.integrator,
        bins=args.bins,
    )
    result = simulate(config)
    report = empirical_vs_limit(result)
    if args.format == "json":
        _io.write_json(args.output, {"result": result.to_dict(), "report": report.to_dict()})
    else:
        report.to_csv(args.output)
        if args.histogram_output:
            result.histogram_to_csv(args.histogram_output)
    print(f"simulate: {result.wall_time:.2f} s wall time", file=sys.stderr)
    return 0


def cmd_validate(args) -> int:
    checks = run_checks(args.t)
    for c in checks:
        print(c.line())
    ok = all(c.passed for c in checks)
    print(f"validate t={args.t!r}: {'all checks passed' if ok else 'FAILED'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glhs",
        description="Limit spectral distribution of Z*Z for Brownian motion on GL(d, C).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="table of m_0..m_{n_max}")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n-max", type=_int, required=True)
    p.add_argument(
        "--method", choices=("closed-form", "contour", "density"), default="closed-form"
    )
    _add_output(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("support", help="support endpoints and junction value (JSON)")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_support)

    p = sub.add_parser("curve", help="sampled upper half of the curve")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--samples", type=_int, default=256)
    _add_output(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("density", help="density profile (x, rho)")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--points", type=_int, default=400)
    p.add_argument("--grid", choices=("log-cosine", "cosine"), default="log-cosine")
    _add_output(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("simulate", help="finite-d Monte Carlo and comparison with the limit")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--dim", type=_int, required=True)
    p.add_argument("--steps", type=_int, default=None)
    p.add_argument("--reps", type=_int, default=50)
    p.add_argument("--seed", type=_int, default=0)
    p.add_argument("--n-max", type=_int, default=3)
    p.add_argument("--integrator", choices=("expm", "euler"), default="expm")
    p.add_argument("--bins", type=_int, default=40)
    p.add_argument("--histogram-output", default=None, help="CSV path for the histogram")
    _add_output(p, default="json")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("validate", help="run the cross-oracle checks for one t")
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_attach_negative_values(list(argv)))
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"glhs {args.command}: {exc}", file=sys.stderr)
        return 2
    except GLHSError as exc:
        print(f"glhs {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
