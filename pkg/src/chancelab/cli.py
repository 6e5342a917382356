"""Command-line front end.

Subcommands `classic`, `dist`, `limit`, `mc`, `markov` and `fit` replay
the registered regression scenarios of one area; `reproduce-all` runs the
whole suite.  `table` emits bit-stable CSV (a one-sided normal table, a
sampled density grid, or an urn-chain transition matrix).  Pass
`--figures DIR` to render matplotlib PNGs alongside the delimited output.

Exit codes: 0 all scenarios passed, 1 at least one failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import distributions as dist
from . import markov
from .scenarios import GROUPS, REGISTRY, reports_to_json, reproduce_all, run_scenario

DEFAULT_SEED = 0x5EED


def _print_reports(reports, fmt: str, figures: str | None) -> int:
    if fmt == "json":
        sys.stdout.write(reports_to_json(reports))
    else:
        width = max(len(r.scenario) for r in reports)
        for r in reports:
            flag = "PASS" if r.passed else "FAIL"
            print(
                f"[{flag}] {r.scenario:<{width}}  {r.computed}"
                f"  (expected {r.expected}; {r.elapsed_ms:.0f} ms)"
            )
        failed = sum(not r.passed for r in reports)
        print(
            f"-- {len(reports) - failed}/{len(reports)} scenarios passed"
        )
    if figures:
        from .plotting import plot_reports

        outdir = Path(figures)
        outdir.mkdir(parents=True, exist_ok=True)
        plot_reports(reports, outdir / "scenario-report.png")
    return 0 if all(r.passed for r in reports) else 1


def _run_group(args, group: str | None) -> int:
    if args.scenario:
        if args.scenario not in REGISTRY:
            print(f"error: unknown scenario {args.scenario!r}", file=sys.stderr)
            return 2
        if group and REGISTRY[args.scenario].group != group:
            print(
                f"error: scenario {args.scenario!r} is not in group {group!r}",
                file=sys.stderr,
            )
            return 2
        reports = [run_scenario(args.scenario, seed=args.seed, reps=args.reps)]
    else:
        reports = reproduce_all(seed=args.seed, group=group, reps=args.reps)
    return _print_reports(reports, args.format, args.figures)


def _family_from_args(args) -> dist.Distribution:
    fam = args.family
    if fam == "uniform":
        return dist.Uniform(args.half_width)
    if fam == "triangular":
        return dist.Triangular(args.half_width)
    if fam == "normal":
        return dist.Normal(args.loc, args.scale)
    if fam == "half-cauchy":
        return dist.HalfCauchy()
    raise ValueError(f"unknown family {fam!r}")


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_table(args) -> int:
    figures_dir = None
    if args.figures:
        figures_dir = Path(args.figures)
        figures_dir.mkdir(parents=True, exist_ok=True)

    if args.what == "normal-table":
        if args.step <= 0:
            print("error: need step > 0", file=sys.stderr)
            return 2
        # an empty range (stop < start) emits the header row only
        count = max(0, int(round((args.stop - args.start) / args.step)) + 1)
        zs = [args.start + i * args.step for i in range(count)]
        zs = [z for z in zs if z <= args.stop + 1e-12]
        lines = ["z,one_sided"]
        vals = [dist.standard_normal_one_sided(z) for z in zs]
        lines += [f"{z:.2f},{v:.10f}" for z, v in zip(zs, vals)]
        _emit("\n".join(lines) + "\n", args.output)
        if figures_dir:
            from .plotting import plot_normal_table

            plot_normal_table(zs, vals, figures_dir / "normal-table.png")
        return 0

    if args.what == "grid-density":
        try:
            d = _family_from_args(args)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        xs = np.linspace(args.lo, args.hi, args.points)
        lines = ["x,density"]
        ys = [d.pdf(float(x)) for x in xs]
        lines += [f"{x:.12g},{y:.12g}" for x, y in zip(xs, ys)]
        _emit("\n".join(lines) + "\n", args.output)
        if figures_dir:
            from .plotting import plot_grid_density

            plot_grid_density(
                xs, ys, figures_dir / "grid-density.png", title=args.family
            )
        return 0

    # matrix
    if args.urn_balls < 1:
        print("error: need at least one ball per urn", file=sys.stderr)
        return 2
    chain = markov.bernoulli_laplace_chain(args.urn_balls)
    _emit(chain.to_csv(), args.output)
    if figures_dir:
        from .plotting import plot_matrix

        plot_matrix(
            chain.states,
            chain.rows,
            figures_dir / "transition-matrix.png",
            title=f"Two-urn interchange chain (n = {args.urn_balls})",
        )
    return 0


def _add_common(parser, suppress: bool):
    # the same flags are accepted before or after the subcommand; the
    # subparser copies default to SUPPRESS so they never clobber values
    # already parsed at the top level
    parser.add_argument(
        "--seed",
        type=lambda s: int(s, 0),
        default=argparse.SUPPRESS if suppress else DEFAULT_SEED,
        help="64-bit master seed for statistical scenarios (default 0x5EED)",
    )
    parser.add_argument(
        "--format",
        choices=("json", "table"),
        default=argparse.SUPPRESS if suppress else "table",
        help="report rendering (default table)",
    )
    parser.add_argument(
        "--reps",
        type=int,
        default=argparse.SUPPRESS if suppress else None,
        help="replication override for Monte Carlo scenarios",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chancelab",
        description="Classical probability laboratory regression CLI",
    )
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    for group in GROUPS:
        p = sub.add_parser(group, help=f"run the {group} scenarios")
        _add_common(p, suppress=True)
        p.add_argument("--scenario", help="run a single scenario id")
        p.add_argument("--figures", help="directory for PNG figures")
        p.set_defaults(func=lambda a, g=group: _run_group(a, g))

    p = sub.add_parser("reproduce-all", help="run every scenario")
    _add_common(p, suppress=True)
    p.add_argument("--scenario", help="run a single scenario id")
    p.add_argument("--figures", help="directory for PNG figures")
    p.set_defaults(func=lambda a: _run_group(a, None))

    p = sub.add_parser("table", help="emit CSV tables")
    _add_common(p, suppress=True)
    p.add_argument(
        "what", choices=("normal-table", "grid-density", "matrix")
    )
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=5.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument(
        "--family",
        choices=("uniform", "triangular", "normal", "half-cauchy"),
        default="normal",
    )
    p.add_argument("--half-width", type=float, default=1.0)
    p.add_argument("--loc", type=float, default=0.0)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--lo", type=float, default=-4.0)
    p.add_argument("--hi", type=float, default=4.0)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--urn-balls", type=int, default=2)
    p.add_argument("--output", help="write to file instead of stdout")
    p.add_argument("--figures", help="directory for PNG figures")
    p.set_defaults(func=_cmd_table)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
