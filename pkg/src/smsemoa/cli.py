"""Command line entry point: run, sweep, summarize, verify."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import verify as verify_mod
from .harness import (
    apply_overrides,
    format_summary,
    parse_config,
    read_records,
    run_experiment,
    summarize,
    sweep_preset,
)


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output CSV path (overrides the config)")
    p.add_argument("--threads", type=int, default=1, help="worker threads")
    p.add_argument("--seed", type=int, help="master seed override")
    p.add_argument("--runs", type=int, help="independent runs per cell")
    p.add_argument(
        "--max-iterations", type=int, dest="max_iterations",
        help="iteration cap per run (default: analytic bound x 100)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smsemoa",
        description="SMS-EMOA population-update strategies on the jump benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one experiment config file")
    p_run.add_argument("--config", required=True, help="flat key = value config file")
    _add_run_flags(p_run)

    p_sweep = sub.add_parser("sweep", help="execute a built-in comparison sweep")
    p_sweep.add_argument("preset", choices=("fig2", "fig3"))
    _add_run_flags(p_sweep)

    p_sum = sub.add_parser("summarize", help="print statistics for a results CSV")
    p_sum.add_argument("csv", help="CSV produced by run/sweep")

    p_ver = sub.add_parser("verify", help="run the oracle and property checks")
    p_ver.add_argument(
        "--quick", action="store_true", help="reduced sizes for a fast smoke test"
    )
    return parser


def _execute(config, args) -> int:
    config = apply_overrides(
        config, out=args.out, seed=args.seed, runs=args.runs,
        max_iterations=args.max_iterations,
    )
    if config.out is None:
        print("error: no output path (use --out or set out in the config)", file=sys.stderr)
        return 2
    records = run_experiment(config, threads=args.threads)
    print(f"{len(records)} records in {config.out}")
    print(format_summary(summarize(records)))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "run":
        config = parse_config(Path(args.config).read_text())
        return _execute(config, args)

    if args.command == "sweep":
        return _execute(sweep_preset(args.preset), args)

    if args.command == "summarize":
        print(format_summary(summarize(read_records(args.csv))))
        return 0

    if args.command == "verify":
        results = verify_mod.run_all(quick=args.quick)
        for res in results:
            print(f"[{'PASS' if res.ok else 'FAIL'}] {res.name}: {res.detail}")
        return 0 if all(r.ok for r in results) else 1

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
