"""Command-line front end.

Subcommands:
  run             execute an experiment matrix from a YAML config file
  penalty-sample  fixed-weight penalty distributions (plot-ready CSV)
  reference       exact majority/bound reference table (CSV)
  analyze         full property report for a function file

Exit codes: 0 success, 1 usage/config error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import asdict, replace
from pathlib import Path

import numpy as np

from . import experiment
from .experiment import ExperimentConfigError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monoevo",
                     description="Evolve monotone Boolean functions with high nonlinearity.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute an experiment matrix")
    p_run.add_argument("--config", required=True, help="YAML experiment description")
    p_run.add_argument("--seed", type=int, help="override the base seed")
    p_run.add_argument("--runs", type=int, help="override runs per cell")
    p_run.add_argument("--budget", type=int, help="override the evaluation budget")
    p_run.add_argument("--parallelism", type=int, help="override worker count")
    p_run.add_argument("--out", default="results", help="output directory")

    p_pen = sub.add_parser("penalty-sample", help="penalty distribution by Hamming weight")
    p_pen.add_argument("--n", type=int, required=True)
    p_pen.add_argument("--samples", type=int, default=200, help="samples per weight")
    p_pen.add_argument("--variant", choices=["fit1", "fit2", "fit3"], default="fit1")
    p_pen.add_argument("--seed", type=int, default=0)
    p_pen.add_argument("--out", help="CSV file (default: stdout)")

    p_ref = sub.add_parser("reference", help="exact reference values and bounds")
    p_ref.add_argument("--n-from", type=int, default=5)
    p_ref.add_argument("--n-to", type=int, default=14)
    p_ref.add_argument("--out", help="CSV file (default: stdout)")

    p_an = sub.add_parser("analyze", help="report the properties of a function file")
    p_an.add_argument("file", help="truth-table text, GP prefix expression, or run JSON")
    return parser


def _cmd_run(args) -> int:
    config = experiment.load_experiment_config(args.config)
    for name in ("seed", "runs", "budget", "parallelism"):
        value = getattr(args, name)
        if value is not None:
            setattr(config, name, value)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    result = experiment.run_experiment(config, out)
    print(f"completed {config.runs} run(s) for {result['cells']} cell(s); "
          f"artifacts in {out}")
    return 0


def _write_rows(rows, columns, out_path):
    if out_path:
        experiment.write_csv(out_path, rows, columns)
        print(f"wrote {out_path}")
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)


def _cmd_penalty_sample(args) -> int:
    if args.n < 1 or args.n > 16:
        raise _UsageError("penalty-sample needs 1 <= n <= 16")
    if args.samples < 1:
        raise _UsageError("samples must be positive")
    rng = np.random.default_rng(args.seed)
    stats = experiment.sample_penalties(args.n, args.samples, args.variant, rng)
    rows = [{"weight": s.weight, "mean": repr(s.mean), "min": repr(s.min),
             "max": repr(s.max), "stddev": repr(s.stddev)} for s in stats]
    _write_rows(rows, ["weight", "mean", "min", "max", "stddev"], args.out)
    return 0


def _cmd_reference(args) -> int:
    try:
        rows = experiment.reference_rows(args.n_from, args.n_to)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    _write_rows(rows, experiment.REFERENCE_COLUMNS, args.out)
    return 0


def _cmd_analyze(args) -> int:
    try:
        tt, source = experiment.load_function_file(args.file)
    except (OSError, ValueError) as exc:
        print(f"cannot analyze {args.file}: {exc}", file=sys.stderr)
        return 1
    report = experiment.analyze_table(tt)
    print(f"source: {source}")
    for key, value in report.items():
        print(f"{key}: {value}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "penalty-sample":
            return _cmd_penalty_sample(args)
        if args.command == "reference":
            return _cmd_reference(args)
        return _cmd_analyze(args)
    except (_UsageError, ExperimentConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failure
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
