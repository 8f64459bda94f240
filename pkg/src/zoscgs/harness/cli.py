"""Command-line entry point: ``zoscgs run | sweep | plot``.

Exit codes: 0 success, 2 configuration error, 3 runtime numeric error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ..errors import BudgetError, ConfigError, NumericError
from .config import load_config
from .plotting import emit_plots
from .runner import run_experiment, sweep_batch

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key = value file overriding the defaults")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--budget", type=float, help="maximum oracle evaluations per run")
    parser.add_argument("--dim", type=int)
    parser.add_argument("--method", action="append", help="zo-scgs or zscg; repeatable or comma separated")
    parser.add_argument("--batch", help="'theory' or a fixed batch size")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="any other config key")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zoscgs", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the configured methods and write CSV traces")
    _common(run)
    run.add_argument("--plot", action="store_true", help="also write SVG charts of the traces")

    sweep = sub.add_parser("sweep", help="fixed-batch sweep plus the theory schedule")
    _common(sweep)
    sweep.add_argument("--batches", default="10,100,1000", help="comma-separated fixed batch sizes")

    plot = sub.add_parser("plot", help="render CSV traces as an SVG line chart")
    plot.add_argument("traces", nargs="+", help="trace CSV files")
    plot.add_argument("--axes", choices=("vs_evaluations", "vs_iterations"), default="vs_evaluations")
    plot.add_argument("--linear-y", action="store_true", help="linear instead of log10 gap axis")
    plot.add_argument("--title", default="")
    plot.add_argument("--out", default="plot.svg")
    return parser


def _config_from_args(args):
    overrides = {}
    for item in args.set:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        overrides[key.strip()] = value.strip()
    if args.method:
        overrides["methods"] = ",".join(args.method)
    for key in ("seed", "dim", "batch", "out"):
        value = getattr(args, key)
        if value is not None:
            overrides[key] = str(value)
    if args.budget is not None:
        overrides["budget"] = str(int(args.budget))
    return load_config(args.config, **overrides)


def _report(result) -> None:
    for tr, path in zip(result.traces, result.files):
        last = tr.rows[-1]
        print(f"{path}: k={last.k} evaluations={last.evaluations} gap={last.gap:.6e}")
    for name, message in result.errors.items():
        print(f"{name}: skipped ({message})", file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "plot":
            path = emit_plots(
                [Path(p) for p in args.traces], axes=args.axes, log_y=not args.linear_y, path=args.out, title=args.title
            )
            print(path)
            return EXIT_OK
        cfg = _config_from_args(args)
        if args.command == "run":
            result = run_experiment(cfg)
            if args.plot:
                for axes in ("vs_evaluations", "vs_iterations"):
                    result.plots.append(emit_plots(result.traces, axes=axes, path=Path(cfg.out) / f"run_{axes}.svg"))
        else:
            values = [v for v in args.batches.split(",") if v.strip()]
            try:
                values = [int(v) for v in values]
            except ValueError:
                raise ConfigError(f"--batches must be integers, got {args.batches!r}") from None
            result = sweep_batch(cfg, values)
        _report(result)
        for path in result.plots:
            print(path)
    except (ConfigError, BudgetError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericError, FloatingPointError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
