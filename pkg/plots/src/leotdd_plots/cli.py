"""Entry points: plot-cdf <cdf.csv> -o <img>, plot-sweep <sweep.csv> -o <img>."""

from __future__ import annotations

import argparse
import csv
import sys

from . import data, figures
from .data import SchemaError
from .figures import PlotSpec


def _parser(name: str, csv_help: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=name)
    parser.add_argument("csv_path", help=csv_help)
    parser.add_argument("-o", "--output", required=True,
                        help="image path; format chosen by extension (png/svg/pdf)")
    return parser


def main_cdf(argv=None) -> int:
    parser = _parser("plot-cdf", "cdf.csv written by the simulator run command")
    parser.add_argument("--x-range", nargs=2, type=float, default=(0.5, 1.5),
                        metavar=("LO", "HI"))
    args = parser.parse_args(argv)
    try:
        series = data.read_cdf(args.csv_path)
        spec = PlotSpec(args.csv_path, args.output, x_range=tuple(args.x_range))
        figures.save_figure(figures.build_cdf_figure(spec, series), args.output)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}")
    return 0


def main_sweep(argv=None) -> int:
    parser = _parser("plot-sweep", "sweep.csv written by the simulator sweep command")
    args = parser.parse_args(argv)
    try:
        series = data.read_sweep(args.csv_path)
        with open(args.csv_path, newline="") as handle:
            swept_key = next(csv.DictReader(handle))["swept_key"]
        spec = PlotSpec(args.csv_path, args.output)
        figures.save_figure(figures.build_sweep_figure(spec, series, swept_key), args.output)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main_cdf())
