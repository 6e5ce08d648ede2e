"""Readers for the simulator's CSV contracts. No quantity is recomputed
here; everything plotted comes verbatim from the files."""

from __future__ import annotations

import csv
from pathlib import Path


class SchemaError(ValueError):
    """The file exists but does not follow the documented CSV contract."""


CDF_COLUMNS = ["scheme", "ratio", "cumulative_probability"]
SWEEP_COLUMNS = [
    "swept_key",
    "value",
    "scheme",
    "n",
    "degenerate",
    "fraction_above_1",
    "mean_ratio",
    "median_ratio",
]


def _rows(path: str | Path, required: list[str]) -> list[dict[str, str]]:
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [c for c in required if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing column(s) {', '.join(missing)}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def read_cdf(path: str | Path) -> dict[str, tuple[list[float], list[float]]]:
    """Per-scheme (ratios, cumulative probabilities) in file order."""
    series: dict[str, tuple[list[float], list[float]]] = {}
    for i, row in enumerate(_rows(path, CDF_COLUMNS), start=2):
        scheme = row["scheme"]
        if not scheme:
            raise SchemaError(f"{path}: empty scheme on line {i}")
        try:
            ratio = float(row["ratio"])
            prob = float(row["cumulative_probability"])
        except (TypeError, ValueError):
            raise SchemaError(f"{path}: non-numeric value on line {i}") from None
        xs, ys = series.setdefault(scheme, ([], []))
        xs.append(ratio)
        ys.append(prob)
    return series


def read_sweep(path: str | Path) -> dict[str, tuple[list[float], list[float]]]:
    """Per-scheme (swept values, fraction above one), sorted by value."""
    series: dict[str, list[tuple[float, float]]] = {}
    for i, row in enumerate(_rows(path, SWEEP_COLUMNS), start=2):
        scheme = row["scheme"]
        if not scheme:
            raise SchemaError(f"{path}: empty scheme on line {i}")
        try:
            value = float(row["value"])
            fraction = float(row["fraction_above_1"])
        except (TypeError, ValueError):
            raise SchemaError(f"{path}: non-numeric value on line {i}") from None
        series.setdefault(scheme, []).append((value, fraction))
    out = {}
    for scheme, points in series.items():
        points.sort()
        out[scheme] = ([v for v, _ in points], [f for _, f in points])
    return out


def value_at_probability(xs: list[float], ys: list[float], target: float) -> float:
    """Smallest plotted ratio whose cumulative probability reaches ``target``."""
    for x, y in zip(xs, ys):
        if y >= target:
            return x
    return xs[-1]
