"""Scenario orchestration: UE drops, per-scheme evaluation, CDFs, outputs.

One satellite, one snapshot: each dropped UE is evaluated under every
configured TDD scheme against the shared FDD baseline.  Every UE owns an
independent random stream derived from (seed, ue_index), so results do
not depend on evaluation order.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field

import numpy as np

from . import duplexing, geometry, sync
from .config import ScenarioConfig
from .duplexing import DegenerateLinkError
from .channel import cnr_db


@dataclass
class SchemeOutcome:
    overlap_s: float
    dl_time_fraction: float
    ratio: float  # nan on a degenerate record


@dataclass
class UeRecord:
    ue_index: int
    central_angle_rad: float
    azimuth_rad: float
    elevation_rad: float
    slant_range_km: float
    delay_s: float
    doppler_hz: float
    snr_db: float
    outcomes: dict[str, SchemeOutcome] = field(default_factory=dict)
    degenerate: bool = False


@dataclass
class CdfSeries:
    """Empirical distribution: distinct sorted values and F(value)."""

    values: list[float]
    probabilities: list[float]


@dataclass
class SchemeSummary:
    n: int
    degenerate: int
    mean_ratio: float
    median_ratio: float
    fraction_above_1: float


@dataclass
class RunResult:
    records: list[UeRecord]
    scheme_labels: list[str]
    sync_report: sync.SyncReport
    worst_timing_residual_s: float
    worst_frequency_residual_hz: float
    degenerate_count: int
    config: ScenarioConfig


def _ue_rng(seed: int, ue_index: int):
    return np.random.default_rng(np.random.SeedSequence([seed, ue_index]))


def run(config: ScenarioConfig) -> RunResult:
    """Drop ``num_ues`` terminals and score every configured scheme."""
    records = []
    worst_t = 0.0
    worst_f = 0.0
    degenerate_count = 0
    for i in range(config.num_ues):
        rng = _ue_rng(config.seed, i)
        ue = geometry.sample_ue(rng, config.geom)
        sight = geometry.sightline(config.geom, ue, config.link.carrier_hz)
        record = UeRecord(
            ue_index=i,
            central_angle_rad=ue.central_angle_rad,
            azimuth_rad=ue.azimuth_rad,
            elevation_rad=sight.elevation_rad,
            slant_range_km=sight.slant_range_km,
            delay_s=sight.delay_s,
            doppler_hz=sight.doppler_shift_hz,
            snr_db=cnr_db(config.link, sight.slant_range_km),
        )
        for scheme in config.schemes:
            share = duplexing.resource_share(scheme, sight.delay_s)
            overlap = duplexing.ue_overlap(sight.delay_s, scheme).total_length_s
            try:
                ratio = duplexing.efficiency_ratio(
                    scheme, sight, config.link, config.aging, config.fdd
                )
            except DegenerateLinkError:
                ratio = math.nan
                record.degenerate = True
            record.outcomes[scheme.label] = SchemeOutcome(
                overlap_s=overlap,
                dl_time_fraction=share.dl_time_fraction,
                ratio=ratio,
            )
        if record.degenerate:
            degenerate_count += 1
        _, t_resid = sync.estimate_timing_advance(config.geom, ue, config.gnss, rng)
        f_resid = sync.doppler_precompensation(
            config.geom, ue, config.link.carrier_hz, config.gnss, rng
        )
        worst_t = max(worst_t, t_resid)
        worst_f = max(worst_f, f_resid)
        records.append(record)
    report = sync.check_requirements(
        sync.SyncBudget(
            residual_timing_s=worst_t,
            residual_frequency_hz=worst_f,
            timing_threshold_s=config.timing_threshold_s,
            frequency_threshold_hz=config.frequency_threshold_hz,
        )
    )
    return RunResult(
        records=records,
        scheme_labels=[s.label for s in config.schemes],
        sync_report=report,
        worst_timing_residual_s=worst_t,
        worst_frequency_residual_hz=worst_f,
        degenerate_count=degenerate_count,
        config=config,
    )


def scheme_ratios(result: RunResult, label: str) -> list[float]:
    """Non-degenerate efficiency ratios of one scheme, in drop order."""
    return [
        r.outcomes[label].ratio
        for r in result.records
        if not math.isnan(r.outcomes[label].ratio)
    ]


def empirical_cdf(values: list[float]) -> CdfSeries:
    """F(x) = #(values <= x) / n evaluated at each distinct sorted value."""
    if not values:
        raise ValueError("empirical_cdf needs at least one value")
    ordered = sorted(values)
    n = len(ordered)
    out_values = []
    out_probs = []
    for idx, v in enumerate(ordered):
        if idx + 1 < n and ordered[idx + 1] == v:
            continue  # keep only the last occurrence of each distinct value
        out_values.append(v)
        out_probs.append((idx + 1) / n)
    return CdfSeries(values=out_values, probabilities=out_probs)


def fraction_above(values: list[float], threshold: float) -> float:
    """Share of values strictly greater than ``threshold``."""
    if not values:
        raise ValueError("fraction_above needs at least one value")
    return sum(1 for v in values if v > threshold) / len(values)


def summarize(result: RunResult) -> dict[str, SchemeSummary]:
    """Per-scheme statistics over non-degenerate records."""
    if not result.records:
        raise ValueError("summarize needs at least one record")
    out = {}
    for label in result.scheme_labels:
        ratios = scheme_ratios(result, label)
        degenerate = len(result.records) - len(ratios)
        if not ratios:
            raise ValueError(f"all records degenerate for scheme {label}")
        out[label] = SchemeSummary(
            n=len(ratios),
            degenerate=degenerate,
            mean_ratio=statistics.fmean(ratios),
            median_ratio=statistics.median(ratios),
            fraction_above_1=fraction_above(ratios, 1.0),
        )
    return out


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def records_csv_lines(result: RunResult) -> list[str]:
    header = [
        "ue_index",
        "central_angle_deg",
        "elevation_deg",
        "slant_range_km",
        "delay_ms",
        "doppler_khz",
        "snr_db",
    ]
    for label in result.scheme_labels:
        header += [f"{label}_overlap_ms", f"{label}_ratio"]
    lines = [",".join(header)]
    for r in result.records:
        row = [
            str(r.ue_index),
            _fmt(math.degrees(r.central_angle_rad)),
            _fmt(math.degrees(r.elevation_rad)),
            _fmt(r.slant_range_km),
            _fmt(r.delay_s * 1e3),
            _fmt(r.doppler_hz / 1e3),
            _fmt(r.snr_db),
        ]
        for label in result.scheme_labels:
            o = r.outcomes[label]
            row += [_fmt(o.overlap_s * 1e3), _fmt(o.ratio)]
        lines.append(",".join(row))
    return lines


def cdf_csv_lines(result: RunResult) -> list[str]:
    lines = ["scheme,ratio,cumulative_probability"]
    for label in result.scheme_labels:
        series = empirical_cdf(scheme_ratios(result, label))
        for v, p in zip(series.values, series.probabilities):
            lines.append(f"{label},{_fmt(v)},{_fmt(p)}")
    return lines


def summary_dict(result: RunResult) -> dict:
    """Summary statistics and the sync report as one JSON-ready mapping."""
    stats = summarize(result)
    rounded = lambda x: float(_fmt(x))
    report = result.sync_report
    return {
        "num_ues": result.config.num_ues,
        "seed": result.config.seed,
        "degenerate_records": result.degenerate_count,
        "schemes": {
            label: {
                "n": s.n,
                "degenerate": s.degenerate,
                "mean_ratio": rounded(s.mean_ratio),
                "median_ratio": rounded(s.median_ratio),
                "fraction_above_1": rounded(s.fraction_above_1),
            }
            for label, s in stats.items()
        },
        "sync": {
            "worst_timing_residual_us": rounded(result.worst_timing_residual_s * 1e6),
            "worst_frequency_residual_hz": rounded(result.worst_frequency_residual_hz),
            "timing_threshold_us": rounded(result.config.timing_threshold_s * 1e6),
            "frequency_threshold_hz": rounded(result.config.frequency_threshold_hz),
            "timing_pass": report.timing_pass,
            "frequency_pass": report.frequency_pass,
            "timing_margin_us": rounded(report.timing_margin_s * 1e6),
            "frequency_margin_hz": rounded(report.frequency_margin_hz),
            "threshold_note": (
                "thresholds are configuration inputs modeled on terrestrial "
                "TDD requirements, not standardized values"
            ),
        },
    }


def write_outputs(result: RunResult, out_dir) -> dict[str, str]:
    """Write records.csv, cdf.csv, and summary.json; returns their paths."""
    from pathlib import Path

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}
    for name, lines in (
        ("records.csv", records_csv_lines(result)),
        ("cdf.csv", cdf_csv_lines(result)),
    ):
        path = out / name
        path.write_text("\n".join(lines) + "\n", encoding="ascii")
        paths[name] = str(path)
    summary_path = out / "summary.json"
    summary_path.write_text(
        json.dumps(summary_dict(result), indent=2, sort_keys=True) + "\n",
        encoding="ascii",
    )
    paths["summary.json"] = str(summary_path)
    return paths
