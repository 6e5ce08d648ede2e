"""Command-line front end: run scenarios, print tables, sweep parameters.

Exit codes: 0 success, 1 configuration/validation error, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import duplexing, experiment, geometry, sync
from .config import SWEEPABLE_KEYS, ConfigError, ScenarioConfig, load_config, parse_overrides
from .duplexing import SchemeKind

ENV_CONFIG = "LEOTDD_CONFIG"


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leotdd",
        description="TDD vs FDD downlink resource-efficiency simulator for a LEO satellite",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default=os.environ.get(ENV_CONFIG),
                       help=f"path to the INI scenario config (default: ${ENV_CONFIG})")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="SECTION.KEY=VALUE", help="override one config key (repeatable)")
        p.add_argument("--seed", type=int, default=None, help="override experiment.seed")

    p_run = sub.add_parser("run", help="run the UE drop and write records/cdf/summary")
    common(p_run)
    p_run.add_argument("--out", default="out", help="output directory")

    p_geom = sub.add_parser("geom", help="print the headline geometry figures")
    common(p_geom)

    p_sync = sub.add_parser("sync", help="print the synchronization error budget")
    common(p_sync)

    p_sweep = sub.add_parser("sweep", help="re-run the scenario over a grid of one key")
    common(p_sweep)
    p_sweep.add_argument("--out", default="out", help="output directory")
    p_sweep.add_argument("--key", required=True,
                         help=f"sweepable key: one of {sorted(SWEEPABLE_KEYS)}")
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated numeric values to sweep")
    return parser


def _load(args) -> ScenarioConfig:
    if not args.config:
        raise ConfigError("config", f"no config path given and ${ENV_CONFIG} is unset")
    overrides = parse_overrides(args.overrides)
    if args.seed is not None:
        overrides["experiment.seed"] = str(args.seed)
    return load_config(args.config, overrides)


def _cmd_run(args) -> int:
    config = _load(args)
    result = experiment.run(config)
    paths = experiment.write_outputs(result, args.out)
    summary = experiment.summary_dict(result)
    print(f"{'scheme':<12} {'n':>6} {'fraction>1':>10} {'mean':>8} {'median':>8}")
    for label in result.scheme_labels:
        s = summary["schemes"][label]
        print(f"{label:<12} {s['n']:>6} {_fmt(s['fraction_above_1']):>10} "
              f"{_fmt(s['mean_ratio']):>8} {_fmt(s['median_ratio']):>8}")
    if result.degenerate_count:
        print(f"degenerate records: {result.degenerate_count}")
    for name in ("records.csv", "cdf.csv", "summary.json"):
        print(f"wrote {paths[name]}")
    return 0


def _cmd_geom(args) -> int:
    config = _load(args)
    geom = config.geom
    d_min = geom.altitude_km
    d_max = geometry.max_slant_range(geom)
    delay_min = geometry.propagation_delay(d_min)
    delay_max = geometry.propagation_delay(d_max)
    v_orb = geometry.orbital_velocity(geom)
    max_closing = v_orb * geom.earth_radius_km / (geom.earth_radius_km + geom.altitude_km) \
        * math.cos(geom.min_elevation_rad)
    rows = [
        ("orbital_velocity_km_s", v_orb),
        ("coverage_radius_km", geometry.coverage_radius(geom)),
        ("min_slant_range_km", d_min),
        ("max_slant_range_km", d_max),
        ("min_delay_ms", delay_min * 1e3),
        ("max_delay_ms", delay_max * 1e3),
        ("differential_delay_ms", geometry.differential_delay(geom) * 1e3),
        ("required_guard_period_ms", duplexing.required_guard_period(delay_max) * 1e3),
        ("max_doppler_khz", geometry.doppler_shift(max_closing, config.link.carrier_hz) / 1e3),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {_fmt(value)}")
    return 0


def _cmd_sync(args) -> int:
    config = _load(args)
    worst_t = 0.0
    worst_f = 0.0
    for i in range(config.num_ues):
        rng = experiment._ue_rng(config.seed, i)
        ue = geometry.sample_ue(rng, config.geom)
        _, t_resid = sync.estimate_timing_advance(config.geom, ue, config.gnss, rng)
        f_resid = sync.doppler_precompensation(
            config.geom, ue, config.link.carrier_hz, config.gnss, rng
        )
        worst_t = max(worst_t, t_resid)
        worst_f = max(worst_f, f_resid)
    report = sync.check_requirements(
        sync.SyncBudget(
            residual_timing_s=worst_t,
            residual_frequency_hz=worst_f,
            timing_threshold_s=config.timing_threshold_s,
            frequency_threshold_hz=config.frequency_threshold_hz,
        )
    )
    print(f"draws                        {config.num_ues}")
    print(f"worst_timing_residual_us     {_fmt(worst_t * 1e6)}")
    print(f"timing_threshold_us          {_fmt(config.timing_threshold_s * 1e6)}")
    print(f"timing_axis                  {'pass' if report.timing_pass else 'FAIL'} "
          f"(margin {_fmt(report.timing_margin_s * 1e6)} us)")
    print(f"worst_frequency_residual_hz  {_fmt(worst_f)}")
    print(f"frequency_threshold_hz       {_fmt(config.frequency_threshold_hz)}")
    print(f"frequency_axis               {'pass' if report.frequency_pass else 'FAIL'} "
          f"(margin {_fmt(report.frequency_margin_hz)} Hz)")
    print(f"random_access_window_ms      {_fmt(sync.random_access_window(config.geom) * 1e3)}")
    print("note: thresholds are configuration inputs, not standardized values")
    return 0


def _sweep_overrides(config: ScenarioConfig, key: str, value: float) -> dict[str, str]:
    if key == "sic_db":
        return {
            f"scheme.{s.label}.sic_db": str(value)
            for s in config.schemes
            if s.kind is SchemeKind.TDD_POU
        }
    if key == "doppler_spread":
        return {"aging.doppler_spread_hz": str(value)}
    if key == "frame_length":
        return {f"scheme.{s.label}.frame_ms": str(value) for s in config.schemes}
    raise ConfigError(key, f"not sweepable; choose one of {sorted(SWEEPABLE_KEYS)}")


def _cmd_sweep(args) -> int:
    base = _load(args)
    try:
        values = [float(v) for v in args.values.split(",") if v.strip()]
    except ValueError:
        raise ConfigError("values", f"not a numeric list: {args.values!r}") from None
    if not values:
        raise ConfigError("values", "at least one sweep value is required")
    if args.key not in SWEEPABLE_KEYS:
        raise ConfigError(args.key, f"not sweepable; choose one of {sorted(SWEEPABLE_KEYS)}")

    lines = ["swept_key,value,scheme,n,degenerate,fraction_above_1,mean_ratio,median_ratio"]
    base_overrides = parse_overrides(args.overrides)
    if args.seed is not None:
        base_overrides["experiment.seed"] = str(args.seed)
    for value in values:
        overrides = dict(base_overrides)
        overrides.update(_sweep_overrides(base, args.key, value))
        config = load_config(args.config, overrides)
        result = experiment.run(config)
        stats = experiment.summarize(result)
        for label in result.scheme_labels:
            s = stats[label]
            lines.append(
                f"{args.key},{_fmt(value)},{label},{s.n},{s.degenerate},"
                f"{_fmt(s.fraction_above_1)},{_fmt(s.mean_ratio)},{_fmt(s.median_ratio)}"
            )
        print(f"{args.key}={_fmt(value)}: " + "  ".join(
            f"{label} fraction>1={_fmt(stats[label].fraction_above_1)}"
            for label in result.scheme_labels
        ))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "sweep.csv"
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    print(f"wrote {path}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {
        "run": _cmd_run,
        "geom": _cmd_geom,
        "sync": _cmd_sync,
        "sweep": _cmd_sweep,
    }[args.command]
    try:
        return handler(args)
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
