"""Scenario configuration: INI parsing, validation, and overrides.

The file is flat key/value with sections mirroring the simulator
modules; every key is listed in ``KNOWN_KEYS`` and documented in the
shipped ``configs/default.ini``.  Validation errors always name the
offending ``section.key``.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field

from .channel import CsiAgingModel, LinkBudgetParams
from .duplexing import FrameScheme, SchemeKind
from .geometry import ConstellationGeometry
from .sync import GnssErrorModel


class ConfigError(ValueError):
    """Invalid or missing configuration; ``key`` names the culprit."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


KNOWN_KEYS = {
    "geometry": {
        "altitude_km",
        "min_elevation_deg",
        "earth_radius_km",
        "gravitational_parameter_km3_s2",
    },
    "link": {
        "eirp_density_dbw_mhz",
        "ue_g_over_t_db_k",
        "ue_noise_figure_db",
        "ue_tx_power_dbm",
        "carrier_ghz",
        "bandwidth_mhz",
        "fdd_csi_backoff_db",
    },
    "aging": {"doppler_spread_hz", "integration_steps"},
    "sync": {
        "timing_error_us",
        "frequency_error_ppm",
        "distribution",
        "timing_threshold_us",
        "frequency_threshold_ppm",
    },
    "duplexing": {
        "dl_fraction",
        "fdd_guard_band_fraction",
        "fdd_frame_ms",
        "common_timing_offset_ms",
    },
    "experiment": {"num_ues", "seed"},
    "schemes": {"list"},
}
SCHEME_KEYS = {"kind", "frame_ms", "sic_db", "guard_slot_fraction"}
SWEEPABLE_KEYS = {"sic_db", "doppler_spread", "frame_length"}


@dataclass
class ScenarioConfig:
    """Everything one experiment run needs, fully validated."""

    geom: ConstellationGeometry
    link: LinkBudgetParams
    aging: CsiAgingModel
    gnss: GnssErrorModel
    timing_threshold_s: float
    frequency_threshold_ppm: float
    fdd: FrameScheme
    schemes: list[FrameScheme]
    num_ues: int
    seed: int

    @property
    def frequency_threshold_hz(self) -> float:
        return self.frequency_threshold_ppm * 1e-6 * self.link.carrier_hz


def _get(parser, section: str, key: str, default=None, required=False) -> str | None:
    if parser.has_option(section, key):
        return parser.get(section, key)
    if required:
        raise ConfigError(f"{section}.{key}", "required key is missing")
    return default


def _get_float(parser, section, key, default=None, required=False) -> float | None:
    raw = _get(parser, section, key, required=required)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key}", f"not a number: {raw!r}") from None


def _get_int(parser, section, key, default=None, required=False) -> int | None:
    raw = _get(parser, section, key, required=required)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key}", f"not an integer: {raw!r}") from None


def _check(cond: bool, key: str, message: str):
    if not cond:
        raise ConfigError(key, message)


def parse_overrides(pairs: list[str]) -> dict[str, str]:
    """Turn repeatable ``--set section.key=value`` strings into a mapping."""
    out = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ConfigError(pair, "override must look like section.key=value")
        out[key.strip()] = value.strip()
    return out


def _apply_overrides(parser: configparser.ConfigParser, overrides: dict[str, str]):
    for dotted, value in overrides.items():
        # last dot splits section from key, so scheme.<name>.<key> works too
        section, sep, key = dotted.rpartition(".")
        if not sep:
            raise ConfigError(dotted, "override key must be section.key")
        known = SCHEME_KEYS if section.startswith("scheme.") else KNOWN_KEYS.get(section)
        if known is None or key not in known:
            raise ConfigError(dotted, "unknown configuration key")
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section, key, value)


def _validate_sections(parser: configparser.ConfigParser):
    for section in parser.sections():
        if section.startswith("scheme."):
            allowed = SCHEME_KEYS
        elif section in KNOWN_KEYS:
            allowed = KNOWN_KEYS[section]
        else:
            raise ConfigError(section, "unknown configuration section")
        for key in parser.options(section):
            _check(key in allowed, f"{section}.{key}", "unknown configuration key")


def _build_scheme(parser, name: str, defaults: dict) -> FrameScheme:
    section = f"scheme.{name}"
    _check(parser.has_section(section), section, "scheme listed but section is missing")
    kind_raw = _get(parser, section, "kind", required=True)
    try:
        kind = SchemeKind(kind_raw)
    except ValueError:
        raise ConfigError(
            f"{section}.kind",
            f"must be one of fdd/tdd_efs/tdd_usg/tdd_pou, got {kind_raw!r}",
        ) from None
    _check(kind is not SchemeKind.FDD, f"{section}.kind", "the FDD baseline is implicit")
    frame_ms = _get_float(parser, section, "frame_ms", required=True)
    _check(frame_ms > 0, f"{section}.frame_ms", f"must be positive, got {frame_ms}")
    sic_db = _get_float(parser, section, "sic_db", default=math.inf)
    _check(sic_db >= 0, f"{section}.sic_db", f"must be >= 0, got {sic_db}")
    guard_slot = _get_float(parser, section, "guard_slot_fraction", default=1.0 / 14.0)
    _check(
        0 <= guard_slot < 1,
        f"{section}.guard_slot_fraction",
        f"must lie in [0, 1), got {guard_slot}",
    )
    if kind is SchemeKind.TDD_POU:
        _check(
            parser.has_option(section, "sic_db"),
            f"{section}.sic_db",
            "required for partial-overlap schemes",
        )
    return FrameScheme(
        kind=kind,
        frame_length_s=frame_ms * 1e-3,
        dl_fraction=defaults["dl_fraction"],
        guard_slot_fraction=guard_slot,
        fdd_guard_band_fraction=defaults["guard_band"],
        sic_db=sic_db,
        common_timing_offset_s=defaults["common_offset_s"],
        label=name,
    )


def load_config(path: str, overrides: dict[str, str] | None = None) -> ScenarioConfig:
    """Read, override, validate, and assemble a scenario configuration."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    read = parser.read(path)
    if not read:
        raise FileNotFoundError(f"config file not found: {path}")
    if overrides:
        _apply_overrides(parser, overrides)
    _validate_sections(parser)

    altitude = _get_float(parser, "geometry", "altitude_km", required=True)
    _check(altitude > 0, "geometry.altitude_km", f"must be positive, got {altitude}")
    min_elev_deg = _get_float(parser, "geometry", "min_elevation_deg", required=True)
    _check(
        0 < min_elev_deg <= 90,
        "geometry.min_elevation_deg",
        f"must lie in (0, 90], got {min_elev_deg}",
    )
    earth_radius = _get_float(parser, "geometry", "earth_radius_km", default=6371.0)
    _check(earth_radius > 0, "geometry.earth_radius_km", f"must be positive, got {earth_radius}")
    mu = _get_float(parser, "geometry", "gravitational_parameter_km3_s2", default=398600.4418)
    _check(mu > 0, "geometry.gravitational_parameter_km3_s2", f"must be positive, got {mu}")
    geom = ConstellationGeometry(
        altitude_km=altitude,
        min_elevation_rad=math.radians(min_elev_deg),
        earth_radius_km=earth_radius,
        mu_km3_s2=mu,
    )

    carrier_ghz = _get_float(parser, "link", "carrier_ghz", required=True)
    _check(carrier_ghz > 0, "link.carrier_ghz", f"must be positive, got {carrier_ghz}")
    bandwidth_mhz = _get_float(parser, "link", "bandwidth_mhz", required=True)
    _check(bandwidth_mhz > 0, "link.bandwidth_mhz", f"must be positive, got {bandwidth_mhz}")
    noise_figure = _get_float(parser, "link", "ue_noise_figure_db", required=True)
    _check(noise_figure >= 0, "link.ue_noise_figure_db", f"must be >= 0, got {noise_figure}")
    link = LinkBudgetParams(
        eirp_density_dbw_mhz=_get_float(parser, "link", "eirp_density_dbw_mhz", required=True),
        ue_g_over_t_db_k=_get_float(parser, "link", "ue_g_over_t_db_k", required=True),
        ue_noise_figure_db=noise_figure,
        ue_tx_power_dbm=_get_float(parser, "link", "ue_tx_power_dbm", required=True),
        carrier_hz=carrier_ghz * 1e9,
        bandwidth_hz=bandwidth_mhz * 1e6,
        fdd_csi_backoff_db=_get_float(parser, "link", "fdd_csi_backoff_db", default=0.0),
    )

    doppler_spread = _get_float(parser, "aging", "doppler_spread_hz", required=True)
    _check(doppler_spread >= 0, "aging.doppler_spread_hz", f"must be >= 0, got {doppler_spread}")
    steps = _get_int(parser, "aging", "integration_steps", default=128)
    _check(steps >= 2, "aging.integration_steps", f"must be >= 2, got {steps}")
    aging = CsiAgingModel(doppler_spread_hz=doppler_spread, integration_steps=steps)

    timing_err_us = _get_float(parser, "sync", "timing_error_us", default=0.13)
    _check(timing_err_us >= 0, "sync.timing_error_us", f"must be >= 0, got {timing_err_us}")
    freq_err_ppm = _get_float(parser, "sync", "frequency_error_ppm", default=0.1)
    _check(freq_err_ppm >= 0, "sync.frequency_error_ppm", f"must be >= 0, got {freq_err_ppm}")
    distribution = _get(parser, "sync", "distribution", default="uniform")
    _check(
        distribution in ("uniform", "truncated_gaussian"),
        "sync.distribution",
        f"must be uniform or truncated_gaussian, got {distribution!r}",
    )
    gnss = GnssErrorModel(
        timing_error_bound_s=timing_err_us * 1e-6,
        frequency_error_bound_ppm=freq_err_ppm,
        distribution=distribution,
    )
    timing_thr_us = _get_float(parser, "sync", "timing_threshold_us", default=3.0)
    _check(timing_thr_us > 0, "sync.timing_threshold_us", f"must be positive, got {timing_thr_us}")
    freq_thr_ppm = _get_float(parser, "sync", "frequency_threshold_ppm", default=0.05)
    _check(
        freq_thr_ppm > 0,
        "sync.frequency_threshold_ppm",
        f"must be positive, got {freq_thr_ppm}",
    )

    dl_fraction = _get_float(parser, "duplexing", "dl_fraction", default=0.7)
    _check(0 < dl_fraction < 1, "duplexing.dl_fraction", f"must lie in (0, 1), got {dl_fraction}")
    guard_band = _get_float(parser, "duplexing", "fdd_guard_band_fraction", default=0.05)
    _check(
        0 <= guard_band < 1,
        "duplexing.fdd_guard_band_fraction",
        f"must lie in [0, 1), got {guard_band}",
    )
    fdd_frame_ms = _get_float(parser, "duplexing", "fdd_frame_ms", default=1.0)
    _check(fdd_frame_ms > 0, "duplexing.fdd_frame_ms", f"must be positive, got {fdd_frame_ms}")
    common_offset_ms = _get_float(parser, "duplexing", "common_timing_offset_ms", default=0.0)
    scheme_defaults = {
        "dl_fraction": dl_fraction,
        "guard_band": guard_band,
        "common_offset_s": common_offset_ms * 1e-3,
    }
    fdd = FrameScheme(
        kind=SchemeKind.FDD,
        frame_length_s=fdd_frame_ms * 1e-3,
        dl_fraction=dl_fraction,
        fdd_guard_band_fraction=guard_band,
        label="fdd",
    )

    names_raw = _get(parser, "schemes", "list", required=True)
    names = [n.strip() for n in names_raw.split(",") if n.strip()]
    _check(bool(names), "schemes.list", "at least one scheme is required")
    schemes = [_build_scheme(parser, name, scheme_defaults) for name in names]

    num_ues = _get_int(parser, "experiment", "num_ues", required=True)
    _check(num_ues >= 1, "experiment.num_ues", f"must be >= 1, got {num_ues}")
    seed = _get_int(parser, "experiment", "seed", required=True)
    _check(seed >= 0, "experiment.seed", f"must be >= 0, got {seed}")

    return ScenarioConfig(
        geom=geom,
        link=link,
        aging=aging,
        gnss=gnss,
        timing_threshold_s=timing_thr_us * 1e-6,
        frequency_threshold_ppm=freq_thr_ppm,
        fdd=fdd,
        schemes=schemes,
        num_ues=num_ues,
        seed=seed,
    )
