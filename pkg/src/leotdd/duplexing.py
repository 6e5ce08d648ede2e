"""Duplexing schemes and the per-UE downlink resource-efficiency ratio.

Four frame disciplines are modeled: an FDD baseline with a guard band,
TDD with an extended frame (EFS), TDD with UE-specific guard periods
(USG), and TDD with partial DL/UL overlap at the UE cancelled by SIC
(POU).  Frames place the DL block at the head and the UL block at the
tail; all timing is periodic with the frame length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from . import channel
from .channel import CsiAgingModel, LinkBudgetParams
from .geometry import SightLine

GUARD_SLOT_FRACTION_NR = 1.0 / 14.0  # one guard slot per 14-slot frame


class SchemeKind(str, Enum):
    FDD = "fdd"
    TDD_EFS = "tdd_efs"
    TDD_USG = "tdd_usg"
    TDD_POU = "tdd_pou"


@dataclass
class FrameScheme:
    """One duplexing discipline with its frame parameters.

    ``sic_db`` applies to POU only; ``guard_slot_fraction`` to EFS only;
    ``fdd_guard_band_fraction`` to FDD only.  ``common_timing_offset_s``
    shifts every UE's uplink window by a satellite-chosen constant and is
    absorbed modulo the frame length.
    """

    kind: SchemeKind
    frame_length_s: float
    dl_fraction: float = 0.7
    guard_slot_fraction: float = GUARD_SLOT_FRACTION_NR
    fdd_guard_band_fraction: float = 0.05
    sic_db: float = math.inf
    common_timing_offset_s: float = 0.0
    label: str = field(default="")

    def __post_init__(self):
        if self.frame_length_s <= 0:
            raise ValueError(f"frame_length_s must be positive, got {self.frame_length_s}")
        if not 0.0 < self.dl_fraction < 1.0:
            raise ValueError(f"dl_fraction must lie in (0, 1), got {self.dl_fraction}")
        if not 0.0 <= self.guard_slot_fraction < 1.0:
            raise ValueError(
                f"guard_slot_fraction must lie in [0, 1), got {self.guard_slot_fraction}"
            )
        if not 0.0 <= self.fdd_guard_band_fraction < 1.0:
            raise ValueError(
                f"fdd_guard_band_fraction must lie in [0, 1), got {self.fdd_guard_band_fraction}"
            )
        if self.sic_db < 0:
            raise ValueError(f"sic_db must be >= 0, got {self.sic_db}")
        if not self.label:
            self.label = self.kind.value


@dataclass
class OverlapWindow:
    """Circularly wrapped intervals where a UE transmits while receiving DL."""

    intervals: list[tuple[float, float]]
    total_length_s: float


@dataclass
class ResourceShare:
    """Fractions of the total time-frequency plane carrying DL for one UE."""

    bandwidth_fraction: float
    dl_time_fraction: float
    overlap_fraction: float = 0.0


class DegenerateLinkError(ValueError):
    """Raised when the FDD baseline carries zero throughput (SNR underflow)."""


def required_guard_period(max_delay_s: float) -> float:
    """Guard period long enough for the worst-case UE: twice the max delay."""
    if max_delay_s < 0:
        raise ValueError(f"max_delay_s must be >= 0, got {max_delay_s}")
    return 2.0 * max_delay_s


def timing_advance(delay_s: float) -> float:
    """Round-trip advance a UE applies so UL arrives on satellite time."""
    if delay_s < 0:
        raise ValueError(f"delay_s must be >= 0, got {delay_s}")
    return 2.0 * delay_s


def _circular_intersection(
    rx_end: float, tx_start: float, tx_len: float, period: float
) -> list[tuple[float, float]]:
    """Intersect [0, rx_end) with the wrapped interval [tx_start, tx_start+tx_len)."""
    pieces = []
    start = tx_start % period
    end = start + tx_len
    if end <= period:
        pieces.append((start, end))
    else:
        pieces.append((start, period))
        pieces.append((0.0, end - period))
    out = []
    for a, b in pieces:
        lo, hi = max(a, 0.0), min(b, rx_end)
        if hi > lo:
            out.append((lo, hi))
    out.sort()
    return out


def ue_overlap(delay_s: float, scheme: FrameScheme) -> OverlapWindow:
    """DL/UL collision window at one UE when no satellite guard is applied.

    In UE-local time the DL block is received during [0, alpha*T) and the
    UL block is transmitted during [alpha*T - delta, T - delta) with
    delta = timing_advance(delay) mod T.  The overlap is their circular
    intersection: zero, one, or two disjoint intervals.
    """
    period = scheme.frame_length_s
    alpha = scheme.dl_fraction
    delta = (timing_advance(delay_s) - scheme.common_timing_offset_s) % period
    intervals = _circular_intersection(
        rx_end=alpha * period,
        tx_start=alpha * period - delta,
        tx_len=(1.0 - alpha) * period,
        period=period,
    )
    total = sum(b - a for a, b in intervals)
    return OverlapWindow(intervals=intervals, total_length_s=total)


def resource_share(scheme: FrameScheme, delay_s: float) -> ResourceShare:
    """DL share of the time-frequency plane granted to one UE.

    FDD spends bandwidth on the guard band, EFS spends time on a fixed
    guard-slot fraction, USG charges each UE its own overlap, and POU
    keeps the full DL time but marks the overlap as self-interfered.
    """
    alpha = scheme.dl_fraction
    if scheme.kind is SchemeKind.FDD:
        return ResourceShare(
            bandwidth_fraction=alpha * (1.0 - scheme.fdd_guard_band_fraction),
            dl_time_fraction=1.0,
        )
    if scheme.kind is SchemeKind.TDD_EFS:
        return ResourceShare(
            bandwidth_fraction=1.0,
            dl_time_fraction=alpha * (1.0 - scheme.guard_slot_fraction),
        )
    overlap_fraction = ue_overlap(delay_s, scheme).total_length_s / scheme.frame_length_s
    if scheme.kind is SchemeKind.TDD_USG:
        return ResourceShare(
            bandwidth_fraction=1.0,
            dl_time_fraction=alpha * (1.0 - overlap_fraction),
        )
    if scheme.kind is SchemeKind.TDD_POU:
        return ResourceShare(
            bandwidth_fraction=1.0,
            dl_time_fraction=alpha,
            overlap_fraction=overlap_fraction,
        )
    raise ValueError(f"unknown scheme kind {scheme.kind}")


def csi_age_offset(scheme: FrameScheme, delay_s: float) -> float:
    """Age of the CSI when the frame starts using it.

    TDD estimates from UL pilots and pays one propagation delay; FDD
    pays the pilot-down plus feedback-up round trip.
    """
    if scheme.kind is SchemeKind.FDD:
        return 2.0 * delay_s
    return delay_s


def dl_throughput_density(
    scheme: FrameScheme,
    sight: SightLine,
    link: LinkBudgetParams,
    aging: CsiAgingModel,
) -> float:
    """Downlink throughput per Hz of the total time-frequency plane.

    bandwidth * [(dl_time - overlap) * avg SE(clean) + overlap * avg SE(SI)]

    with both averages taken over the scheme's DL span as the CSI ages.
    Links below the SNR clamp contribute nothing.
    """
    share = resource_share(scheme, sight.delay_s)
    snr_db = channel.cnr_db(link, sight.slant_range_km)
    if scheme.kind is SchemeKind.FDD:
        snr_db -= link.fdd_csi_backoff_db
    if snr_db < channel.SE_CLAMP_SNR_DB:
        return 0.0
    offset = csi_age_offset(scheme, sight.delay_s)
    window = share.dl_time_fraction * scheme.frame_length_s
    snr_lin = 10.0 ** (snr_db / 10.0)
    se_clean = channel.avg_se_over_window(snr_lin, aging, offset, window)
    dl_clean = share.dl_time_fraction - share.overlap_fraction
    density = dl_clean * se_clean
    if share.overlap_fraction > 0.0:
        si_db = channel.self_interference_sinr_db(link, snr_db, scheme.sic_db)
        si_lin = 10.0 ** (si_db / 10.0)
        se_si = channel.avg_se_over_window(si_lin, aging, offset, window)
        density += share.overlap_fraction * se_si
    return share.bandwidth_fraction * density


def efficiency_ratio(
    scheme: FrameScheme,
    sight: SightLine,
    link: LinkBudgetParams,
    aging: CsiAgingModel,
    baseline: FrameScheme,
) -> float:
    """DL resource-efficiency ratio of ``scheme`` over the FDD baseline.

    Raises ``DegenerateLinkError`` when the baseline density underflows
    to zero; callers flag and count such records instead of dividing.
    """
    denom = dl_throughput_density(baseline, sight, link, aging)
    if denom <= 0.0:
        raise DegenerateLinkError(
            f"FDD baseline density is zero at slant range {sight.slant_range_km} km"
        )
    return dl_throughput_density(scheme, sight, link, aging) / denom
