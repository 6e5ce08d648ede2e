"""GNSS/ephemeris-aided timing and frequency synchronization budget.

A UE that knows its own position and the satellite ephemeris can predict
its propagation delay and Doppler shift, then pre-compensate both.  The
prediction chain is modeled as the true value plus a bounded error draw;
the budget checks the residuals against TDD synchronization thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import geometry
from .geometry import ConstellationGeometry, UePlacement


@dataclass
class GnssErrorModel:
    """Bounded error of the GNSS/ephemeris prediction chain.

    Ephemeris error is not modeled separately; it is folded into these
    bounds.  ``truncated_gaussian`` draws N(0, (bound/2)^2) rejected
    outside +/-bound, for sensitivity studies.
    """

    timing_error_bound_s: float = 0.13e-6
    frequency_error_bound_ppm: float = 0.1
    distribution: str = "uniform"

    def __post_init__(self):
        if self.timing_error_bound_s < 0:
            raise ValueError(f"timing_error_bound_s must be >= 0, got {self.timing_error_bound_s}")
        if self.frequency_error_bound_ppm < 0:
            raise ValueError(
                f"frequency_error_bound_ppm must be >= 0, got {self.frequency_error_bound_ppm}"
            )
        if self.distribution not in ("uniform", "truncated_gaussian"):
            raise ValueError(f"unknown distribution {self.distribution!r}")

    def draw(self, rng, bound: float) -> float:
        """One signed error within +/-bound under the configured law."""
        if bound == 0.0:
            return 0.0
        if self.distribution == "uniform":
            return (2.0 * rng.random() - 1.0) * bound
        while True:
            e = rng.normal(0.0, bound / 2.0)
            if abs(e) <= bound:
                return e


@dataclass
class SyncBudget:
    """Residual errors against the thresholds they must stay within."""

    residual_timing_s: float
    residual_frequency_hz: float
    timing_threshold_s: float
    frequency_threshold_hz: float

    def __post_init__(self):
        if self.timing_threshold_s <= 0 or self.frequency_threshold_hz <= 0:
            raise ValueError("thresholds must be positive")


@dataclass
class SyncReport:
    """Pass/fail per axis with the remaining margin."""

    timing_pass: bool
    frequency_pass: bool
    timing_margin_s: float
    frequency_margin_hz: float

    @property
    def all_pass(self) -> bool:
        return self.timing_pass and self.frequency_pass


def estimate_timing_advance(
    geom: ConstellationGeometry,
    ue: UePlacement,
    err: GnssErrorModel,
    rng,
) -> tuple[float, float]:
    """Predicted timing advance and the magnitude of its error.

    Returns (estimate, residual) where estimate = true advance + e and
    residual = |e| with e drawn within the timing bound.
    """
    d = geometry.slant_range_from_central_angle(geom, ue.central_angle_rad)
    true_ta = 2.0 * geometry.propagation_delay(d)
    e = err.draw(rng, err.timing_error_bound_s)
    return true_ta + e, abs(e)


def doppler_precompensation(
    geom: ConstellationGeometry,
    ue: UePlacement,
    carrier_hz: float,
    err: GnssErrorModel,
    rng,
) -> float:
    """Residual frequency offset after Doppler pre-compensation, Hz.

    The compensator misestimates by carrier * eps * 1e-6 with eps drawn
    within the ppm bound, so the residual is carrier * |eps| * 1e-6.
    """
    if carrier_hz <= 0:
        raise ValueError(f"carrier_hz must be positive, got {carrier_hz}")
    true_doppler = geometry.doppler_shift(geometry.radial_velocity(geom, ue), carrier_hz)
    eps = err.draw(rng, err.frequency_error_bound_ppm)
    compensated = true_doppler + carrier_hz * eps * 1e-6
    return abs(true_doppler - compensated)


def check_requirements(budget: SyncBudget) -> SyncReport:
    """Compare residuals against thresholds; equality counts as a pass."""
    return SyncReport(
        timing_pass=budget.residual_timing_s <= budget.timing_threshold_s,
        frequency_pass=budget.residual_frequency_hz <= budget.frequency_threshold_hz,
        timing_margin_s=budget.timing_threshold_s - budget.residual_timing_s,
        frequency_margin_hz=budget.frequency_threshold_hz - budget.residual_frequency_hz,
    )


def random_access_window(geom: ConstellationGeometry) -> float:
    """Listening window covering the delay spread of all attaching UEs."""
    return geometry.differential_delay(geom)
