"""Link budget, CSI-aging channel model, and self-interference arithmetic.

The downlink carrier-to-noise ratio follows the classical EIRP-density
budget; channel time-variation enters only through the Jakes temporal
correlation, mapped to an effective SINR by treating the estimation
error of aged CSI as self-noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import j0

BOLTZMANN_DBW_HZ_K = -228.6  # 10*log10(k), dBW/K/Hz
SE_CLAMP_SNR_DB = -30.0  # below this the link is treated as carrying nothing


@dataclass
class LinkBudgetParams:
    """Downlink budget figures plus the UE transmit power used for
    self-interference accounting.

    ``eirp_density_dbw_mhz`` keeps the radiated power a spectral density,
    so the per-Hz SNR does not depend on the allocated bandwidth.
    """

    eirp_density_dbw_mhz: float
    ue_g_over_t_db_k: float
    ue_noise_figure_db: float
    ue_tx_power_dbm: float
    carrier_hz: float
    bandwidth_hz: float
    fdd_csi_backoff_db: float = 0.0

    def __post_init__(self):
        if self.carrier_hz <= 0:
            raise ValueError(f"carrier_hz must be positive, got {self.carrier_hz}")
        if self.bandwidth_hz <= 0:
            raise ValueError(f"bandwidth_hz must be positive, got {self.bandwidth_hz}")
        if self.ue_noise_figure_db < 0:
            raise ValueError(f"ue_noise_figure_db must be >= 0, got {self.ue_noise_figure_db}")


@dataclass
class CsiAgingModel:
    """Jakes decorrelation parameters for channel estimates that age.

    ``doppler_spread_hz`` is the residual spread after Doppler-shift
    pre-compensation; zero disables aging entirely.
    """

    doppler_spread_hz: float
    integration_steps: int = 128

    def __post_init__(self):
        if self.doppler_spread_hz < 0:
            raise ValueError(f"doppler_spread_hz must be >= 0, got {self.doppler_spread_hz}")
        if self.integration_steps < 2:
            raise ValueError(f"integration_steps must be >= 2, got {self.integration_steps}")


@dataclass
class LinkQuality:
    """SNR figures of one link: clean, and during self-interference."""

    snr_db: float
    si_sinr_db: float
    noise_floor_dbm: float


def fspl_db(distance_km: float, carrier_ghz: float) -> float:
    """Free-space path loss, dB: 92.45 + 20 log10(d_km) + 20 log10(f_GHz)."""
    if distance_km <= 0:
        raise ValueError(f"distance_km must be positive, got {distance_km}")
    if carrier_ghz <= 0:
        raise ValueError(f"carrier_ghz must be positive, got {carrier_ghz}")
    return 92.45 + 20.0 * math.log10(distance_km) + 20.0 * math.log10(carrier_ghz)


def cnr_db(params: LinkBudgetParams, distance_km: float) -> float:
    """Downlink carrier-to-noise ratio in dB.

    CNR = EIRP_density + 10 log10(BW_MHz) + G/T - FSPL
          - (10 log10(k) + 10 log10(BW_Hz))

    The two bandwidth terms cancel exactly, which keeps the result a
    per-Hz quantity; they are kept explicit so the algebra stays visible.
    """
    bw_mhz = params.bandwidth_hz / 1e6
    eirp_dbw = params.eirp_density_dbw_mhz + 10.0 * math.log10(bw_mhz)
    loss = fspl_db(distance_km, params.carrier_hz / 1e9)
    noise_dbw = BOLTZMANN_DBW_HZ_K + 10.0 * math.log10(params.bandwidth_hz)
    return eirp_dbw + params.ue_g_over_t_db_k - loss - noise_dbw


def noise_floor_dbm(params: LinkBudgetParams) -> float:
    """Receiver thermal noise floor over the full bandwidth, dBm."""
    return -174.0 + 10.0 * math.log10(params.bandwidth_hz) + params.ue_noise_figure_db


def jakes_correlation(model: CsiAgingModel, age_s: float) -> float:
    """Temporal correlation of the Jakes process: J0(2 pi f_D age)."""
    if age_s < 0:
        raise ValueError(f"age_s must be >= 0, got {age_s}")
    return float(j0(2.0 * math.pi * model.doppler_spread_hz * age_s))


def effective_sinr(snr_linear, rho):
    """SINR after using CSI of correlation ``rho``, estimation error as self-noise.

    sinr_eff = rho^2 snr / (1 + (1 - rho^2) snr)

    Accepts scalars or numpy arrays.
    """
    rho2 = np.square(rho)
    return rho2 * snr_linear / (1.0 + (1.0 - rho2) * snr_linear)


def spectral_efficiency(sinr_linear):
    """Shannon spectral efficiency log2(1 + sinr), bit/s/Hz."""
    return np.log2(1.0 + sinr_linear)


def avg_se_over_window(
    snr_linear: float,
    model: CsiAgingModel,
    age_offset_s: float,
    window_s: float,
) -> float:
    """Mean spectral efficiency while the CSI ages across a window.

    Trapezoidal average of SE(effective_sinr) over ages
    [age_offset, age_offset + window] using ``model.integration_steps``
    panels.  A zero-length window degenerates to the point value at
    ``age_offset``.
    """
    if window_s < 0:
        raise ValueError(f"window_s must be >= 0, got {window_s}")
    if window_s == 0.0 or model.doppler_spread_hz == 0.0:
        rho = jakes_correlation(model, age_offset_s)
        return float(spectral_efficiency(effective_sinr(snr_linear, rho)))
    ages = age_offset_s + np.linspace(0.0, window_s, model.integration_steps + 1)
    rho = j0(2.0 * math.pi * model.doppler_spread_hz * ages)
    se = spectral_efficiency(effective_sinr(snr_linear, rho))
    return float(np.trapezoid(se, dx=window_s / model.integration_steps) / window_s)


def self_interference_sinr_db(params: LinkBudgetParams, clean_snr_db: float, sic_db: float) -> float:
    """Downlink SINR while the UE's own uplink leaks into its receiver.

    The residual self-interference power is ue_tx_power - sic; it adds to
    the thermal noise floor in linear power.  ``sic_db`` may be ``inf``
    for perfect cancellation.
    """
    if sic_db < 0:
        raise ValueError(f"sic_db must be >= 0, got {sic_db}")
    if math.isinf(sic_db):
        return clean_snr_db
    noise_dbm = noise_floor_dbm(params)
    residual_dbm = params.ue_tx_power_dbm - sic_db
    total_mw = 10.0 ** (noise_dbm / 10.0) + 10.0 ** (residual_dbm / 10.0)
    signal_dbm = noise_dbm + clean_snr_db
    return signal_dbm - 10.0 * math.log10(total_mw)


def link_quality(params: LinkBudgetParams, distance_km: float, sic_db: float) -> LinkQuality:
    """Clean and self-interfered SNR of one link at a given SIC level."""
    snr = cnr_db(params, distance_km)
    return LinkQuality(
        snr_db=snr,
        si_sinr_db=self_interference_sinr_db(params, snr, sic_db),
        noise_floor_dbm=noise_floor_dbm(params),
    )
