"""Closed-form orbital and coverage geometry for a single LEO satellite.

Spherical Earth, circular orbit. All lengths in km, angles in radians,
times in seconds unless a name says otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SPEED_OF_LIGHT_KM_S = 299792.458
EARTH_RADIUS_KM = 6371.0
EARTH_MU_KM3_S2 = 398600.4418


@dataclass
class ConstellationGeometry:
    """Orbit altitude and service constraints of one satellite.

    Parameters
    ----------
    altitude_km : float
        Orbit altitude above the mean Earth surface.
    min_elevation_rad : float
        Minimum service elevation angle seen from a ground terminal.
    earth_radius_km : float
        Mean spherical Earth radius.
    mu_km3_s2 : float
        Gravitational parameter GM of the Earth.
    """

    altitude_km: float
    min_elevation_rad: float
    earth_radius_km: float = EARTH_RADIUS_KM
    mu_km3_s2: float = EARTH_MU_KM3_S2

    def __post_init__(self):
        if self.earth_radius_km <= 0:
            raise ValueError(f"earth_radius_km must be positive, got {self.earth_radius_km}")
        if self.altitude_km <= 0:
            raise ValueError(f"altitude_km must be positive, got {self.altitude_km}")
        if not 0 < self.min_elevation_rad <= math.pi / 2:
            raise ValueError(
                f"min_elevation_rad must lie in (0, pi/2], got {self.min_elevation_rad}"
            )


@dataclass
class UePlacement:
    """One terminal position relative to the sub-satellite point.

    ``central_angle_rad`` is the Earth-central angle between the
    sub-satellite point and the terminal.  ``azimuth_rad`` is the bearing
    of the terminal measured from the satellite ground-track direction,
    so azimuth 0 means the terminal lies ahead of the satellite.
    """

    central_angle_rad: float
    azimuth_rad: float


@dataclass
class SightLine:
    """Geometry snapshot of one satellite-to-terminal link."""

    elevation_rad: float
    slant_range_km: float
    delay_s: float
    radial_velocity_km_s: float  # positive while the satellite closes in
    doppler_shift_hz: float


def orbital_velocity(geom: ConstellationGeometry) -> float:
    """Circular orbital speed sqrt(mu / (Re + h)) in km/s."""
    return math.sqrt(geom.mu_km3_s2 / (geom.earth_radius_km + geom.altitude_km))


def coverage_central_angle(geom: ConstellationGeometry) -> float:
    """Largest Earth-central angle at which the satellite is still visible.

    lambda_max = acos((Re / (Re + h)) * cos(eps_min)) - eps_min
    """
    re = geom.earth_radius_km
    ratio = re / (re + geom.altitude_km)
    return math.acos(ratio * math.cos(geom.min_elevation_rad)) - geom.min_elevation_rad


def coverage_radius(geom: ConstellationGeometry) -> float:
    """Great-circle radius of the coverage footprint in km."""
    return geom.earth_radius_km * coverage_central_angle(geom)


def slant_range_from_elevation(geom: ConstellationGeometry, elevation_rad: float) -> float:
    """Line-of-sight distance to a terminal seeing the satellite at ``elevation_rad``.

    d = Re * (sqrt(((Re + h) / Re)^2 - cos^2(eps)) - sin(eps))

    Raises ``ValueError`` if the elevation is outside
    [min_elevation, pi/2].
    """
    if not geom.min_elevation_rad <= elevation_rad <= math.pi / 2:
        raise ValueError(
            f"elevation_rad {elevation_rad} outside "
            f"[{geom.min_elevation_rad}, {math.pi / 2}]"
        )
    re = geom.earth_radius_km
    ratio = (re + geom.altitude_km) / re
    cos_e = math.cos(elevation_rad)
    return re * (math.sqrt(ratio * ratio - cos_e * cos_e) - math.sin(elevation_rad))


def slant_range_from_central_angle(geom: ConstellationGeometry, central_angle_rad: float) -> float:
    """Slant range via the law of cosines in the Earth-center triangle.

    d = sqrt(Re^2 + (Re + h)^2 - 2 Re (Re + h) cos(lambda))
    """
    lam_max = coverage_central_angle(geom)
    if not -1e-12 <= central_angle_rad <= lam_max + 1e-12:
        raise ValueError(
            f"central_angle_rad {central_angle_rad} outside coverage [0, {lam_max}]"
        )
    re = geom.earth_radius_km
    rs = re + geom.altitude_km
    return math.sqrt(re * re + rs * rs - 2.0 * re * rs * math.cos(central_angle_rad))


def elevation_from_central_angle(geom: ConstellationGeometry, central_angle_rad: float) -> float:
    """Elevation angle of the satellite seen from central angle ``lambda``.

    tan(eps) = (cos(lambda) - Re / (Re + h)) / sin(lambda); lambda = 0 is nadir.
    """
    lam_max = coverage_central_angle(geom)
    if not -1e-12 <= central_angle_rad <= lam_max + 1e-12:
        raise ValueError(
            f"central_angle_rad {central_angle_rad} outside coverage [0, {lam_max}]"
        )
    if central_angle_rad <= 0:
        return math.pi / 2
    ratio = geom.earth_radius_km / (geom.earth_radius_km + geom.altitude_km)
    return math.atan2(math.cos(central_angle_rad) - ratio, math.sin(central_angle_rad))


def propagation_delay(slant_range_km: float) -> float:
    """One-way propagation delay in seconds."""
    if slant_range_km < 0:
        raise ValueError(f"slant_range_km must be nonnegative, got {slant_range_km}")
    return slant_range_km / SPEED_OF_LIGHT_KM_S


def max_slant_range(geom: ConstellationGeometry) -> float:
    """Slant range at the minimum service elevation (coverage edge)."""
    return slant_range_from_elevation(geom, geom.min_elevation_rad)


def differential_delay(geom: ConstellationGeometry) -> float:
    """Delay spread between the coverage edge and the nadir terminal."""
    return propagation_delay(max_slant_range(geom)) - propagation_delay(geom.altitude_km)


def radial_velocity(geom: ConstellationGeometry, ue: UePlacement) -> float:
    """Range rate of the satellite toward the terminal, km/s, positive closing.

    With the satellite moving along its ground track at orbital speed and
    the terminal at central angle lambda / azimuth phi,

    v_r = v_orb * Re * sin(lambda) * cos(phi) / d
    """
    lam = ue.central_angle_rad
    if lam == 0.0:
        return 0.0
    d = slant_range_from_central_angle(geom, lam)
    v_orb = orbital_velocity(geom)
    return v_orb * geom.earth_radius_km * math.sin(lam) * math.cos(ue.azimuth_rad) / d


def doppler_shift(radial_velocity_km_s: float, carrier_hz: float) -> float:
    """Doppler shift f_d = (v_r / c) * f_c in Hz."""
    if carrier_hz <= 0:
        raise ValueError(f"carrier_hz must be positive, got {carrier_hz}")
    return radial_velocity_km_s / SPEED_OF_LIGHT_KM_S * carrier_hz


def sample_ue(rng, geom: ConstellationGeometry) -> UePlacement:
    """Draw one terminal uniformly by area over the coverage cap.

    central_angle = acos(1 - u * (1 - cos(lambda_max))) with u ~ U[0, 1)
    inverts the cap-area CDF; azimuth ~ U[0, 2 pi).
    """
    lam_max = coverage_central_angle(geom)
    if lam_max <= 0:
        raise ValueError("coverage cap is empty; min_elevation_rad too large")
    u = rng.random()
    central = math.acos(1.0 - u * (1.0 - math.cos(lam_max)))
    azimuth = rng.random() * 2.0 * math.pi
    return UePlacement(central_angle_rad=central, azimuth_rad=azimuth)


def sightline(geom: ConstellationGeometry, ue: UePlacement, carrier_hz: float) -> SightLine:
    """Assemble the full geometry snapshot for one placement."""
    d = slant_range_from_central_angle(geom, ue.central_angle_rad)
    v_r = radial_velocity(geom, ue)
    return SightLine(
        elevation_rad=elevation_from_central_angle(geom, ue.central_angle_rad),
        slant_range_km=d,
        delay_s=propagation_delay(d),
        radial_velocity_km_s=v_r,
        doppler_shift_hz=doppler_shift(v_r, carrier_hz),
    )
