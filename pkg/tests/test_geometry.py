import math

import numpy as np
import pytest
from scipy.stats import chi2

from leotdd import geometry as geo
from leotdd.geometry import ConstellationGeometry, UePlacement

import oracles


class StubRng:
    """Feeds predetermined uniforms to sample_ue."""

    def __init__(self, values):
        self._values = list(values)

    def random(self):
        return self._values.pop(0)


def test_orbital_velocity_across_altitudes():
    assert geo.orbital_velocity(ConstellationGeometry(300, math.radians(10))) == pytest.approx(
        7.730, rel=5e-4
    )
    assert geo.orbital_velocity(ConstellationGeometry(1500, math.radians(10))) == pytest.approx(
        7.116, rel=5e-4
    )
    assert geo.orbital_velocity(ConstellationGeometry(600, math.radians(10))) == pytest.approx(
        7.5617, rel=1e-4
    )


def test_slant_range_from_elevation(geom600):
    assert geo.slant_range_from_elevation(geom600, math.pi / 2) == pytest.approx(600.0, abs=1e-9)
    d_edge = geo.slant_range_from_elevation(geom600, math.radians(10))
    assert d_edge == pytest.approx(
        oracles.slant_range_by_law_of_sines(6371.0, 600.0, math.radians(10)), rel=1e-12
    )
    assert d_edge == pytest.approx(1931.7, rel=1e-4)
    d_30 = geo.slant_range_from_elevation(geom600, math.radians(30))
    assert d_30 == pytest.approx(
        oracles.slant_range_by_law_of_sines(6371.0, 600.0, math.radians(30)), rel=1e-12
    )
    assert d_30 == pytest.approx(1075.1, rel=1e-4)


def test_slant_range_rejects_out_of_range_elevation(geom600):
    with pytest.raises(ValueError):
        geo.slant_range_from_elevation(geom600, math.radians(5))
    with pytest.raises(ValueError):
        geo.slant_range_from_elevation(geom600, math.radians(91))


def test_slant_range_from_central_angle(geom600):
    assert geo.slant_range_from_central_angle(geom600, 0.0) == pytest.approx(600.0, abs=1e-9)
    lam_max = geo.coverage_central_angle(geom600)
    assert geo.slant_range_from_central_angle(geom600, lam_max) == pytest.approx(
        geo.slant_range_from_elevation(geom600, math.radians(10)), rel=1e-6
    )
    d5 = geo.slant_range_from_central_angle(geom600, math.radians(5))
    assert d5 == pytest.approx(oracles.slant_range_by_vectors(6371.0, 600.0, math.radians(5)),
                               rel=1e-12)
    assert d5 == pytest.approx(835.466, abs=1e-2)
    with pytest.raises(ValueError):
        geo.slant_range_from_central_angle(geom600, lam_max + 0.01)


def test_two_slant_range_forms_agree_for_random_geometries():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        h = rng.uniform(300.0, 1500.0)
        geom = ConstellationGeometry(h, math.radians(10))
        lam = rng.uniform(0.0, geo.coverage_central_angle(geom))
        via_angle = geo.slant_range_from_central_angle(geom, lam)
        via_elev = geo.slant_range_from_elevation(geom, geo.elevation_from_central_angle(geom, lam))
        assert abs(via_angle - via_elev) / via_angle < 1e-6


def test_slant_range_monotone_decreasing_in_elevation(geom600):
    elevations = np.linspace(math.radians(10), math.pi / 2, 200)
    ranges = [geo.slant_range_from_elevation(geom600, e) for e in elevations]
    assert all(a > b for a, b in zip(ranges, ranges[1:]))


def test_elevation_from_central_angle(geom600):
    assert geo.elevation_from_central_angle(geom600, 0.0) == pytest.approx(math.pi / 2)
    lam_max = geo.coverage_central_angle(geom600)
    assert geo.elevation_from_central_angle(geom600, lam_max) == pytest.approx(
        math.radians(10), abs=1e-9
    )
    lam = math.radians(8)
    assert geo.elevation_from_central_angle(geom600, lam) == pytest.approx(
        oracles.elevation_by_vectors(6371.0, 600.0, lam), abs=1e-12
    )


def test_coverage_footprint(geom600):
    assert geo.coverage_radius(geom600) == pytest.approx(1761.0, abs=5.0)
    nadir_only = ConstellationGeometry(600, math.pi / 2)
    assert geo.coverage_radius(nadir_only) == pytest.approx(0.0, abs=1e-9)
    assert geo.coverage_radius(
        ConstellationGeometry(1200, math.radians(10))
    ) == pytest.approx(2672.0, abs=1.0)


def test_propagation_delay():
    assert geo.propagation_delay(600.0) == pytest.approx(2.0014e-3, rel=1e-4)
    assert geo.propagation_delay(1931.7) == pytest.approx(6.443e-3, rel=1e-4)
    assert geo.propagation_delay(0.0) == 0.0
    with pytest.raises(ValueError):
        geo.propagation_delay(-1.0)


def test_propagation_delay_is_linear():
    rng = np.random.default_rng(3)
    for _ in range(100):
        a, b = rng.uniform(0, 3000, size=2)
        total = geo.propagation_delay(a + b)
        assert total == pytest.approx(geo.propagation_delay(a) + geo.propagation_delay(b),
                                      rel=1e-12)


def test_differential_delay(geom600):
    assert geo.differential_delay(geom600) * 1e3 == pytest.approx(4.44, rel=5e-3)
    assert geo.differential_delay(ConstellationGeometry(600, math.pi / 2)) == pytest.approx(
        0.0, abs=1e-12
    )
    g12 = ConstellationGeometry(1200, math.radians(10))
    expected = geo.propagation_delay(
        oracles.slant_range_by_law_of_sines(6371.0, 1200.0, math.radians(10))
    ) - geo.propagation_delay(1200.0)
    assert geo.differential_delay(g12) == pytest.approx(expected, rel=1e-12)


def test_radial_velocity_special_placements(geom600):
    assert geo.radial_velocity(geom600, UePlacement(0.0, 0.3)) == 0.0
    lam_max = geo.coverage_central_angle(geom600)
    cross_track = geo.radial_velocity(geom600, UePlacement(lam_max, math.pi / 2))
    assert abs(cross_track) < 1e-12
    closing = geo.radial_velocity(geom600, UePlacement(lam_max, 0.0))
    assert closing == pytest.approx(6.806, abs=1e-3)
    # the edge-of-coverage identity v_orb * (Re/(Re+h)) * cos(eps_min)
    v_orb = geo.orbital_velocity(geom600)
    assert closing == pytest.approx(v_orb * 6371.0 / 6971.0 * math.cos(math.radians(10)),
                                    rel=1e-9)


def test_radial_velocity_matches_vector_oracle(geom600):
    rng = np.random.default_rng(5)
    lam_max = geo.coverage_central_angle(geom600)
    v_orb = geo.orbital_velocity(geom600)
    for _ in range(200):
        ue = UePlacement(rng.uniform(0, lam_max), rng.uniform(0, 2 * math.pi))
        expected = oracles.radial_velocity_by_dot_product(
            6371.0, 600.0, v_orb, ue.central_angle_rad, ue.azimuth_rad
        )
        assert geo.radial_velocity(geom600, ue) == pytest.approx(expected, abs=1e-9)


def test_radial_velocity_bounded_by_max_closing_speed(geom600):
    rng = np.random.default_rng(6)
    lam_max = geo.coverage_central_angle(geom600)
    bound = geo.orbital_velocity(geom600) * 6371.0 / 6971.0
    for _ in range(500):
        ue = UePlacement(rng.uniform(0, lam_max), rng.uniform(0, 2 * math.pi))
        assert abs(geo.radial_velocity(geom600, ue)) <= bound + 1e-12


def test_doppler_shift(geom600):
    lam_max = geo.coverage_central_angle(geom600)
    v_r = geo.radial_velocity(geom600, UePlacement(lam_max, 0.0))
    at_30 = geo.doppler_shift(v_r, 30e9)
    assert at_30 == pytest.approx(681e3, abs=1e3)
    assert geo.doppler_shift(v_r, 20e9) == pytest.approx(at_30 * 2.0 / 3.0, rel=1e-12)
    assert geo.doppler_shift(v_r, 20e9) == pytest.approx(454.0e3, abs=0.2e3)
    assert geo.doppler_shift(0.0, 20e9) == 0.0
    with pytest.raises(ValueError):
        geo.doppler_shift(v_r, 0.0)


def test_sample_ue_inverts_cap_area_cdf(geom600):
    lam_max = geo.coverage_central_angle(geom600)
    at_zero = geo.sample_ue(StubRng([0.0, 0.25]), geom600)
    assert at_zero.central_angle_rad == pytest.approx(0.0, abs=1e-12)
    assert at_zero.azimuth_rad == pytest.approx(0.25 * 2 * math.pi)
    near_edge = geo.sample_ue(StubRng([1.0 - 1e-12, 0.0]), geom600)
    assert near_edge.central_angle_rad == pytest.approx(lam_max, abs=1e-5)
    with pytest.raises(ValueError):
        geo.sample_ue(StubRng([0.5, 0.5]), ConstellationGeometry(600, math.pi / 2))


def test_sampled_ues_are_area_uniform(geom600):
    rng = np.random.default_rng(42)
    n = 1_000_000
    lam_max = geo.coverage_central_angle(geom600)
    angles = np.array([geo.sample_ue(rng, geom600).central_angle_rad for _ in range(n)])
    assert np.all(angles >= 0) and np.all(angles <= lam_max)

    # fraction inside the half-angle cap matches the area ratio at 3 sigma
    p = (1 - math.cos(lam_max / 2)) / (1 - math.cos(lam_max))
    observed = np.mean(angles <= lam_max / 2)
    sigma = math.sqrt(p * (1 - p) / n)
    assert abs(observed - p) < 3 * sigma

    # chi-square over 10 equal-area annuli
    edges = np.arccos(1 - np.arange(11) / 10 * (1 - math.cos(lam_max)))
    counts, _ = np.histogram(angles, bins=edges)
    expected = n / 10
    statistic = np.sum((counts - expected) ** 2 / expected)
    assert statistic < chi2.ppf(1 - 0.0027, df=9)


def test_sampled_sightlines_stay_inside_coverage(geom600):
    rng = np.random.default_rng(9)
    d_max = geo.max_slant_range(geom600)
    for _ in range(1000):
        ue = geo.sample_ue(rng, geom600)
        d = geo.slant_range_from_central_angle(geom600, ue.central_angle_rad)
        assert 600.0 - 1e-9 <= d <= d_max + 1e-9


def test_sightline_assembles_consistent_fields(geom600):
    rng = np.random.default_rng(10)
    ue = geo.sample_ue(rng, geom600)
    sight = geo.sightline(geom600, ue, 20e9)
    assert sight.slant_range_km == pytest.approx(
        geo.slant_range_from_central_angle(geom600, ue.central_angle_rad)
    )
    assert sight.delay_s == pytest.approx(sight.slant_range_km / 299792.458)
    assert sight.doppler_shift_hz == pytest.approx(
        sight.radial_velocity_km_s / 299792.458 * 20e9
    )


def test_geometry_validation():
    with pytest.raises(ValueError):
        ConstellationGeometry(-1.0, math.radians(10))
    with pytest.raises(ValueError):
        ConstellationGeometry(600.0, 0.0)
    with pytest.raises(ValueError):
        ConstellationGeometry(600.0, math.radians(10), earth_radius_km=0.0)
