import json
import math

import numpy as np
import pytest

from leotdd import experiment
from leotdd.config import ConfigError, load_config
from leotdd.experiment import SchemeOutcome, UeRecord


def small_run(config_path, n=200, **overrides):
    merged = {"experiment.num_ues": str(n)}
    merged.update({k: str(v) for k, v in overrides.items()})
    return experiment.run(load_config(str(config_path), merged))


def test_run_is_deterministic_for_fixed_seed(config_path):
    first = small_run(config_path, n=50)
    second = small_run(config_path, n=50)
    assert experiment.records_csv_lines(first) == experiment.records_csv_lines(second)
    assert experiment.cdf_csv_lines(first) == experiment.cdf_csv_lines(second)


def test_run_results_change_with_seed(config_path):
    a = small_run(config_path, n=20)
    b = small_run(config_path, n=20, **{"experiment.seed": 1})
    assert experiment.records_csv_lines(a) != experiment.records_csv_lines(b)


def test_records_carry_consistent_geometry(config_path):
    result = small_run(config_path, n=100)
    assert len(result.records) == 100
    for r in result.records:
        assert 600.0 - 1e-9 <= r.slant_range_km <= 1932.0
        assert r.delay_s == pytest.approx(r.slant_range_km / 299792.458)
        assert set(r.outcomes) == set(result.scheme_labels)


def test_empirical_cdf_reference_cases():
    single = experiment.empirical_cdf([1.0, 1.0, 1.0])
    assert single.values == [1.0]
    assert single.probabilities == [1.0]

    quarters = experiment.empirical_cdf([3.0, 1.0, 4.0, 2.0])
    assert quarters.values == [1.0, 2.0, 3.0, 4.0]
    assert quarters.probabilities == [0.25, 0.5, 0.75, 1.0]
    # F just below 3 equals F at 2: the median of four points
    assert quarters.probabilities[quarters.values.index(2.0)] == 0.5

    with pytest.raises(ValueError):
        experiment.empirical_cdf([])


def test_empirical_cdf_is_valid_distribution(config_path):
    result = small_run(config_path, n=300)
    for label in result.scheme_labels:
        series = experiment.empirical_cdf(experiment.scheme_ratios(result, label))
        assert all(a < b for a, b in zip(series.values, series.values[1:]))
        assert all(a < b for a, b in zip(series.probabilities, series.probabilities[1:]))
        assert series.probabilities[-1] == pytest.approx(1.0)


def test_empirical_cdf_close_to_identity_for_uniform_draws():
    rng = np.random.default_rng(8)
    draws = rng.random(10_000).tolist()
    series = experiment.empirical_cdf(draws)
    sup = max(abs(p - v) for v, p in zip(series.values, series.probabilities))
    assert sup < 0.03  # DKW bound at well past 3 sigma for n = 1e4


def test_fraction_above():
    assert experiment.fraction_above([2.0, 2.0], 1.0) == 1.0
    assert experiment.fraction_above([0.5, 1.5], 1.0) == 0.5
    with pytest.raises(ValueError):
        experiment.fraction_above([], 1.0)


def test_fraction_above_complements_cdf():
    rng = np.random.default_rng(12)
    values = rng.uniform(0.5, 1.5, 500).tolist()
    for t in [0.7, 1.0, 1.3]:
        below_or_at = sum(1 for v in values if v <= t) / len(values)
        assert experiment.fraction_above(values, t) + below_or_at == pytest.approx(1.0)


def _fake_result(ratios_by_label):
    n = len(next(iter(ratios_by_label.values())))
    records = []
    for i in range(n):
        outcomes = {
            label: SchemeOutcome(overlap_s=0.0, dl_time_fraction=0.7, ratio=r[i])
            for label, r in ratios_by_label.items()
        }
        records.append(
            UeRecord(i, 0.1, 0.2, 0.5, 1000.0, 3e-3, 100.0, 10.0,
                     outcomes=outcomes, degenerate=any(math.isnan(r[i]) for r in
                                                       ratios_by_label.values()))
        )
    return experiment.RunResult(
        records=records,
        scheme_labels=list(ratios_by_label),
        sync_report=None,
        worst_timing_residual_s=0.0,
        worst_frequency_residual_hz=0.0,
        degenerate_count=sum(1 for r in records if r.degenerate),
        config=None,
    )


def test_summarize_reference_cases():
    single = experiment.summarize(_fake_result({"usg": [1.0]}))["usg"]
    assert single.mean_ratio == 1.0
    assert single.median_ratio == 1.0
    assert single.fraction_above_1 == 0.0

    pair = experiment.summarize(_fake_result({"usg": [0.9, 1.1]}))["usg"]
    assert pair.mean_ratio == pytest.approx(1.0)
    assert pair.fraction_above_1 == 0.5


def test_summarize_counts_degenerates_and_rejects_all_degenerate():
    mixed = experiment.summarize(_fake_result({"usg": [1.2, math.nan, 0.8]}))["usg"]
    assert mixed.n == 2
    assert mixed.degenerate == 1
    with pytest.raises(ValueError):
        experiment.summarize(_fake_result({"usg": [math.nan, math.nan]}))


def test_degenerate_links_are_flagged_not_fatal(config_path):
    result = small_run(config_path, n=20, **{"link.eirp_density_dbw_mhz": -200})
    assert result.degenerate_count == 20
    assert all(r.degenerate for r in result.records)
    for line in experiment.records_csv_lines(result)[1:]:
        assert "nan" in line


def test_scheme_ordering_and_bands_at_scale(default_run):
    stats = experiment.summarize(default_run)
    fractions = {label: s.fraction_above_1 for label, s in stats.items()}
    assert (
        fractions["tdd_efs"]
        < fractions["tdd_pou100"]
        < fractions["tdd_usg"]
        < fractions["tdd_pou130"]
    )
    assert 0.48 <= fractions["tdd_usg"] <= 0.78


def test_pou_fraction_monotone_in_sic(config_path):
    fractions = []
    for sic in [90, 110, 130]:
        result = small_run(
            config_path, n=400,
            **{"schemes.list": "tdd_pou130", "scheme.tdd_pou130.sic_db": sic},
        )
        fractions.append(experiment.summarize(result)["tdd_pou130"].fraction_above_1)
    assert fractions == sorted(fractions)


def test_pou_ratio_collapses_to_resource_ratio_without_aging(config_path):
    result = small_run(
        config_path, n=300,
        **{
            "aging.doppler_spread_hz": 0,
            "schemes.list": "tdd_pou130",
            "scheme.tdd_pou130.sic_db": "inf",
        },
    )
    for ratio in experiment.scheme_ratios(result, "tdd_pou130"):
        assert ratio == pytest.approx(0.7 / 0.665, abs=1e-9)


def test_csv_lines_schema(config_path):
    result = small_run(config_path, n=10)
    lines = experiment.records_csv_lines(result)
    header = lines[0].split(",")
    assert header[:7] == [
        "ue_index",
        "central_angle_deg",
        "elevation_deg",
        "slant_range_km",
        "delay_ms",
        "doppler_khz",
        "snr_db",
    ]
    for label in result.scheme_labels:
        assert f"{label}_overlap_ms" in header
        assert f"{label}_ratio" in header
    assert len(lines) == 11
    first = lines[1].split(",")
    assert first[0] == "0"
    for field in first[1:]:
        float(field)  # six-significant-digit decimals parse back

    cdf_lines = experiment.cdf_csv_lines(result)
    assert cdf_lines[0] == "scheme,ratio,cumulative_probability"


def test_summary_dict_structure(config_path):
    result = small_run(config_path, n=30)
    summary = experiment.summary_dict(result)
    assert summary["num_ues"] == 30
    assert set(summary["schemes"]) == set(result.scheme_labels)
    assert summary["sync"]["timing_pass"] is True
    json.dumps(summary)  # JSON-serializable as written


def test_write_outputs_round_trip(config_path, tmp_path):
    result = small_run(config_path, n=25)
    paths = experiment.write_outputs(result, tmp_path / "out")
    assert sorted(paths) == ["cdf.csv", "records.csv", "summary.json"]
    text = (tmp_path / "out" / "records.csv").read_text()
    assert text.endswith("\n") and "\r" not in text
    loaded = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert loaded["schemes"]["tdd_usg"]["n"] == 25


def test_config_validation_names_offending_key(config_path, tmp_path):
    with pytest.raises(ConfigError, match="duplexing.dl_fraction"):
        load_config(str(config_path), {"duplexing.dl_fraction": "1.4"})
    with pytest.raises(ConfigError, match="experiment.num_ues"):
        load_config(str(config_path), {"experiment.num_ues": "0"})
    with pytest.raises(ConfigError, match="nosuch.key"):
        load_config(str(config_path), {"nosuch.key": "1"})

    incomplete = tmp_path / "incomplete.ini"
    incomplete.write_text("[geometry]\naltitude_km = 600\n")
    with pytest.raises(ConfigError, match="geometry.min_elevation_deg"):
        load_config(str(incomplete))

    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "missing.ini"))
