import math
import pathlib

import pytest

import gdpwage

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def test_labor_share_and_identity():
    assert gdpwage.labor_share(0.0005, 1200) == pytest.approx(0.60, abs=1e-15)
    assert gdpwage.identity_residual(6.0e12, 1.0e13, 3.0e8, 1000) <= 1e-12
    with pytest.raises(ValueError):
        gdpwage.labor_share(0, 1)


def test_compress_kernel():
    gdppc = 25.0 * gdpwage.HOURS_PER_YEAR
    out = gdpwage.compress([(5, 1), (15, 1), (25, 1)], 6.0, gdppc)
    assert [w for w, _ in out] == pytest.approx([6.0, 15.5, 25.0])
    with pytest.raises(gdpwage.DomainError):
        gdpwage.compress([(5, 1), (15, 1)], 4.0, gdppc)


def test_horizon():
    assert gdpwage.crossing_wage((2.0, 0.0), (1.0, 15.0, 4.0)) == pytest.approx(9.5)
    assert gdpwage.horizon_side((2.0, 10.0, 0.0), (1.0, 15.0, 4.0)) == "high-cheaper"


def test_hungary_ratios():
    rows = {r["year"]: r for r in gdpwage.ratios(str(DATA / "hungary.csv"))}
    assert rows[2000]["w_min"] == pytest.approx(0.406, abs=0.005)
    assert rows[2002]["w_min"] == pytest.approx(0.606, abs=0.005)
    assert rows[2000]["kaitz"] is None


def test_real_plateau():
    rows = {y: (mn, me) for y, mn, me in gdpwage.real_series(str(DATA / "us_annual.csv"), 1960)}
    assert rows[1985][0] == pytest.approx(2090, abs=50)
    assert rows[2017][1] == pytest.approx(6643, abs=80)


def test_simulate_presets():
    assert "hungary" in gdpwage.preset_names()
    hist = gdpwage.simulate("hungary")
    assert hist[0]["w_min"] == pytest.approx(0.406)
    assert hist[-1]["w_min"] == pytest.approx(0.606)

    fixed = gdpwage.simulate({"preset": "us-fixed-nominal", "steps": 30})
    assert fixed[-1]["w_min"] / fixed[0]["w_min"] == pytest.approx(1.02 ** -30, abs=1e-9)


def test_simulate_config_round_trip():
    cfg = gdpwage.preset("us-baseline")
    cfg["steps"] = 5
    assert gdpwage.simulate({"config": cfg}) == gdpwage.simulate({"preset": "us-baseline", "steps": 5})
    assert gdpwage.history_csv('{"preset": "hungary"}').startswith("t,nominal_min,w_min")


def test_fixed_point_matches_run():
    cfg = gdpwage.preset("gdpc-two-thirds")
    bins = [(b["wage"], b["mass"]) for b in cfg["initial"]["distribution"]]
    fp = gdpwage.fixed_point_wmean(2 / 3, bins, cfg["initial"]["gdp_per_capita"])
    tail = gdpwage.simulate("gdpc-two-thirds")[-1]["w_mean"]
    assert math.isclose(fp, tail, abs_tol=1e-6)


def test_invalid_payload():
    with pytest.raises(gdpwage.ValidationError):
        gdpwage.simulate({"preset": "hungary", "steps": 0})
