"""Minimum and mean wages measured against per-capita GDP."""

import json as _json

from ._core import (
    HOURS_PER_YEAR,
    DomainError,
    SimulationError,
    ValidationError,
    compress,
    crossing_wage,
    decompose_gdppc,
    fixed_point_wmean,
    gini,
    history_csv,
    horizon_side,
    identity_residual,
    labor_share,
    mean_wage,
    preset_json,
    preset_names,
    ratio_nominal,
    ratios,
    real_series,
)
from ._core import simulate as _simulate


def preset(name):
    """Scenario config for a bundled preset, as a dict."""
    return _json.loads(preset_json(name))


def simulate(scenario, include_initial=True):
    """Run a scenario given as a preset name, a payload dict or a JSON string."""
    if isinstance(scenario, dict):
        scenario = _json.dumps(scenario)
    elif not scenario.lstrip().startswith("{"):
        scenario = _json.dumps({"preset": scenario})
    return _simulate(scenario, include_initial)


__all__ = [
    "HOURS_PER_YEAR",
    "DomainError",
    "SimulationError",
    "ValidationError",
    "compress",
    "crossing_wage",
    "decompose_gdppc",
    "fixed_point_wmean",
    "gini",
    "history_csv",
    "horizon_side",
    "identity_residual",
    "labor_share",
    "mean_wage",
    "preset",
    "preset_names",
    "ratio_nominal",
    "ratios",
    "real_series",
    "simulate",
]
