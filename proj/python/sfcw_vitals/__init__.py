"""Stepped-frequency MIMO radar localization and breathing-rate estimation."""

from ._core import (
    ArgumentError,
    ConfigError,
    DataError,
    MeasurementCube,
    NumericError,
    RadarConfig,
    breathing_frequency,
    convert_recording,
    derive_params,
    estimate_order,
    match_and_score,
    range_profile,
    read_container,
    run_pipeline,
    simulate_scenario,
    walabot_config,
    write_container,
)

__all__ = [
    "ArgumentError",
    "ConfigError",
    "DataError",
    "MeasurementCube",
    "NumericError",
    "RadarConfig",
    "breathing_frequency",
    "convert_recording",
    "derive_params",
    "estimate_order",
    "match_and_score",
    "range_profile",
    "read_container",
    "run_pipeline",
    "simulate_scenario",
    "walabot_config",
    "write_container",
]
