"""Experiment configuration: a single JSON document with explicit defaults."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field

from ..errors import ConfigurationError
from ..growth import GrowthConfig
from ..refined import RefinedSpec

SEED_ENV_VAR = "RENFORGE_SEED"

KNOWN_SCHEDULES = ("all_firing", "random_subset")


@dataclass
class ExperimentConfig:
    seed: int = 0
    scenario: str = "fig2_growth"
    growth: GrowthConfig = field(default_factory=GrowthConfig)
    refined_specs: list[RefinedSpec] = field(default_factory=list)
    schedule: str = "all_firing"
    schedule_probability: float = 0.5   # used by the random_subset schedule
    max_ticks: int = 500
    output_dir: str = "out"
    sweep_inputs: list[int] = field(default_factory=lambda: [10, 25, 50])
    sweep_thresholds: list[float] = field(default_factory=lambda: [5.0])

    def to_doc(self) -> dict:
        return {
            "seed": self.seed,
            "scenario": self.scenario,
            "growth": self.growth.to_doc(),
            "refined_specs": [spec.to_doc() for spec in self.refined_specs],
            "schedule": self.schedule,
            "schedule_probability": self.schedule_probability,
            "max_ticks": self.max_ticks,
            "output_dir": self.output_dir,
            "sweep_inputs": list(self.sweep_inputs),
            "sweep_thresholds": list(self.sweep_thresholds),
        }


def config_to_json(config: ExperimentConfig) -> str:
    return json.dumps(config.to_doc(), indent=2) + "\n"


def default_config_json() -> str:
    return config_to_json(ExperimentConfig())


_FIELD_NAMES = {f.name for f in dataclasses.fields(ExperimentConfig)}


def config_from_doc(doc: dict) -> ExperimentConfig:
    unknown = set(doc) - _FIELD_NAMES
    if unknown:
        raise ConfigurationError(f"unknown configuration keys: {sorted(unknown)}")
    kwargs = dict(doc)
    try:
        if "growth" in kwargs:
            kwargs["growth"] = GrowthConfig.from_doc(kwargs["growth"])
        if "refined_specs" in kwargs:
            kwargs["refined_specs"] = [RefinedSpec.from_doc(d)
                                       for d in kwargs["refined_specs"]]
        config = ExperimentConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad configuration value: {exc}") from exc
    if config.schedule not in KNOWN_SCHEDULES:
        raise ConfigurationError(
            f"unknown schedule {config.schedule!r}; expected one of {KNOWN_SCHEDULES}")
    return config


def config_from_json(text: str) -> ExperimentConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigurationError("config must be a JSON object")
    return config_from_doc(doc)


def load_config(path) -> ExperimentConfig:
    """Read a config file; the seed env var overrides the file's seed."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    config = config_from_json(text)
    override = os.environ.get(SEED_ENV_VAR)
    if override is not None:
        try:
            config.seed = int(override)
        except ValueError as exc:
            raise ConfigurationError(
                f"{SEED_ENV_VAR} must be an integer, got {override!r}") from exc
    return config
