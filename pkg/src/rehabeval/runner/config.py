"""Experiment configuration: a JSON document mirroring these field names."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigError
from ..features.spec import find_feature_spec
from ..gateway.cache import NullCache, ResponseCache
from ..gateway.client import HttpCompletionClient, ModelEndpointConfig
from ..gateway.mock import MockOracle, MockOracleClient
from ..prompting.policy import SerializationPolicy
from ..prompting.techniques import PromptTechnique, TechniqueKind
from ..skeleton.splits import SplitPolicy
from ..skeleton.types import Label

DEFAULT_COMPARISON_KINDS = (
    TechniqueKind.CLASSIFICATION,
    TechniqueKind.CHAIN_OF_THOUGHT,
    TechniqueKind.CERTAINTY,
    TechniqueKind.PROBABILITY,
    TechniqueKind.CHAIN_OF_THOUGHT_CERTAINTY,
)


@dataclass
class ExperimentConfig:
    dataset_id: str
    exercise_ids: list[str]
    data_dir: str
    output_dir: str
    techniques: list[PromptTechnique] = field(default_factory=list)
    k_values: list[int] = field(default_factory=lambda: [0, 1, 2, 3, 4, 5])
    seed: int = 0
    split_policy: SplitPolicy = SplitPolicy.SUBJECT_DISJOINT
    serialization: SerializationPolicy = field(default_factory=SerializationPolicy)
    endpoint: dict = field(default_factory=dict)
    threshold: float = 0.5
    cache_dir: str | None = None
    input_variants: list[str] = field(default_factory=lambda: ["features"])
    positive_class: Label = Label.CORRECT
    feature_config_dir: str | None = None
    comparison_k: int = 3
    feedback_persona: str = "physiotherapist"
    feedback_samples: int = 3
    in_flight: int = 4

    def __post_init__(self):
        if not self.k_values:
            raise ConfigError("k_values must be non-empty")
        if not self.exercise_ids:
            raise ConfigError("exercise_ids must be non-empty")
        for variant in self.input_variants:
            if variant not in ("features", "raw_joints"):
                raise ConfigError(f"unknown input variant {variant!r}")
        if not self.techniques:
            self.techniques = [
                PromptTechnique(kind=kind, k=self.comparison_k)
                for kind in DEFAULT_COMPARISON_KINDS
            ]
        if self.in_flight < 1:
            raise ConfigError("in_flight must be at least 1")

    def validate_exercises(self):
        """Every exercise id must resolve to a feature spec before any completion runs."""
        for exercise_id in self.exercise_ids:
            self.feature_spec_for(exercise_id)

    def feature_spec_for(self, exercise_id: str):
        dataset = self.dataset_id if self.dataset_id in ("uiprmd", "rehab24_6") else None
        return find_feature_spec(
            exercise_id, dataset_id=dataset, extra_dir=self.feature_config_dir
        )

    def data_file_for(self, exercise_id: str) -> Path:
        return Path(self.data_dir) / f"{exercise_id}.jsonl"

    @classmethod
    def from_dict(cls, record: dict) -> "ExperimentConfig":
        record = dict(record)
        try:
            techniques = [
                PromptTechnique(
                    kind=TechniqueKind(t["kind"]),
                    k=int(t.get("k", record.get("comparison_k", 3))),
                    persona=t.get("persona"),
                )
                for t in record.pop("techniques", [])
            ]
            config = cls(
                dataset_id=record.pop("dataset_id"),
                exercise_ids=list(record.pop("exercise_ids")),
                data_dir=record.pop("data_dir"),
                output_dir=record.pop("output_dir"),
                techniques=techniques,
                k_values=[int(k) for k in record.pop("k_values", [0, 1, 2, 3, 4, 5])],
                seed=int(record.pop("seed", 0)),
                split_policy=SplitPolicy(record.pop("split_policy", "subject_disjoint")),
                serialization=SerializationPolicy(**record.pop("serialization", {})),
                endpoint=dict(record.pop("endpoint", {})),
                threshold=float(record.pop("threshold", 0.5)),
                cache_dir=record.pop("cache_dir", None),
                input_variants=list(record.pop("input_variants", ["features"])),
                positive_class=Label.from_string(record.pop("positive_class", "correct")),
                feature_config_dir=record.pop("feature_config_dir", None),
                comparison_k=int(record.pop("comparison_k", 3)),
                feedback_persona=record.pop("feedback_persona", "physiotherapist"),
                feedback_samples=int(record.pop("feedback_samples", 3)),
                in_flight=int(record.pop("in_flight", 4)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad experiment config: {exc}") from exc
        if record:
            raise ConfigError(f"unknown config fields: {sorted(record)}")
        return config

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file not found: {p}")
        try:
            record = json.loads(p.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"unreadable config {p}: {exc}") from exc
        return cls.from_dict(record)


def build_client(config: ExperimentConfig):
    """Construct the completion client the config describes (mock or live)."""
    endpoint = dict(config.endpoint)
    kind = endpoint.pop("kind", "mock" if "thresholds" in endpoint else "http")
    cache = (
        ResponseCache(Path(config.cache_dir) / "responses.jsonl")
        if config.cache_dir
        else NullCache()
    )
    if kind == "mock":
        thresholds = endpoint.get("thresholds")
        if not thresholds:
            raise ConfigError("mock endpoint needs a thresholds table")
        oracle = MockOracle(
            thresholds={str(k): float(v) for k, v in thresholds.items()},
            certainty=float(endpoint.get("certainty", 0.85)),
            probability_correct=float(endpoint.get("probability_correct", 0.9)),
            probability_incorrect=float(endpoint.get("probability_incorrect", 0.1)),
        )
        return MockOracleClient(oracle, cache=cache, delimiter=config.serialization.delimiter)
    if kind == "http":
        try:
            model = ModelEndpointConfig(
                base_url=endpoint["base_url"],
                model_name=endpoint["model_name"],
                api_key_env_var=endpoint.get("api_key_env_var", "LLM_API_KEY"),
                temperature=float(endpoint.get("temperature", 0.0)),
                max_output_tokens=int(endpoint.get("max_output_tokens", 1024)),
                request_timeout_s=float(endpoint.get("request_timeout_s", 60.0)),
                max_retries=int(endpoint.get("max_retries", 3)),
            )
        except KeyError as exc:
            raise ConfigError(f"http endpoint config missing field {exc}") from exc
        return HttpCompletionClient(model, cache=cache)
    raise ConfigError(f"unknown endpoint kind {kind!r}")


def force_mock(config: ExperimentConfig) -> ExperimentConfig:
    """Apply the --mock override: the endpoint must carry a thresholds table."""
    endpoint = dict(config.endpoint)
    if "thresholds" not in endpoint:
        raise ConfigError("--mock needs endpoint.thresholds in the config")
    endpoint["kind"] = "mock"
    config.endpoint = endpoint
    return config
