"""Execution of one experiment cell: split, prompt, complete, parse, score."""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..features.extract import FeatureSequence, extract_features, joint_coordinate_sequence
from ..metrics import MetricsReport, build_report
from ..parsing import AssessmentOutcome, ParseStatus, parse
from ..prompting.policy import SerializationPolicy
from ..prompting.render import render_prompt
from ..prompting.techniques import PromptTechnique, TechniqueKind
from ..skeleton.splits import SplitPolicy, split_support_and_test
from ..skeleton.types import Label


def cell_seed(global_seed: int, exercise_id: str, k: int) -> int:
    """Stable per-cell split seed.

    Depends on (global seed, exercise, k) but NOT the technique, so every
    technique compared at the same k sees the identical support/test split.
    """
    digest = hashlib.sha256(f"{global_seed}:{exercise_id}:{k}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class AuditRow:
    """Reconstruction trail for one scored test sample."""

    sample_key: str
    prompt_hash: str
    truth: str
    predicted: str | None
    probability_correct: float | None
    certainty: float | None
    parse_status: str
    raw_response: str

    def to_dict(self) -> dict:
        return {
            "sample_key": self.sample_key,
            "prompt_hash": self.prompt_hash,
            "truth": self.truth,
            "predicted": self.predicted,
            "probability_correct": self.probability_correct,
            "certainty": self.certainty,
            "parse_status": self.parse_status,
            "raw_response": self.raw_response,
        }

    @classmethod
    def from_dict(cls, record: dict) -> "AuditRow":
        return cls(**record)

    def as_outcome(self) -> AssessmentOutcome:
        return AssessmentOutcome(
            parse_status=ParseStatus(self.parse_status),
            predicted_label=Label.from_string(self.predicted) if self.predicted else None,
            probability_correct=self.probability_correct,
            certainty=self.certainty,
            raw_text=self.raw_response,
        )


@dataclass
class CellResult:
    exercise_id: str
    technique: str
    k: int
    seed: int
    input_variant: str
    fingerprint: str
    report: MetricsReport
    audit: list[AuditRow] = field(default_factory=list)
    support_keys: list[tuple[str, str]] = field(default_factory=list)

    @property
    def cell_name(self) -> str:
        return f"{self.exercise_id}_{self.technique}_k{self.k}_{self.input_variant}"

    def to_dict(self) -> dict:
        return {
            "exercise_id": self.exercise_id,
            "technique": self.technique,
            "k": self.k,
            "seed": self.seed,
            "input_variant": self.input_variant,
            "fingerprint": self.fingerprint,
            "report": self.report.to_dict(),
            "audit": [row.to_dict() for row in self.audit],
            "support_keys": [list(pair) for pair in self.support_keys],
        }

    @classmethod
    def from_dict(cls, record: dict) -> "CellResult":
        return cls(
            exercise_id=record["exercise_id"],
            technique=record["technique"],
            k=record["k"],
            seed=record["seed"],
            input_variant=record["input_variant"],
            fingerprint=record["fingerprint"],
            report=MetricsReport.from_dict(record["report"]),
            audit=[AuditRow.from_dict(r) for r in record["audit"]],
            support_keys=[tuple(pair) for pair in record["support_keys"]],
        )

    def save(self, directory) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"{self.cell_name}.json"
        path.write_text(json.dumps(self.to_dict(), indent=1) + "\n", encoding="utf-8")
        return path

    @classmethod
    def load(cls, path) -> "CellResult":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def cell_fingerprint(
    exercise_id: str,
    technique: PromptTechnique,
    seed: int,
    split_policy: SplitPolicy,
    policy: SerializationPolicy,
    input_variant: str,
    threshold: float,
    model_name: str,
) -> str:
    payload = json.dumps(
        {
            "exercise": exercise_id,
            "technique": technique.kind.value,
            "k": technique.k,
            "seed": seed,
            "split_policy": split_policy.value,
            "serialization": [
                policy.target_frames,
                policy.decimals,
                policy.delimiter,
                policy.include_header,
            ],
            "input_variant": input_variant,
            "threshold": threshold,
            "model": model_name,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def sequences_for(samples, skeleton_spec, feature_spec, input_variant: str) -> list[FeatureSequence]:
    if input_variant == "raw_joints":
        return [joint_coordinate_sequence(s, skeleton_spec) for s in samples]
    return [extract_features(s, skeleton_spec, feature_spec) for s in samples]


def run_cell(
    sequences: list[FeatureSequence],
    exercise_id: str,
    exercise_name: str,
    sensor_name: str,
    technique: PromptTechnique,
    seed: int,
    split_policy: SplitPolicy,
    policy: SerializationPolicy,
    client,
    threshold: float = 0.5,
    positive_label: Label = Label.CORRECT,
    input_variant: str = "features",
    in_flight: int = 1,
) -> CellResult:
    """Run one (exercise, technique, k) cell over prepared feature sequences.

    The support set is drawn once per cell and reused for every test sample.
    Completions inside the cell may run concurrently up to ``in_flight``.
    """
    support, test = split_support_and_test(sequences, technique.k, seed, split_policy)
    bundles = [
        render_prompt(technique, support, seq, exercise_name, sensor_name, policy)
        for seq in test
    ]

    if in_flight > 1 and len(bundles) > 1:
        with ThreadPoolExecutor(max_workers=in_flight) as pool:
            records = list(pool.map(client.complete, bundles))
    else:
        records = [client.complete(b) for b in bundles]

    outcomes = [
        parse(record.response_text, bundle.expected_output_format, threshold)
        for record, bundle in zip(records, bundles)
    ]
    audit = [
        AuditRow(
            sample_key=seq.key,
            prompt_hash=record.prompt_hash,
            truth=seq.label.value,
            predicted=outcome.predicted_label.value if outcome.predicted_label else None,
            probability_correct=outcome.probability_correct,
            certainty=outcome.certainty,
            parse_status=outcome.parse_status.value,
            raw_response=record.response_text,
        )
        for seq, record, outcome in zip(test, records, outcomes)
    ]
    report = build_report(
        list(zip(outcomes, (seq.label for seq in test))),
        positive_label=positive_label,
        with_probabilities=technique.kind is TechniqueKind.PROBABILITY,
        exercise_id=exercise_id,
        technique=technique.kind.value,
        k=technique.k,
        seed=seed,
        model_name=getattr(client, "model_name", ""),
    )
    fingerprint = cell_fingerprint(
        exercise_id, technique, seed, split_policy, policy, input_variant, threshold,
        getattr(client, "model_name", ""),
    )
    return CellResult(
        exercise_id=exercise_id,
        technique=technique.kind.value,
        k=technique.k,
        seed=seed,
        input_variant=input_variant,
        fingerprint=fingerprint,
        report=report,
        audit=audit,
        support_keys=[(key, label.value) for key, label in
                      ((s.key, s.label) for s in support)],
    )
