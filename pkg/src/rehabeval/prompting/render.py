"""Rendering the prompt templates with k-shot support blocks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..errors import ConfigError, StateError
from ..features.extract import FeatureSequence
from ..skeleton.types import DatasetId, Label
from .policy import SerializationPolicy, serialize_features
from .techniques import (
    FORMAT_CLAUSES,
    ExpectedFormat,
    PromptTechnique,
    TechniqueKind,
    ordinal,
)

# Task-sentence sensor wording per dataset.
SENSOR_NAMES = {
    DatasetId.UIPRMD: "Kinect",
    DatasetId.REHAB24_6: "inertial sensor",
    DatasetId.GENERIC: "motion capture",
}


@dataclass(frozen=True)
class PromptBundle:
    """A fully rendered prompt plus the identities that produced it."""

    technique: PromptTechnique
    rendered_text: str
    support_ids: tuple[tuple[str, Label], ...]
    test_id: str
    expected_output_format: ExpectedFormat


@lru_cache(maxsize=None)
def _template(name: str) -> str:
    return (resources.files("rehabeval") / "templates" / name).read_text(encoding="utf-8")


def _support_order(support: list[FeatureSequence]) -> list[FeatureSequence]:
    # Grouped by class, correct first, stable within class by sample identity.
    corrects = sorted((s for s in support if s.label is Label.CORRECT), key=lambda s: s.key)
    incorrects = sorted((s for s in support if s.label is Label.INCORRECT), key=lambda s: s.key)
    return corrects + incorrects


def _data_blocks(texts_with_labels: list[tuple[str, Label | None]]) -> str:
    blocks = []
    for i, (text, label) in enumerate(texts_with_labels, start=1):
        if label is None:
            blocks.append(f"<Data {i}>\n{text}")
        else:
            blocks.append(f"<Data {i}, Label {i}: {label.value}>\n{text}")
    return "\n\n".join(blocks)


def render_prompt(
    technique: PromptTechnique,
    support: list[FeatureSequence],
    test: FeatureSequence,
    exercise_name: str,
    sensor_name: str,
    policy: SerializationPolicy | None = None,
) -> PromptBundle:
    """Render one assessment prompt.

    Support sequences must hold exactly technique.k samples per class (their
    own labels are rendered into the support blocks); the test sample's label
    never reaches the text. The test block is the (2k+1)-th data block.
    """
    if technique.kind is TechniqueKind.ROLE_PLAY_FEEDBACK:
        raise ConfigError("use render_feedback_prompt for the feedback technique")
    policy = policy or SerializationPolicy()
    k = technique.k
    n_correct = sum(1 for s in support if s.label is Label.CORRECT)
    n_incorrect = len(support) - n_correct
    if n_correct != k or n_incorrect != k:
        raise ConfigError(
            f"support must hold {k} per class, got {n_correct} correct / {n_incorrect} incorrect"
        )

    ordered = _support_order(list(support))
    blocks = [(serialize_features(s, policy), s.label) for s in ordered]
    blocks.append((serialize_features(test, policy), None))
    n = 2 * k + 1

    rendered = _template("assessment.txt").format(
        ordinal=ordinal(n),
        exercise=exercise_name,
        sensor=sensor_name,
        format_clause=FORMAT_CLAUSES[technique.kind],
        data_blocks=_data_blocks(blocks),
    )
    return PromptBundle(
        technique=technique,
        rendered_text=rendered,
        support_ids=tuple((s.key, s.label) for s in ordered),
        test_id=test.key,
        expected_output_format=technique.expected_format,
    )


def render_feedback_prompt(
    persona: str,
    prior,
    test: FeatureSequence,
    exercise_name: str,
    policy: SerializationPolicy | None = None,
) -> PromptBundle:
    """Render the second-step role-play prompt carrying the step-one verdict.

    ``prior`` is the parsed assessment outcome for the same test sample; its
    label (parsed or derived) becomes the verdict wording in the prompt.
    """
    if not persona or not persona.strip():
        raise ConfigError("persona must be a non-empty string")
    if getattr(prior, "predicted_label", None) is None:
        raise StateError("feedback prompt needs a prior parsed label for the test sample")
    policy = policy or SerializationPolicy()

    technique = PromptTechnique(kind=TechniqueKind.ROLE_PLAY_FEEDBACK, k=1, persona=persona)
    rendered = _template("feedback.txt").format(
        persona=persona,
        exercise=exercise_name,
        verdict=prior.predicted_label.value,
        data_blocks=f"<Data 1>\n{serialize_features(test, policy)}",
    )
    return PromptBundle(
        technique=technique,
        rendered_text=rendered,
        support_ids=(),
        test_id=test.key,
        expected_output_format=ExpectedFormat.FREE_TEXT,
    )


def sensor_name_for(dataset_id: DatasetId | str) -> str:
    did = DatasetId(dataset_id) if not isinstance(dataset_id, DatasetId) else dataset_id
    return SENSOR_NAMES[did]
