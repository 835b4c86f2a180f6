"""Prompt construction: serialization policy, techniques and template rendering."""

from .policy import SerializationPolicy, format_value, resample_indices, serialize_features
from .render import (
    SENSOR_NAMES,
    PromptBundle,
    render_feedback_prompt,
    render_prompt,
    sensor_name_for,
)
from .techniques import (
    ASSESSMENT_KINDS,
    FORMAT_CLAUSES,
    ExpectedFormat,
    PromptTechnique,
    TechniqueKind,
    expected_format_for,
    ordinal,
)

__all__ = [
    "ASSESSMENT_KINDS",
    "ExpectedFormat",
    "FORMAT_CLAUSES",
    "PromptBundle",
    "PromptTechnique",
    "SENSOR_NAMES",
    "SerializationPolicy",
    "TechniqueKind",
    "expected_format_for",
    "format_value",
    "ordinal",
    "render_feedback_prompt",
    "render_prompt",
    "resample_indices",
    "sensor_name_for",
    "serialize_features",
]
