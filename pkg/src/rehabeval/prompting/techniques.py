"""Prompting techniques and their fixed output-format clauses."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import ConfigError


class TechniqueKind(Enum):
    CLASSIFICATION = "classification"
    CHAIN_OF_THOUGHT = "chain_of_thought"
    PROBABILITY = "probability"
    CERTAINTY = "certainty"
    CHAIN_OF_THOUGHT_CERTAINTY = "chain_of_thought_certainty"
    ROLE_PLAY_FEEDBACK = "role_play_feedback"


class ExpectedFormat(Enum):
    LABEL = "label"
    LABEL_REASONING = "label_reasoning"
    PROBABILITY_ONLY = "probability_only"
    LABEL_CERTAINTY = "label_certainty"
    FREE_TEXT = "free_text"


_FORMAT_BY_KIND = {
    TechniqueKind.CLASSIFICATION: ExpectedFormat.LABEL,
    TechniqueKind.CHAIN_OF_THOUGHT: ExpectedFormat.LABEL_REASONING,
    TechniqueKind.PROBABILITY: ExpectedFormat.PROBABILITY_ONLY,
    TechniqueKind.CERTAINTY: ExpectedFormat.LABEL_CERTAINTY,
    TechniqueKind.CHAIN_OF_THOUGHT_CERTAINTY: ExpectedFormat.LABEL_CERTAINTY,
    TechniqueKind.ROLE_PLAY_FEEDBACK: ExpectedFormat.FREE_TEXT,
}

# Output-format clauses, one per assessment technique. The quoted format name
# and the instruction sentence are the contract both the golden prompt tests
# and the response parser build on; change them only together.
FORMAT_CLAUSES = {
    TechniqueKind.CLASSIFICATION: (
        '"Label". The label is either \'correct\' or \'incorrect\'.'
    ),
    TechniqueKind.CHAIN_OF_THOUGHT: (
        '"Label, Reasoning". Explain your reasoning step by step.'
    ),
    TechniqueKind.PROBABILITY: (
        '"Probability". Provide a probability score, where a higher score means a higher '
        "probability towards 'correct' and a lower score for 'incorrect'."
    ),
    TechniqueKind.CERTAINTY: (
        '"Label, Certainty". Give a score between 0 and 1 for how certain you are in your '
        "classification."
    ),
    TechniqueKind.CHAIN_OF_THOUGHT_CERTAINTY: (
        '"Label, Certainty, Reasoning". Explain your reasoning step by step. Give a score '
        "between 0 and 1 for how certain you are in your classification."
    ),
}

ASSESSMENT_KINDS = tuple(FORMAT_CLAUSES)


@dataclass(frozen=True)
class PromptTechnique:
    """A technique choice: kind, shot count and (for feedback) the persona."""

    kind: TechniqueKind
    k: int = 0
    persona: str | None = None

    def __post_init__(self):
        if self.k < 0:
            raise ConfigError("shot count k must be nonnegative")
        if self.kind is TechniqueKind.ROLE_PLAY_FEEDBACK:
            if not self.persona or not self.persona.strip():
                raise ConfigError("role-play feedback requires a persona")
            if self.k == 0:
                raise ConfigError("feedback builds on a k-shot assessment; k must be >= 1")
        elif self.persona is not None:
            raise ConfigError("persona applies to role-play feedback only")

    @property
    def expected_format(self) -> ExpectedFormat:
        return _FORMAT_BY_KIND[self.kind]


def expected_format_for(kind: TechniqueKind) -> ExpectedFormat:
    return _FORMAT_BY_KIND[kind]


def ordinal(n: int) -> str:
    """1 -> '1st', 2 -> '2nd', 11 -> '11th', 23 -> '23rd'."""
    if n < 0:
        raise ValueError("ordinal of a negative number")
    if 10 <= n % 100 <= 13:
        suffix = "th"
    else:
        suffix = {1: "st", 2: "nd", 3: "rd"}.get(n % 10, "th")
    return f"{n}{suffix}"
