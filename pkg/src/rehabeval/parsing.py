"""Parsing model responses into structured assessment outcomes.

Parsing is total: every input yields an outcome whose ``parse_status`` says
whether the strict format matched, the recovery scan salvaged it, or nothing
usable was found. Failed outcomes keep the raw text for audit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .prompting.techniques import ExpectedFormat
from .skeleton.types import Label
from .validation import check_unit_interval


class ParseStatus(Enum):
    PARSED = "parsed"
    RECOVERED = "recovered"
    FAILED = "failed"


@dataclass(frozen=True)
class AssessmentOutcome:
    parse_status: ParseStatus
    predicted_label: Label | None = None
    probability_correct: float | None = None
    certainty: float | None = None
    reasoning_text: str | None = None
    feedback_text: str | None = None
    raw_text: str = ""

    def __post_init__(self):
        if self.probability_correct is not None:
            check_unit_interval(self.probability_correct, "probability_correct")
        if self.certainty is not None:
            check_unit_interval(self.certainty, "certainty")


_NUMBER = r"\d+(?:\.\d+)?(?:[eE][+-]?\d+)?"
_STRICT = {
    ExpectedFormat.LABEL: re.compile(r"^(correct|incorrect)\.?$", re.IGNORECASE),
    ExpectedFormat.LABEL_REASONING: re.compile(
        r"^(correct|incorrect)\s*,\s*(.+)$", re.IGNORECASE | re.DOTALL
    ),
    ExpectedFormat.PROBABILITY_ONLY: re.compile(rf"^({_NUMBER})$"),
    ExpectedFormat.LABEL_CERTAINTY: re.compile(
        rf"^(correct|incorrect)\s*,\s*({_NUMBER})\s*(?:,\s*(.+))?$", re.IGNORECASE | re.DOTALL
    ),
}

_WORD_CORRECT = re.compile(r"\bcorrect\b", re.IGNORECASE)
_ANY_INCORRECT = re.compile(r"incorrect", re.IGNORECASE)
_NUMBER_TOKEN = re.compile(_NUMBER)


def _strip_wrapping(text: str) -> str:
    s = text.strip()
    while len(s) >= 2 and s[0] == s[-1] and s[0] in "\"'`":
        s = s[1:-1].strip()
    return s


def _derive_label(probability: float, threshold: float) -> Label:
    return Label.CORRECT if probability >= threshold else Label.INCORRECT


def _recover_label(text: str) -> tuple[Label | None, int]:
    """Label salvaged from free text, plus the index just past the match.

    Any occurrence of "incorrect" (even inside a longer word) wins before a
    standalone "correct" is considered, so text mentioning "incorrect" can
    never come back as Correct.
    """
    m = _ANY_INCORRECT.search(text)
    if m:
        return Label.INCORRECT, m.end()
    m = _WORD_CORRECT.search(text)
    if m:
        return Label.CORRECT, m.end()
    return None, -1


def _recover_number(text: str) -> float | None:
    for m in _NUMBER_TOKEN.finditer(text):
        value = float(m.group(0))
        if 0.0 <= value <= 1.0:
            return value
    return None


def parse(
    response_text: str,
    expected: ExpectedFormat,
    threshold: float = 0.5,
) -> AssessmentOutcome:
    """Parse one response against its expected output format.

    A strict pass tries the exact format first (labels case-insensitive,
    surrounding whitespace and quotes tolerated). On failure a recovery pass
    scans the text for a label word and the first number in [0, 1]. For
    probability output the label derives from ``threshold``: Correct iff
    probability_correct >= threshold. Never raises on bad input.
    """
    check_unit_interval(threshold, "threshold")
    raw = response_text
    text = _strip_wrapping(response_text or "")

    if expected is ExpectedFormat.FREE_TEXT:
        if text:
            return AssessmentOutcome(ParseStatus.PARSED, feedback_text=raw.strip(), raw_text=raw)
        return AssessmentOutcome(ParseStatus.FAILED, raw_text=raw)

    strict = _STRICT[expected].match(text)
    if strict is not None:
        if expected is ExpectedFormat.LABEL:
            return AssessmentOutcome(
                ParseStatus.PARSED,
                predicted_label=Label.from_string(strict.group(1)),
                raw_text=raw,
            )
        if expected is ExpectedFormat.LABEL_REASONING:
            return AssessmentOutcome(
                ParseStatus.PARSED,
                predicted_label=Label.from_string(strict.group(1)),
                reasoning_text=strict.group(2).strip(),
                raw_text=raw,
            )
        if expected is ExpectedFormat.PROBABILITY_ONLY:
            value = float(strict.group(1))
            if 0.0 <= value <= 1.0:
                return AssessmentOutcome(
                    ParseStatus.PARSED,
                    predicted_label=_derive_label(value, threshold),
                    probability_correct=value,
                    raw_text=raw,
                )
        else:  # LABEL_CERTAINTY
            value = float(strict.group(2))
            if 0.0 <= value <= 1.0:
                reasoning = strict.group(3)
                return AssessmentOutcome(
                    ParseStatus.PARSED,
                    predicted_label=Label.from_string(strict.group(1)),
                    certainty=value,
                    reasoning_text=reasoning.strip() if reasoning else None,
                    raw_text=raw,
                )

    # recovery pass
    label, label_end = _recover_label(text)
    number = _recover_number(text)

    if expected is ExpectedFormat.PROBABILITY_ONLY:
        if number is not None:
            return AssessmentOutcome(
                ParseStatus.RECOVERED,
                predicted_label=_derive_label(number, threshold),
                probability_correct=number,
                raw_text=raw,
            )
        return AssessmentOutcome(ParseStatus.FAILED, raw_text=raw)

    if label is None:
        return AssessmentOutcome(ParseStatus.FAILED, raw_text=raw)

    if expected is ExpectedFormat.LABEL:
        return AssessmentOutcome(ParseStatus.RECOVERED, predicted_label=label, raw_text=raw)
    if expected is ExpectedFormat.LABEL_REASONING:
        tail = text[label_end:].lstrip(" \t,.:;-")
        return AssessmentOutcome(
            ParseStatus.RECOVERED,
            predicted_label=label,
            reasoning_text=tail or None,
            raw_text=raw,
        )
    return AssessmentOutcome(  # LABEL_CERTAINTY
        ParseStatus.RECOVERED,
        predicted_label=label,
        certainty=number,
        raw_text=raw,
    )
