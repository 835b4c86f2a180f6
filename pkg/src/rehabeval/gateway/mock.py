"""Deterministic offline oracle standing in for a live model.

The oracle re-reads the final data block out of the rendered prompt, averages
each feature column and compares the means against a configured threshold
table: the movement is "correct" exactly when every configured feature's mean
exceeds its threshold. Because it sees only the serialized text, its decision
matches a direct threshold decision on the same serialized view, which is
what end-to-end equivalence tests pin down.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from ..errors import OracleError
from ..features.extract import FeatureSequence
from ..prompting.policy import SerializationPolicy, format_value, resample_indices
from ..prompting.render import PromptBundle
from ..prompting.techniques import ExpectedFormat
from ..skeleton.types import Label
from .cache import NullCache
from .records import CompletionRecord, TransportStatus, prompt_hash

MOCK_MODEL_NAME = "mock-oracle"

_FINAL_BLOCK = re.compile(r"^<Data \d+>$")

FEEDBACK_SENTENCE = (
    "Keep the movement slow and controlled, and work toward the value ranges "
    "seen in correctly performed repetitions."
)


@dataclass(frozen=True)
class MockOracle:
    """Threshold table plus the fixed scores the oracle reports."""

    thresholds: dict[str, float]
    certainty: float = 0.85
    probability_correct: float = 0.9
    probability_incorrect: float = 0.1

    def __post_init__(self):
        if not self.thresholds:
            raise ValueError("oracle needs at least one feature threshold")

    def decide(self, feature_names: list[str] | None, matrix: np.ndarray) -> Label:
        """Threshold decision over column means.

        Correct iff every applicable feature's column mean exceeds its
        threshold. Thresholds whose names are absent from the header are
        skipped (one table can serve both feature and raw-joint prompts);
        without a header, thresholds map to columns by position. At least one
        threshold must apply.
        """
        means = matrix.mean(axis=0)
        applied = 0
        verdict = Label.CORRECT
        for position, (feature, threshold) in enumerate(self.thresholds.items()):
            if feature_names is not None:
                if feature not in feature_names:
                    continue
                column = feature_names.index(feature)
            else:
                column = position
                if column >= means.shape[0]:
                    continue
            applied += 1
            if not means[column] > threshold:
                verdict = Label.INCORRECT
        if applied == 0:
            raise OracleError("no configured threshold applies to the data block")
        return verdict


def parse_final_block(
    rendered_text: str, delimiter: str = ","
) -> tuple[list[str] | None, np.ndarray]:
    """Re-read the unlabeled final data block from a rendered prompt."""
    lines = rendered_text.splitlines()
    marker = None
    for i, line in enumerate(lines):
        if _FINAL_BLOCK.match(line.strip()):
            marker = i
    if marker is None:
        raise OracleError("no unlabeled final data block in rendered prompt")

    names: list[str] | None = None
    rows: list[list[float]] = []
    for line in lines[marker + 1 :]:
        if not line.strip():
            break
        tokens = [tok.strip() for tok in line.split(delimiter)]
        try:
            rows.append([float(tok) for tok in tokens])
        except ValueError:
            if names is None and not rows:
                names = tokens
            else:
                raise OracleError(f"malformed data row {line!r}") from None
    if not rows:
        raise OracleError("final data block holds no numeric rows")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise OracleError(f"ragged data rows (widths {sorted(widths)})")
    if names is not None and len(names) != len(rows[0]):
        raise OracleError("header width disagrees with data rows")
    return names, np.asarray(rows, dtype=np.float64)


def _response_for(bundle: PromptBundle, oracle: MockOracle, label: Label) -> str:
    fmt = bundle.expected_output_format
    if fmt is ExpectedFormat.LABEL:
        return label.value
    if fmt is ExpectedFormat.LABEL_REASONING:
        trend = (
            "every configured feature mean exceeds its threshold"
            if label is Label.CORRECT
            else "at least one configured feature mean falls at or below its threshold"
        )
        return f"{label.value}, Reasoning: {trend}."
    if fmt is ExpectedFormat.PROBABILITY_ONLY:
        p = oracle.probability_correct if label is Label.CORRECT else oracle.probability_incorrect
        return f"{p:g}"
    if fmt is ExpectedFormat.LABEL_CERTAINTY:
        return f"{label.value}, {oracle.certainty:g}"
    persona = bundle.technique.persona or "coach"
    return f"As a {persona}: {FEEDBACK_SENTENCE}"


def mock_oracle_complete(
    bundle: PromptBundle, oracle: MockOracle, delimiter: str = ","
) -> CompletionRecord:
    """Deterministic completion in exactly the bundle's expected output format."""
    if bundle.expected_output_format is ExpectedFormat.FREE_TEXT:
        label = Label.CORRECT  # feedback wording does not depend on the decision
    else:
        names, matrix = parse_final_block(bundle.rendered_text, delimiter)
        label = oracle.decide(names, matrix)
    return CompletionRecord(
        prompt_hash=prompt_hash(bundle.rendered_text, MOCK_MODEL_NAME, 0.0),
        response_text=_response_for(bundle, oracle, label),
        latency_ms=0.0,
        timestamp=datetime.now(timezone.utc).isoformat(),
        transport_status=TransportStatus.OK,
    )


def serialized_view(seq: FeatureSequence, policy: SerializationPolicy | None = None) -> np.ndarray:
    """The numeric matrix exactly as serialization renders it (resampled, rounded)."""
    policy = policy or SerializationPolicy()
    rows = seq.values[resample_indices(seq.num_frames, policy.target_frames)]
    return np.asarray(
        [[float(format_value(v, policy.decimals)) for v in row] for row in rows],
        dtype=np.float64,
    )


def oracle_decide_direct(
    seq: FeatureSequence, oracle: MockOracle, policy: SerializationPolicy | None = None
) -> Label:
    """Threshold decision applied directly to a feature sequence, bypassing text.

    Uses the same serialized view the prompt embeds, so it agrees exactly with
    what :func:`mock_oracle_complete` decides after the text round trip.
    """
    return oracle.decide(list(seq.feature_names), serialized_view(seq, policy))


class MockOracleClient:
    """Client-shaped wrapper so the runner can swap the oracle in for a live model."""

    model_name = MOCK_MODEL_NAME
    temperature = 0.0

    def __init__(self, oracle: MockOracle, cache=None, delimiter: str = ","):
        self.oracle = oracle
        self.cache = cache if cache is not None else NullCache()
        self.delimiter = delimiter
        self.completions_performed = 0
        self._count_lock = threading.Lock()

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_count_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._count_lock = threading.Lock()

    def complete(self, bundle: PromptBundle) -> CompletionRecord:
        content_hash = prompt_hash(bundle.rendered_text, MOCK_MODEL_NAME, 0.0)
        cached = self.cache.get(content_hash)
        if cached is not None:
            return cached
        record = mock_oracle_complete(bundle, self.oracle, self.delimiter)
        with self._count_lock:
            self.completions_performed += 1
        self.cache.put(record)
        return record
