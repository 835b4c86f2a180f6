"""Turning feature matrices into prompt-embeddable text."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from .. import validation
from ..features.extract import FeatureSequence


@dataclass(frozen=True)
class SerializationPolicy:
    """How numeric sequences become text: row count, precision, layout.

    Defaults keep prompts bounded: 30 rows (one second of motion at the
    capture rate), one decimal place, comma-delimited, with a header of
    feature names.
    """

    target_frames: int = 30
    decimals: int = 1
    delimiter: str = ","
    include_header: bool = True

    def __post_init__(self):
        if self.target_frames < 2:
            raise ValueError("target_frames must be at least 2")
        if not 0 <= self.decimals <= 6:
            raise ValueError("decimals must lie in 0..6")
        if not self.delimiter:
            raise ValueError("delimiter must be non-empty")


def resample_indices(num_frames: int, target: int) -> np.ndarray:
    """Nearest-index uniform resampling onto exactly ``target`` rows."""
    validation.check_positive(num_frames, "num_frames")
    return np.rint(np.linspace(0.0, num_frames - 1, target)).astype(int)


def format_value(value: float, decimals: int) -> str:
    """Fixed-point decimal string, ties rounded half away from zero."""
    quantum = Decimal(1).scaleb(-decimals)
    d = Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP)
    if d == 0:
        d = abs(d)  # avoid "-0.0"
    return str(d)


def serialize_features(seq: FeatureSequence, policy: SerializationPolicy | None = None) -> str:
    """Render one feature sequence as delimited text rows.

    Rows are uniformly resampled (nearest index) to ``policy.target_frames``,
    values rounded to ``policy.decimals`` places half away from zero. Output
    is deterministic for identical inputs.
    """
    policy = policy or SerializationPolicy()
    if seq.num_frames < 1:
        raise ValueError("cannot serialize an empty sequence")
    rows = seq.values[resample_indices(seq.num_frames, policy.target_frames)]
    lines = []
    if policy.include_header:
        lines.append(policy.delimiter.join(seq.feature_names))
    for row in rows:
        lines.append(policy.delimiter.join(format_value(v, policy.decimals) for v in row))
    return "\n".join(lines)
