"""Normalized interchange container: one header line plus one record per repetition.

The container is UTF-8 JSON Lines. Line 1 is the header object
``{schema_version, dataset_id, exercise_id, joint_names, frame_rate_hz, units}``;
every following line is one repetition record
``{subject_id, repetition_index, label, dominant_side, frames}``.
Floats survive the round trip exactly (shortest-repr JSON encoding).
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import NotFoundError, SchemaError
from .types import DatasetId, Label, RepetitionSample, Side, SkeletonSpec

SCHEMA_VERSION = 1

HEADER_FIELDS = ("schema_version", "dataset_id", "exercise_id", "joint_names", "frame_rate_hz", "units")
RECORD_FIELDS = ("subject_id", "repetition_index", "label", "dominant_side", "frames")


def save_generic(
    path,
    samples: list[RepetitionSample],
    spec: SkeletonSpec,
    exercise_id: str | None = None,
    frame_rate_hz: float | None = None,
) -> Path:
    """Write samples to the interchange container.

    ``exercise_id`` and ``frame_rate_hz`` are taken from the samples when
    uniform; they must be passed explicitly for an empty sample list.
    """
    samples = list(samples)
    if samples:
        ids = {s.exercise_id for s in samples}
        if len(ids) > 1:
            raise ValueError(f"samples span several exercises: {sorted(ids)}")
        rates = {s.frame_rate_hz for s in samples}
        if len(rates) > 1:
            raise ValueError(f"samples span several frame rates: {sorted(rates)}")
        exercise_id = exercise_id or ids.pop()
        frame_rate_hz = frame_rate_hz or rates.pop()
    if exercise_id is None:
        raise ValueError("exercise_id required for an empty sample list")
    frame_rate_hz = 30.0 if frame_rate_hz is None else float(frame_rate_hz)

    header = {
        "schema_version": SCHEMA_VERSION,
        "dataset_id": spec.dataset_id.value,
        "exercise_id": exercise_id,
        "joint_names": list(spec.joint_names),
        "frame_rate_hz": frame_rate_hz,
        "units": spec.units.value,
    }
    out = Path(path)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header) + "\n")
        for s in samples:
            record = {
                "subject_id": s.subject_id,
                "repetition_index": s.repetition_index,
                "label": s.label.value,
                "dominant_side": s.dominant_side.value,
                "frames": s.frames.tolist(),
            }
            fh.write(json.dumps(record) + "\n")
    return out


def read_header(path) -> dict:
    """Read and validate just the header object of an interchange file."""
    p = Path(path)
    if not p.is_file():
        raise NotFoundError(f"interchange file not found: {p}")
    with open(p, "r", encoding="utf-8") as fh:
        first = fh.readline()
    try:
        header = json.loads(first)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"unreadable header in {p}: {exc}") from exc
    missing = [f for f in HEADER_FIELDS if f not in header]
    if missing:
        raise SchemaError(f"header missing fields {missing} in {p}")
    if header["schema_version"] != SCHEMA_VERSION:
        raise SchemaError(
            f"unsupported schema_version {header['schema_version']!r} (expected {SCHEMA_VERSION})"
        )
    return header


def load_generic(path) -> list[RepetitionSample]:
    """Load every repetition sample from an interchange container.

    Exercise ids are opaque at this layer; any string is accepted.
    """
    p = Path(path)
    header = read_header(p)
    width = len(header["joint_names"]) * 3
    exercise_id = header["exercise_id"]
    frame_rate_hz = float(header["frame_rate_hz"])

    samples = []
    with open(p, "r", encoding="utf-8") as fh:
        fh.readline()
        for line_no, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"unreadable record at {p}:{line_no}: {exc}") from exc
            missing = [f for f in RECORD_FIELDS if f not in record]
            if missing:
                raise SchemaError(f"record missing fields {missing} at {p}:{line_no}")
            try:
                sample = RepetitionSample(
                    exercise_id=exercise_id,
                    subject_id=record["subject_id"],
                    repetition_index=int(record["repetition_index"]),
                    label=Label.from_string(record["label"]),
                    frames=record["frames"],
                    frame_rate_hz=frame_rate_hz,
                    dominant_side=Side(record["dominant_side"]),
                )
            except (ValueError, KeyError) as exc:
                raise SchemaError(f"invalid record at {p}:{line_no}: {exc}") from exc
            if sample.frames.shape[1] != width:
                raise SchemaError(
                    f"record at {p}:{line_no} has {sample.frames.shape[1]} columns, "
                    f"header implies {width}"
                )
            samples.append(sample)
    return samples


def spec_from_header(header: dict, up_axis=None) -> SkeletonSpec:
    """Build a SkeletonSpec from an interchange header.

    The container does not carry an up axis; shipped dataset conventions are
    applied for known dataset ids and ``up_axis`` (default y-up) otherwise.
    """
    from .specs import spec_for_dataset
    from .types import Units

    dataset_id = DatasetId(header["dataset_id"])
    if dataset_id in (DatasetId.UIPRMD, DatasetId.REHAB24_6):
        return spec_for_dataset(dataset_id)
    return SkeletonSpec(
        dataset_id=DatasetId.GENERIC,
        joint_names=tuple(header["joint_names"]),
        up_axis=tuple(up_axis) if up_axis is not None else (0.0, 1.0, 0.0),
        units=Units(header["units"]),
    )
