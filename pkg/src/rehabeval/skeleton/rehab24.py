"""Loader for per-frame joint recordings segmented by a repetition-annotation table.

Recordings are pre-extracted plain-text files (one frame per line, 78 numbers)
named ``<subject>_<exercise>.txt``; a converter from the capture format is out
of scope here. Annotations give [start_frame, end_frame) slices plus the
correctness label for each repetition inside a recording.
"""

from __future__ import annotations

import csv
import logging
from collections.abc import Mapping, Sequence
from pathlib import Path

from ..errors import NotFoundError, SchemaError
from ._numeric import read_frame_matrix
from .types import Label, RepetitionAnnotation, RepetitionSample, Side, SkeletonSpec

logger = logging.getLogger(__name__)

DEFAULT_FRAME_RATE_HZ = 30.0


def read_annotation_table(csv_path) -> dict[str, list[RepetitionAnnotation]]:
    """Parse a segmentation CSV with columns recording,start_frame,end_frame,correctness."""
    path = Path(csv_path)
    if not path.is_file():
        raise NotFoundError(f"annotation table not found: {path}")
    table: dict[str, list[RepetitionAnnotation]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"recording", "start_frame", "end_frame", "correctness"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise SchemaError(f"annotation table needs columns {sorted(required)}")
        for row in reader:
            ann = RepetitionAnnotation(
                start_frame=int(row["start_frame"]),
                end_frame=int(row["end_frame"]),
                correctness=Label.from_string(row["correctness"]),
            )
            table.setdefault(row["recording"], []).append(ann)
    return table


def _slice_recording(
    frames,
    annotations: Sequence[RepetitionAnnotation],
    exercise_id: str,
    subject_id: str,
    spec: SkeletonSpec,
    frame_rate_hz: float,
) -> list[RepetitionSample]:
    samples = []
    prev_end = None
    for rep_index, ann in enumerate(annotations):
        ann.check_bounds(frames.shape[0], context=f"{subject_id}/{exercise_id}")
        if prev_end is not None and ann.start_frame < prev_end:
            logger.warning(
                "overlapping annotations for %s/%s: start %d before previous end %d",
                subject_id, exercise_id, ann.start_frame, prev_end,
            )
        prev_end = ann.end_frame
        samples.append(
            RepetitionSample(
                exercise_id=exercise_id,
                subject_id=subject_id,
                repetition_index=rep_index,
                label=ann.correctness,
                frames=frames[ann.start_frame : ann.end_frame],
                frame_rate_hz=frame_rate_hz,
                dominant_side=Side.UNKNOWN,
            )
        )
    return samples


def load_rehab24(
    root_path,
    exercise_id: str,
    spec: SkeletonSpec,
    annotations: Sequence[RepetitionAnnotation] | Mapping[str, Sequence[RepetitionAnnotation]],
    frame_rate_hz: float = DEFAULT_FRAME_RATE_HZ,
) -> list[RepetitionSample]:
    """Slice each recording of one exercise into labeled repetition samples.

    ``annotations`` is either a flat list (only valid when the directory holds
    a single recording for the exercise) or a mapping from recording file stem
    to that recording's annotation list, e.g. the output of
    :func:`read_annotation_table`.
    """
    root = Path(root_path)
    if not root.is_dir():
        raise NotFoundError(f"dataset directory not found: {root}")

    recordings = sorted(p for p in root.glob("*.txt") if exercise_id in p.stem)
    if not recordings:
        raise NotFoundError(f"no recordings for {exercise_id!r} under {root}")

    if isinstance(annotations, Mapping):
        per_recording = {stem: list(anns) for stem, anns in annotations.items()}
    else:
        if len(recordings) != 1:
            raise SchemaError(
                f"flat annotation list given but {len(recordings)} recordings found; "
                "pass a mapping keyed by recording stem"
            )
        per_recording = {recordings[0].stem: list(annotations)}

    samples = []
    for path in recordings:
        anns = per_recording.get(path.stem)
        if anns is None:
            logger.warning("no annotations for recording %s; skipping", path.stem)
            continue
        frames = read_frame_matrix(path, spec.frame_width)
        if frames is None:
            continue
        subject_id = path.stem.split("_")[0]
        samples.extend(
            _slice_recording(frames, anns, exercise_id, subject_id, spec, frame_rate_hz)
        )
    return samples
