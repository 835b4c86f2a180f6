"""Core domain types for body-joint repetition data."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np

from ..errors import RangeError
from ..validation import check_unit_vector

logger = logging.getLogger(__name__)

MAX_REPAIRABLE_GAP = 5


class Label(Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"

    @property
    def opposite(self) -> "Label":
        return Label.INCORRECT if self is Label.CORRECT else Label.CORRECT

    @classmethod
    def from_string(cls, text: str) -> "Label":
        return cls(text.strip().lower())


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"
    UNKNOWN = "unknown"


class DatasetId(Enum):
    UIPRMD = "uiprmd"
    REHAB24_6 = "rehab24_6"
    GENERIC = "generic"


class Units(Enum):
    METERS = "meters"
    MILLIMETERS = "millimeters"
    NORMALIZED = "normalized"


EXPECTED_JOINT_COUNTS = {DatasetId.UIPRMD: 22, DatasetId.REHAB24_6: 26}


@dataclass(frozen=True)
class SkeletonSpec:
    """Joint layout of one capture setup: names, ordering and world conventions.

    ``joint_names`` fixes the column layout of every frame matrix: joint ``j``
    occupies columns ``3j..3j+2`` (x, y, z). ``up_axis`` is the world vertical
    used by vertical-referenced features.
    """

    dataset_id: DatasetId
    joint_names: tuple[str, ...]
    up_axis: tuple[float, float, float] = (0.0, 1.0, 0.0)
    units: Units = Units.METERS
    channel_count: int = 3

    def __post_init__(self):
        names = tuple(self.joint_names)
        object.__setattr__(self, "joint_names", names)
        if len(set(names)) != len(names):
            raise ValueError("joint_names must be unique")
        if not names:
            raise ValueError("joint_names must be non-empty")
        if self.channel_count != 3:
            raise ValueError("channel_count must be 3 (x, y, z)")
        expected = EXPECTED_JOINT_COUNTS.get(self.dataset_id)
        if expected is not None and len(names) != expected:
            raise ValueError(
                f"{self.dataset_id.value} skeleton must have {expected} joints, got {len(names)}"
            )
        check_unit_vector(self.up_axis)

    @property
    def joint_count(self) -> int:
        return len(self.joint_names)

    @property
    def frame_width(self) -> int:
        return self.joint_count * self.channel_count

    @cached_property
    def name_to_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.joint_names)}

    @property
    def up(self) -> np.ndarray:
        return np.asarray(self.up_axis, dtype=np.float64)

    def index_of(self, joint_name: str) -> int:
        try:
            return self.name_to_index[joint_name]
        except KeyError:
            raise KeyError(f"unknown joint {joint_name!r} for {self.dataset_id.value}") from None


@dataclass(frozen=True, eq=False)
class RepetitionSample:
    """One exercise repetition: a frames x (joints*3) coordinate matrix plus identity."""

    exercise_id: str
    subject_id: str
    repetition_index: int
    label: Label
    frames: np.ndarray
    frame_rate_hz: float
    dominant_side: Side = Side.UNKNOWN

    def __post_init__(self):
        arr = np.array(self.frames, dtype=np.float64, copy=True)
        if arr.ndim != 2:
            raise ValueError("frames must be a 2-D matrix")
        if arr.shape[0] < 2:
            raise ValueError(f"a repetition needs at least 2 frames, got {arr.shape[0]}")
        if arr.shape[1] % 3 != 0:
            raise ValueError("frames width must be a multiple of 3")
        if not np.isfinite(arr).all():
            raise ValueError("frames contain non-finite values after loading")
        if self.repetition_index < 0:
            raise ValueError("repetition_index must be nonnegative")
        if not self.frame_rate_hz > 0:
            raise ValueError("frame_rate_hz must be positive")
        arr.flags.writeable = False
        object.__setattr__(self, "frames", arr)

    @property
    def num_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def key(self) -> str:
        return f"{self.exercise_id}/{self.subject_id}/r{self.repetition_index:03d}"

    def joint_positions(self, joint_index: int) -> np.ndarray:
        """Per-frame (n, 3) coordinates of one joint."""
        n_joints = self.frames.shape[1] // 3
        if not 0 <= joint_index < n_joints:
            raise IndexError(f"joint index {joint_index} out of range 0..{n_joints - 1}")
        return self.frames.reshape(self.num_frames, n_joints, 3)[:, joint_index, :]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepetitionSample):
            return NotImplemented
        return (
            self.exercise_id == other.exercise_id
            and self.subject_id == other.subject_id
            and self.repetition_index == other.repetition_index
            and self.label == other.label
            and self.frame_rate_hz == other.frame_rate_hz
            and self.dominant_side == other.dominant_side
            and self.frames.shape == other.frames.shape
            and np.array_equal(self.frames, other.frames)
        )

    def __hash__(self):
        return hash((self.exercise_id, self.subject_id, self.repetition_index, self.label))


@dataclass(frozen=True)
class RepetitionAnnotation:
    """Frame bounds [start_frame, end_frame) and correctness of one repetition."""

    start_frame: int
    end_frame: int
    correctness: Label

    def __post_init__(self):
        if self.start_frame < 0:
            raise ValueError("start_frame must be nonnegative")
        if self.end_frame <= self.start_frame:
            raise ValueError("end_frame must be greater than start_frame")

    def check_bounds(self, recording_length: int, context: str = ""):
        if self.end_frame > recording_length:
            raise RangeError(
                f"annotation [{self.start_frame}, {self.end_frame}) exceeds "
                f"recording length {recording_length}" + (f" ({context})" if context else "")
            )


def repair_nonfinite_rows(frames: np.ndarray, max_gap: int = MAX_REPAIRABLE_GAP) -> np.ndarray | None:
    """Repair short runs of non-finite rows by linear interpolation.

    A run of up to ``max_gap`` consecutive bad rows with finite rows on both
    sides is replaced column-wise by linear interpolation between the
    neighbors. Returns None when the matrix cannot be repaired (run too long,
    or a run touching the first/last frame), letting the caller reject the
    sample with a diagnostic.
    """
    arr = np.array(frames, dtype=np.float64, copy=True)
    bad = ~np.isfinite(arr).all(axis=1)
    if not bad.any():
        return arr
    n = arr.shape[0]
    i = 0
    while i < n:
        if not bad[i]:
            i += 1
            continue
        j = i
        while j < n and bad[j]:
            j += 1
        run = j - i
        if run > max_gap or i == 0 or j == n:
            return None
        lo, hi = arr[i - 1], arr[j]
        for offset in range(run):
            t = (offset + 1) / (run + 1)
            arr[i + offset] = lo + t * (hi - lo)
        i = j
    return arr


def label_counts(samples) -> dict[Label, int]:
    counts = {Label.CORRECT: 0, Label.INCORRECT: 0}
    for s in samples:
        counts[s.label] += 1
    return counts
