"""Shared fixtures and synthetic-data helpers."""

from __future__ import annotations

import numpy as np
import pytest

from rehabeval.skeleton.specs import REHAB24_SPEC, UIPRMD_SPEC
from rehabeval.skeleton.types import RepetitionSample


def rotation_about(axis: np.ndarray, angle_rad: float) -> np.ndarray:
    """Rodrigues rotation matrix about a unit axis."""
    axis = np.asarray(axis, dtype=np.float64)
    axis = axis / np.linalg.norm(axis)
    k = np.array(
        [
            [0.0, -axis[2], axis[1]],
            [axis[2], 0.0, -axis[0]],
            [-axis[1], axis[0], 0.0],
        ]
    )
    return np.eye(3) + np.sin(angle_rad) * k + (1.0 - np.cos(angle_rad)) * (k @ k)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    return rotation_about(axis, rng.uniform(0.0, 2.0 * np.pi))


def transform_sample(sample: RepetitionSample, rotation=None, translation=None, scale=1.0):
    """Apply one global similarity transform to every joint of every frame."""
    n = sample.num_frames
    points = sample.frames.reshape(n, -1, 3) * scale
    if rotation is not None:
        points = points @ np.asarray(rotation).T
    if translation is not None:
        points = points + np.asarray(translation)
    return RepetitionSample(
        exercise_id=sample.exercise_id,
        subject_id=sample.subject_id,
        repetition_index=sample.repetition_index,
        label=sample.label,
        frames=points.reshape(n, -1),
        frame_rate_hz=sample.frame_rate_hz,
        dominant_side=sample.dominant_side,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def uiprmd_spec():
    return UIPRMD_SPEC


@pytest.fixture
def rehab24_spec():
    return REHAB24_SPEC
