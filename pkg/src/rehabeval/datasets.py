"""Synthetic data generators for offline runs and tests.

Two families live here: anatomically plausible random-motion skeletons for the
two shipped layouts (used to exercise every feature config without real
recordings) and a small threshold-separable generic dataset whose labels are
defined by a known threshold rule, which lets the offline oracle reproduce the
ground truth exactly.
"""

from __future__ import annotations

import numpy as np

from .features.spec import FeatureDef, FeatureSpec
from .gateway.mock import MockOracle, oracle_decide_direct
from .prompting.policy import SerializationPolicy
from .features.extract import extract_features
from .skeleton.specs import REHAB24_SPEC, UIPRMD_SPEC
from .skeleton.types import DatasetId, Label, RepetitionSample, Side, SkeletonSpec, Units

# Standing base poses (units: meters). y is up for the Kinect layout, z for
# the inertial layout; feet point along the remaining horizontal axis.
_UIPRMD_BASE = {
    "waist": (0.0, 1.00, 0.0),
    "spine": (0.0, 1.15, 0.02),
    "chest": (0.0, 1.30, 0.0),
    "neck": (0.0, 1.45, 0.0),
    "head": (0.0, 1.55, 0.03),
    "head_tip": (0.0, 1.68, 0.0),
    "left_collar": (-0.08, 1.42, 0.0),
    "left_upper_arm": (-0.20, 1.40, 0.0),
    "left_forearm": (-0.24, 1.12, 0.02),
    "left_hand": (-0.26, 0.88, 0.05),
    "right_collar": (0.08, 1.42, 0.0),
    "right_upper_arm": (0.20, 1.40, 0.0),
    "right_forearm": (0.24, 1.12, 0.02),
    "right_hand": (0.26, 0.88, 0.05),
    "left_upper_leg": (-0.10, 0.95, 0.0),
    "left_lower_leg": (-0.11, 0.50, 0.02),
    "left_foot": (-0.12, 0.08, 0.0),
    "left_leg_toes": (-0.12, 0.04, 0.15),
    "right_upper_leg": (0.10, 0.95, 0.0),
    "right_lower_leg": (0.11, 0.50, 0.02),
    "right_foot": (0.12, 0.08, 0.0),
    "right_leg_toes": (0.12, 0.04, 0.15),
}

_REHAB24_BASE = {
    "pelvis": (0.0, 0.0, 1.00),
    "spine_lower": (0.0, 0.01, 1.12),
    "spine_mid": (0.0, 0.02, 1.24),
    "spine_upper": (0.0, 0.0, 1.38),
    "neck": (0.0, 0.0, 1.50),
    "head": (0.0, 0.02, 1.62),
    "left_clavicle": (-0.06, 0.0, 1.46),
    "left_shoulder": (-0.20, 0.0, 1.45),
    "left_elbow": (-0.26, 0.02, 1.16),
    "left_wrist": (-0.28, 0.04, 0.92),
    "left_hand": (-0.29, 0.06, 0.82),
    "right_clavicle": (0.06, 0.0, 1.46),
    "right_shoulder": (0.20, 0.0, 1.45),
    "right_elbow": (0.26, 0.02, 1.16),
    "right_wrist": (0.28, 0.04, 0.92),
    "right_hand": (0.29, 0.06, 0.82),
    "left_hip": (-0.10, 0.0, 0.96),
    "left_knee": (-0.11, 0.02, 0.52),
    "left_ankle": (-0.12, 0.0, 0.10),
    "left_foot": (-0.12, 0.10, 0.05),
    "left_toes": (-0.12, 0.19, 0.03),
    "right_hip": (0.10, 0.0, 0.96),
    "right_knee": (0.11, 0.02, 0.52),
    "right_ankle": (0.12, 0.0, 0.10),
    "right_foot": (0.12, 0.10, 0.05),
    "right_toes": (0.12, 0.19, 0.03),
}

_BASE_POSES = {DatasetId.UIPRMD: _UIPRMD_BASE, DatasetId.REHAB24_6: _REHAB24_BASE}


def standing_pose(spec: SkeletonSpec) -> np.ndarray:
    """(joints, 3) standing base pose following the skeleton's joint order."""
    base = _BASE_POSES.get(spec.dataset_id)
    if base is None:
        raise ValueError(f"no base pose for dataset {spec.dataset_id.value}")
    return np.asarray([base[name] for name in spec.joint_names], dtype=np.float64)


def make_motion_sample(
    spec: SkeletonSpec,
    exercise_id: str,
    rng: np.random.Generator,
    num_frames: int = 20,
    amplitude: float = 0.02,
    subject_id: str = "s01",
    repetition_index: int = 0,
    label: Label = Label.CORRECT,
    dominant_side: Side = Side.UNKNOWN,
) -> RepetitionSample:
    """Standing pose plus smooth low-amplitude random motion per joint.

    The amplitude stays well below the smallest referenced segment length so
    no geometric primitive ever degenerates.
    """
    pose = standing_pose(spec)
    t = np.linspace(0.0, 2.0 * np.pi, num_frames)[:, None, None]
    phase = rng.uniform(0.0, 2.0 * np.pi, size=(1, pose.shape[0], 3))
    scale = rng.uniform(0.2, 1.0, size=(1, pose.shape[0], 3)) * amplitude
    motion = np.sin(t + phase) * scale
    frames = (pose[None, :, :] + motion).reshape(num_frames, -1)
    return RepetitionSample(
        exercise_id=exercise_id,
        subject_id=subject_id,
        repetition_index=repetition_index,
        label=label,
        frames=frames,
        frame_rate_hz=30.0,
        dominant_side=dominant_side,
    )


def make_static_sample(
    spec: SkeletonSpec, exercise_id: str, num_frames: int = 10
) -> RepetitionSample:
    """Perfectly motionless standing pose (every frame identical)."""
    pose = standing_pose(spec).reshape(1, -1)
    return RepetitionSample(
        exercise_id=exercise_id,
        subject_id="s00",
        repetition_index=0,
        label=Label.CORRECT,
        frames=np.repeat(pose, num_frames, axis=0),
        frame_rate_hz=30.0,
    )


# --- threshold-separable generic dataset -----------------------------------

SYNTHETIC_JOINTS = ("base", "hinge", "tip", "left_wing", "right_wing")

SYNTHETIC_SPEC = SkeletonSpec(
    dataset_id=DatasetId.GENERIC,
    joint_names=SYNTHETIC_JOINTS,
    up_axis=(0.0, 1.0, 0.0),
    units=Units.METERS,
)

BEND_FEATURE = "Bend A."
SYNTHETIC_THRESHOLDS = {BEND_FEATURE: 90.0}


def synthetic_feature_spec(exercise_id: str) -> FeatureSpec:
    """Three-feature catalog for the synthetic hinge skeleton."""
    return FeatureSpec(
        exercise_id=exercise_id,
        dataset_id="generic",
        exercise_name="hinge bend",
        features=(
            FeatureDef(name=BEND_FEATURE, primitive="JointAngle", joint_refs=("base", "hinge", "tip")),
            FeatureDef(name="Lean A.", primitive="SegmentVerticalAngle", joint_refs=("base", "hinge")),
            FeatureDef(
                name="Wing Span",
                primitive="HorizontalDistance",
                joint_refs=("left_wing", "right_wing"),
                units="meters",
            ),
        ),
    )


def _hinge_frames(rng: np.random.Generator, num_frames: int, bend_deg: float) -> np.ndarray:
    frames = np.empty((num_frames, len(SYNTHETIC_JOINTS) * 3))
    for f in range(num_frames):
        theta = np.radians(bend_deg + rng.uniform(-2.0, 2.0))
        jitter = rng.uniform(-0.01, 0.01, size=(len(SYNTHETIC_JOINTS), 3))
        pose = np.asarray(
            [
                (0.0, -1.0, 0.0),  # base: straight down from the hinge
                (0.0, 0.0, 0.0),  # hinge at the origin
                (np.sin(theta), -np.cos(theta), 0.0),  # tip swings by the bend angle
                (-0.5, 0.2, 0.1),
                (0.5, 0.2, 0.1),
            ]
        )
        pose = pose + jitter
        pose[1] = (0.0, 0.0, 0.0)  # keep the hinge exact so the bend angle is clean
        frames[f] = pose.reshape(-1)
    return frames


def make_synthetic_classification_data(
    exercise_ids: tuple[str, ...] = ("syn1", "syn2"),
    repetitions_per_exercise: int = 40,
    seed: int = 0,
    num_frames: int = 40,
    num_subjects: int = 5,
    bend_correct: float = 120.0,
    bend_incorrect: float = 60.0,
    policy: SerializationPolicy | None = None,
) -> tuple[dict[str, list[RepetitionSample]], dict[str, FeatureSpec], MockOracle]:
    """Generate label-separable repetitions whose truth IS the threshold rule.

    Correct repetitions carry a bend angle far above the oracle threshold,
    incorrect ones far below, with noise margins small enough that the rule
    applied to the serialized (resampled, rounded) view reproduces every label.
    The generator asserts that property, so pipelines running the returned
    oracle must score accuracy 1.0 against the returned labels.
    """
    rng = np.random.default_rng(seed)
    oracle = MockOracle(thresholds=dict(SYNTHETIC_THRESHOLDS))
    samples: dict[str, list[RepetitionSample]] = {}
    specs: dict[str, FeatureSpec] = {}
    for exercise_id in exercise_ids:
        feature_spec = synthetic_feature_spec(exercise_id)
        specs[exercise_id] = feature_spec
        reps = []
        for index in range(repetitions_per_exercise):
            label = Label.CORRECT if index % 2 == 0 else Label.INCORRECT
            bend = bend_correct if label is Label.CORRECT else bend_incorrect
            sample = RepetitionSample(
                exercise_id=exercise_id,
                subject_id=f"s{index % num_subjects:02d}",
                repetition_index=index,
                label=label,
                frames=_hinge_frames(rng, num_frames, bend),
                frame_rate_hz=30.0,
            )
            seq = extract_features(sample, SYNTHETIC_SPEC, feature_spec)
            decided = oracle_decide_direct(seq, oracle, policy)
            if decided is not label:
                raise AssertionError("synthetic generator produced a non-separable sample")
            reps.append(sample)
        samples[exercise_id] = reps
    return samples, specs, oracle
