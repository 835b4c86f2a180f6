"""Shipped feature configs, extraction, side resolution and invariances."""

import numpy as np
import pytest

from conftest import random_rotation, rotation_about, transform_sample
from rehabeval.datasets import make_motion_sample, make_static_sample
from rehabeval.errors import ConfigError, DegenerateGeometryError
from rehabeval.features import (
    FeatureDef,
    FeatureSpec,
    extract_features,
    joint_coordinate_sequence,
    load_shipped_spec,
    resolve_active_side,
    shipped_exercises,
)
from rehabeval.skeleton.specs import spec_for_dataset
from rehabeval.skeleton.types import Label, RepetitionSample, Side

ANGLE_TOL = 1e-6
DIST_TOL = 1e-9

# exercise id -> expected feature columns, in order
EXPECTED_CATALOG = {
    "m01": ["Knee Flexion A.", "Hip Flexion A.", "Trunk Inclination A."],
    "m02": ["Trunk Inclination A.", "Hip Flexion A.", "Leg Height"],
    "m03": ["Front Knee A.", "Back Knee A.", "Trunk Inclination A.", "Foot Distance"],
    "m04": ["Knee Valgus A.", "Thigh A.", "Pelvic Stability"],
    "m05": ["Trunk Inclination A.", "Hip Flexion A.", "Pelvic Stability"],
    "m06": ["Hip Flexion A.", "Leg Elevation A.", "Pelvic Stability"],
    "m07": ["Arm Elevation A.", "Elbow Flexion A.", "Torso Inclination A."],
    "m08": ["Shoulder Extension A.", "Head Neutral Position", "Trunk Inclination A."],
    "m09": ["Arm Internal Rotation A.", "Arm External Rotation A.", "Elbow Flexion A."],
    "m10": ["Arm Elevation A.", "Trunk Inclination A.", "Arm Plane Deviation"],
    "ex1": ["Arm Elevation A.", "Trunk Inclination A.", "Elbow A.", "Plane Deviation"],
    "ex2": ["V-Shape A. (shoulder)", "W-Shape A. (elbow)", "Trunk to Vertical A."],
    "ex3": ["Elbow Flexion A.", "Trunk Inclination A.", "Hand Symmetry", "Pelvic Stability"],
    "ex4": ["Leg Elevation A.", "Trunk A.", "Pelvic Tilt A.", "Knee A.", "Leg Plane Deviation"],
    "ex5": ["Front Knee A.", "Back Knee A.", "Trunk A.", "Foot Distance"],
    "ex6": ["Knee Flexion A.", "Hip Flexion A.", "Trunk A.", "Foot Symmetry"],
}

ALL_EXERCISES = [("uiprmd", e) for e in EXPECTED_CATALOG if e.startswith("m")] + [
    ("rehab24_6", e) for e in EXPECTED_CATALOG if e.startswith("ex")
]


def test_shipped_set_covers_all_sixteen():
    shipped = shipped_exercises()
    assert shipped["uiprmd"] == [f"m{i:02d}" for i in range(1, 11)]
    assert shipped["rehab24_6"] == [f"ex{i}" for i in range(1, 7)]


@pytest.mark.parametrize("dataset_id,exercise_id", ALL_EXERCISES)
def test_config_columns_match_catalog(dataset_id, exercise_id):
    spec = load_shipped_spec(dataset_id, exercise_id)
    assert list(spec.feature_names) == EXPECTED_CATALOG[exercise_id]
    assert 3 <= spec.num_features <= 5


@pytest.mark.parametrize("dataset_id,exercise_id", ALL_EXERCISES)
def test_extraction_shape_and_finiteness(dataset_id, exercise_id, rng):
    skeleton = spec_for_dataset(dataset_id)
    feature_spec = load_shipped_spec(dataset_id, exercise_id)
    sample = make_motion_sample(skeleton, exercise_id, rng, num_frames=14)
    seq = extract_features(sample, skeleton, feature_spec)
    assert seq.values.shape == (14, feature_spec.num_features)
    assert list(seq.feature_names) == EXPECTED_CATALOG[exercise_id]
    assert seq.label is sample.label and seq.subject_id == sample.subject_id
    for column, feat in zip(seq.values.T, feature_spec.features):
        if feat.primitive in ("JointAngle", "SegmentVerticalAngle"):
            assert column.min() >= 0.0 and column.max() <= 180.0
        if feat.primitive == "PelvicTilt":
            assert column.min() >= -90.0 and column.max() <= 90.0


def test_static_pose_zero_trunk_and_stability():
    for dataset_id, exercise_id, trunk_col in (
        ("uiprmd", "m05", "Trunk Inclination A."),
        ("rehab24_6", "ex6", "Trunk A."),
    ):
        skeleton = spec_for_dataset(dataset_id)
        feature_spec = load_shipped_spec(dataset_id, exercise_id)
        seq = extract_features(make_static_sample(skeleton, exercise_id), skeleton, feature_spec)
        trunk = seq.values[:, seq.feature_names.index(trunk_col)]
        assert np.all(trunk == 0.0)
        for name, feat in zip(seq.feature_names, feature_spec.features):
            if feat.primitive in ("StabilityRange", "PairSymmetry"):
                assert np.all(seq.values[:, seq.feature_names.index(name)] == 0.0)


def test_m04_catalog_example(rng):
    skeleton = spec_for_dataset("uiprmd")
    feature_spec = load_shipped_spec("uiprmd", "m04")
    seq = extract_features(make_motion_sample(skeleton, "m04", rng), skeleton, feature_spec)
    assert list(seq.feature_names) == ["Knee Valgus A.", "Thigh A.", "Pelvic Stability"]
    assert seq.num_features == 3


def test_ex4_has_five_columns(rng):
    skeleton = spec_for_dataset("rehab24_6")
    feature_spec = load_shipped_spec("rehab24_6", "ex4")
    seq = extract_features(make_motion_sample(skeleton, "ex4", rng), skeleton, feature_spec)
    assert seq.num_features == 5


class TestInvarianceSuite:
    """Rigid-motion and scaling behavior of every shipped config."""

    trials = 10

    def _columns(self, feature_spec):
        angle = [i for i, f in enumerate(feature_spec.features) if f.is_angle_valued]
        distance = [i for i, f in enumerate(feature_spec.features) if not f.is_angle_valued]
        free = [i for i, f in enumerate(feature_spec.features)
                if not f.requires_up and f.primitive != "PlaneDeviation"]
        return angle, distance, free

    @pytest.mark.parametrize("dataset_id,exercise_id", ALL_EXERCISES)
    def test_invariance(self, dataset_id, exercise_id, rng):
        skeleton = spec_for_dataset(dataset_id)
        feature_spec = load_shipped_spec(dataset_id, exercise_id)
        angle_cols, dist_cols, free_cols = self._columns(feature_spec)
        up = skeleton.up
        for trial in range(self.trials):
            side = Side.LEFT if trial % 2 == 0 else Side.RIGHT
            sample = make_motion_sample(
                skeleton, exercise_id, rng, num_frames=12, dominant_side=side
            )
            base = extract_features(sample, skeleton, feature_spec).values

            # rigid motion fixing the up axis: every column must be preserved
            fixing = rotation_about(up, rng.uniform(0.0, 2.0 * np.pi))
            moved = transform_sample(sample, fixing, rng.uniform(-3.0, 3.0, size=3))
            out = extract_features(moved, skeleton, feature_spec).values
            assert np.abs(out[:, angle_cols] - base[:, angle_cols]).max() < ANGLE_TOL
            if dist_cols:
                assert np.abs(out[:, dist_cols] - base[:, dist_cols]).max() < DIST_TOL

            # arbitrary rigid motion: features not referencing the vertical
            arbitrary = random_rotation(rng)
            moved = transform_sample(sample, arbitrary, rng.uniform(-3.0, 3.0, size=3))
            out = extract_features(moved, skeleton, feature_spec).values
            if free_cols:
                assert np.abs(out[:, free_cols] - base[:, free_cols]).max() < ANGLE_TOL

            # uniform scaling: angles unchanged, distances scale exactly
            scale = rng.uniform(0.5, 2.0)
            scaled = transform_sample(sample, scale=scale)
            out = extract_features(scaled, skeleton, feature_spec).values
            assert np.abs(out[:, angle_cols] - base[:, angle_cols]).max() < ANGLE_TOL
            if dist_cols:
                deviation = np.abs(out[:, dist_cols] - scale * base[:, dist_cols])
                assert deviation.max() < DIST_TOL * max(1.0, scale)


class TestSideResolution:
    def _spec(self):
        return FeatureSpec(
            exercise_id="m07",
            features=(
                FeatureDef(name="Arm Elevation A.", primitive="SegmentVerticalAngle",
                           joint_refs=("ACTIVE:upper_arm", "ACTIVE:forearm")),
                FeatureDef(name="Elbow Flexion A.", primitive="JointAngle",
                           joint_refs=("ACTIVE:upper_arm", "ACTIVE:forearm", "ACTIVE:hand")),
                FeatureDef(name="Torso Inclination A.", primitive="SegmentVerticalAngle",
                           joint_refs=("waist", "chest")),
            ),
        )

    def _sample_with_arm_motion(self, skeleton, moving_side: str, amplitude=0.5):
        sample = make_static_sample(skeleton, "m07", num_frames=8)
        frames = np.array(sample.frames)
        for joint in (f"{moving_side}_forearm", f"{moving_side}_hand"):
            col = 3 * skeleton.index_of(joint)
            frames[:, col] += np.linspace(0.0, amplitude, frames.shape[0])
        return RepetitionSample(
            exercise_id="m07", subject_id="s01", repetition_index=0, label=Label.CORRECT,
            frames=frames, frame_rate_hz=30.0, dominant_side=Side.UNKNOWN,
        )

    def test_metadata_priority(self, uiprmd_spec):
        sample = self._sample_with_arm_motion(uiprmd_spec, "right")
        pinned = RepetitionSample(
            exercise_id="m07", subject_id="s01", repetition_index=0, label=Label.CORRECT,
            frames=sample.frames, frame_rate_hz=30.0, dominant_side=Side.LEFT,
        )
        assert resolve_active_side(pinned, self._spec(), uiprmd_spec) is Side.LEFT

    def test_motion_energy_picks_moving_side(self, uiprmd_spec):
        sample = self._sample_with_arm_motion(uiprmd_spec, "right")
        assert resolve_active_side(sample, self._spec(), uiprmd_spec) is Side.RIGHT
        sample = self._sample_with_arm_motion(uiprmd_spec, "left")
        assert resolve_active_side(sample, self._spec(), uiprmd_spec) is Side.LEFT

    def test_exact_tie_breaks_left(self, uiprmd_spec):
        sample = make_static_sample(uiprmd_spec, "m07", num_frames=6)
        assert resolve_active_side(sample, self._spec(), uiprmd_spec) is Side.LEFT


class TestErrors:
    def test_unknown_joint_ref(self, uiprmd_spec, rng):
        bad = FeatureSpec(
            exercise_id="m01",
            features=(
                FeatureDef(name="a", primitive="SegmentVerticalAngle",
                           joint_refs=("waist", "no_such_joint")),
                FeatureDef(name="b", primitive="SegmentVerticalAngle",
                           joint_refs=("waist", "chest")),
                FeatureDef(name="c", primitive="SegmentVerticalAngle",
                           joint_refs=("spine", "chest")),
            ),
        )
        sample = make_motion_sample(uiprmd_spec, "m01", rng)
        with pytest.raises(ConfigError):
            extract_features(sample, uiprmd_spec, bad)

    def test_degenerate_geometry_carries_feature(self, uiprmd_spec):
        sample = make_static_sample(uiprmd_spec, "m01", num_frames=4)
        frames = np.array(sample.frames)
        # collapse chest onto waist so the trunk segment has zero length
        waist = 3 * uiprmd_spec.index_of("waist")
        chest = 3 * uiprmd_spec.index_of("chest")
        frames[:, chest : chest + 3] = frames[:, waist : waist + 3]
        collapsed = RepetitionSample(
            exercise_id="m01", subject_id="s01", repetition_index=0, label=Label.CORRECT,
            frames=frames, frame_rate_hz=30.0,
        )
        spec = load_shipped_spec("uiprmd", "m01")
        with pytest.raises(DegenerateGeometryError) as err:
            extract_features(collapsed, uiprmd_spec, spec)
        assert "Trunk Inclination A." in str(err.value)

    def test_unknown_primitive_is_load_error(self):
        with pytest.raises(ConfigError):
            FeatureDef(name="x", primitive="Banana", joint_refs=("a",))

    def test_arity_validation(self):
        with pytest.raises(ConfigError):
            FeatureDef(name="x", primitive="JointAngle", joint_refs=("a", "b"))

    def test_feature_count_bounds(self):
        one = FeatureDef(name="x", primitive="VerticalDisplacement", joint_refs=("a",))
        with pytest.raises(ConfigError):
            FeatureSpec(exercise_id="zz", features=(one,))


def test_raw_joint_sequence(uiprmd_spec, rng):
    sample = make_motion_sample(uiprmd_spec, "m01", rng, num_frames=7)
    seq = joint_coordinate_sequence(sample, uiprmd_spec)
    assert seq.values.shape == (7, uiprmd_spec.frame_width)
    assert seq.feature_names[:3] == ("waist_x", "waist_y", "waist_z")
    assert np.array_equal(seq.values, sample.frames)
