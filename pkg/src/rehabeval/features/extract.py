"""Per-frame feature extraction from repetition samples."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, DegenerateGeometryError
from ..skeleton.types import Label, RepetitionSample, Side, SkeletonSpec
from . import geometry
from .spec import ACTIVE_PREFIX, PASSIVE_PREFIX, FeatureDef, FeatureSpec


@dataclass(frozen=True, eq=False)
class FeatureSequence:
    """frames x features matrix of named kinematic features for one repetition."""

    exercise_id: str
    subject_id: str
    repetition_index: int
    label: Label
    feature_names: tuple[str, ...]
    values: np.ndarray
    units: tuple[str, ...]

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64, copy=True)
        if arr.ndim != 2:
            raise ValueError("values must be a 2-D matrix")
        if arr.shape[1] != len(self.feature_names):
            raise ValueError(
                f"values have {arr.shape[1]} columns but {len(self.feature_names)} feature names"
            )
        if len(self.units) != len(self.feature_names):
            raise ValueError("units must align with feature_names")
        if not np.isfinite(arr).all():
            raise ValueError("feature values contain non-finite entries")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "units", tuple(self.units))

    @property
    def num_frames(self) -> int:
        return self.values.shape[0]

    @property
    def num_features(self) -> int:
        return self.values.shape[1]

    @property
    def key(self) -> str:
        return f"{self.exercise_id}/{self.subject_id}/r{self.repetition_index:03d}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FeatureSequence):
            return NotImplemented
        return (
            self.key == other.key
            and self.label == other.label
            and self.feature_names == other.feature_names
            and self.units == other.units
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self):
        return hash((self.key, self.label, self.feature_names))


def _resolve_ref(ref: str, side: Side) -> str:
    if ref.startswith(ACTIVE_PREFIX):
        prefix = "left_" if side is Side.LEFT else "right_"
        return prefix + ref[len(ACTIVE_PREFIX):]
    if ref.startswith(PASSIVE_PREFIX):
        prefix = "right_" if side is Side.LEFT else "left_"
        return prefix + ref[len(PASSIVE_PREFIX):]
    return ref


def _joint_series(sample: RepetitionSample, spec: SkeletonSpec, joint_name: str) -> np.ndarray:
    try:
        idx = spec.index_of(joint_name)
    except KeyError as exc:
        raise ConfigError(str(exc)) from None
    return sample.joint_positions(idx)


def _path_length(sample: RepetitionSample, spec: SkeletonSpec, joint_name: str) -> float:
    pts = _joint_series(sample, spec, joint_name)
    return float(np.linalg.norm(np.diff(pts, axis=0), axis=1).sum())


def resolve_active_side(
    sample: RepetitionSample, feature_spec: FeatureSpec, spec: SkeletonSpec
) -> Side:
    """Pick the side that ACTIVE placeholders resolve to for this sample.

    A known dominant side wins. Otherwise the side whose placeholder-referenced
    joints moved more (total frame-to-frame path length) is chosen, with Left
    as the tie-break.
    """
    if sample.dominant_side in (Side.LEFT, Side.RIGHT):
        return sample.dominant_side
    totals = {Side.LEFT: 0.0, Side.RIGHT: 0.0}
    seen: set[str] = set()
    for feat in feature_spec.features:
        for ref in feat.all_joint_refs:
            if not ref.startswith((ACTIVE_PREFIX, PASSIVE_PREFIX)) or ref in seen:
                continue
            seen.add(ref)
            for side in (Side.LEFT, Side.RIGHT):
                name = _resolve_ref(ref if ref.startswith(ACTIVE_PREFIX) else ACTIVE_PREFIX + ref.split(":", 1)[1], side)
                totals[side] += _path_length(sample, spec, name)
    if totals[Side.RIGHT] > totals[Side.LEFT]:
        return Side.RIGHT
    return Side.LEFT


def _feature_column(
    feat: FeatureDef,
    sample: RepetitionSample,
    spec: SkeletonSpec,
    side: Side,
) -> np.ndarray:
    up = spec.up
    n = sample.num_frames
    refs = [_resolve_ref(r, side) for r in feat.joint_refs]
    series = [_joint_series(sample, spec, r) for r in refs]

    if feat.primitive == "JointAngle":
        col = geometry.joint_angle(series[0], series[1], series[2])
        if feat.deviation_from_straight:
            col = 180.0 - col
        return col
    if feat.primitive == "SegmentVerticalAngle":
        return geometry.segment_vertical_angle(series[0], series[1], up)
    if feat.primitive == "PelvicTilt":
        return geometry.pelvic_tilt(series[0], series[1], up)
    if feat.primitive == "HorizontalDistance":
        return geometry.horizontal_distance(series[0], series[1], up)
    if feat.primitive == "VerticalDisplacement":
        return geometry.vertical_displacement(series[0], up)
    if feat.primitive == "PairSymmetry":
        return np.full(n, geometry.pair_symmetry(series[0], series[1], up))
    if feat.primitive == "PlaneDeviation":
        tracked = series[0]
        plane_refs = refs[0:3] if len(refs) == 3 else refs[1:4]
        plane = np.stack(
            [_joint_series(sample, spec, r)[0] for r in plane_refs]
        )
        return geometry.plane_deviation(tracked, plane)
    if feat.primitive == "StabilityRange":
        inner_col = _feature_column(feat.inner, sample, spec, side)
        return np.full(n, geometry.stability_range(inner_col))
    raise ConfigError(f"unhandled primitive {feat.primitive!r}")


def extract_features(
    sample: RepetitionSample, spec: SkeletonSpec, feature_spec: FeatureSpec
) -> FeatureSequence:
    """Compute the exercise's feature matrix (num_frames x num_features).

    Feature columns follow feature_spec order; identity metadata and the label
    are copied from the sample.

    Raises:
        ConfigError: a joint ref does not resolve against the skeleton.
        DegenerateGeometryError: zero-length segment or collinear plane points,
            with the frame index and feature name attached.
    """
    side = (
        resolve_active_side(sample, feature_spec, spec)
        if feature_spec.has_side_placeholders
        else Side.LEFT
    )
    columns = []
    for feat in feature_spec.features:
        try:
            columns.append(np.asarray(_feature_column(feat, sample, spec, side), dtype=np.float64))
        except DegenerateGeometryError as exc:
            raise DegenerateGeometryError(
                f"feature {feat.name!r}: {exc}", frame_index=exc.frame_index
            ) from exc
    return FeatureSequence(
        exercise_id=sample.exercise_id,
        subject_id=sample.subject_id,
        repetition_index=sample.repetition_index,
        label=sample.label,
        feature_names=feature_spec.feature_names,
        values=np.column_stack(columns),
        units=tuple(f.units for f in feature_spec.features),
    )


def joint_coordinate_sequence(sample: RepetitionSample, spec: SkeletonSpec) -> FeatureSequence:
    """Raw-joint variant: every coordinate becomes its own named column."""
    names = tuple(
        f"{joint}_{axis}" for joint in spec.joint_names for axis in ("x", "y", "z")
    )
    return FeatureSequence(
        exercise_id=sample.exercise_id,
        subject_id=sample.subject_id,
        repetition_index=sample.repetition_index,
        label=sample.label,
        feature_names=names,
        values=sample.frames,
        units=tuple(spec.units.value for _ in names),
    )
