"""Exercise-specific kinematic features computed from joint coordinates."""

from .extract import (
    FeatureSequence,
    extract_features,
    joint_coordinate_sequence,
    resolve_active_side,
)
from .geometry import (
    horizontal_distance,
    joint_angle,
    pair_symmetry,
    pelvic_tilt,
    plane_deviation,
    segment_vertical_angle,
    stability_range,
    vertical_displacement,
)
from .spec import (
    FeatureDef,
    FeatureSpec,
    find_feature_spec,
    load_feature_spec,
    load_shipped_spec,
    save_feature_spec,
    shipped_exercises,
)

__all__ = [
    "FeatureDef",
    "FeatureSequence",
    "FeatureSpec",
    "extract_features",
    "find_feature_spec",
    "horizontal_distance",
    "joint_angle",
    "joint_coordinate_sequence",
    "load_feature_spec",
    "load_shipped_spec",
    "pair_symmetry",
    "pelvic_tilt",
    "plane_deviation",
    "resolve_active_side",
    "save_feature_spec",
    "segment_vertical_angle",
    "shipped_exercises",
    "stability_range",
    "vertical_displacement",
]
