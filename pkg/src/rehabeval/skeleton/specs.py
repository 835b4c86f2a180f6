"""Shipped skeleton layouts for the two supported datasets.

Joint orderings below are assumptions to be verified against each dataset's
release notes before running on real recordings: the 22-joint list follows
the published Kinect layout of the first dataset; the 26-joint list is an
anatomically ordered layout for the inertial-suit dataset. Feature configs
reference joints by these names only, so a corrected ordering is a one-file
change here.
"""

from __future__ import annotations

from .types import DatasetId, SkeletonSpec, Units

UIPRMD_JOINTS = (
    "waist",
    "spine",
    "chest",
    "neck",
    "head",
    "head_tip",
    "left_collar",
    "left_upper_arm",
    "left_forearm",
    "left_hand",
    "right_collar",
    "right_upper_arm",
    "right_forearm",
    "right_hand",
    "left_upper_leg",
    "left_lower_leg",
    "left_foot",
    "left_leg_toes",
    "right_upper_leg",
    "right_lower_leg",
    "right_foot",
    "right_leg_toes",
)

REHAB24_JOINTS = (
    "pelvis",
    "spine_lower",
    "spine_mid",
    "spine_upper",
    "neck",
    "head",
    "left_clavicle",
    "left_shoulder",
    "left_elbow",
    "left_wrist",
    "left_hand",
    "right_clavicle",
    "right_shoulder",
    "right_elbow",
    "right_wrist",
    "right_hand",
    "left_hip",
    "left_knee",
    "left_ankle",
    "left_foot",
    "left_toes",
    "right_hip",
    "right_knee",
    "right_ankle",
    "right_foot",
    "right_toes",
)

# Kinect world: y up. Inertial mocap convention here: z up.
UIPRMD_SPEC = SkeletonSpec(
    dataset_id=DatasetId.UIPRMD,
    joint_names=UIPRMD_JOINTS,
    up_axis=(0.0, 1.0, 0.0),
    units=Units.METERS,
)

REHAB24_SPEC = SkeletonSpec(
    dataset_id=DatasetId.REHAB24_6,
    joint_names=REHAB24_JOINTS,
    up_axis=(0.0, 0.0, 1.0),
    units=Units.METERS,
)


def generic_spec(joint_names, up_axis=(0.0, 1.0, 0.0), units=Units.METERS) -> SkeletonSpec:
    """Build a spec for data in the normalized interchange format."""
    return SkeletonSpec(
        dataset_id=DatasetId.GENERIC,
        joint_names=tuple(joint_names),
        up_axis=tuple(up_axis),
        units=units,
    )


def spec_for_dataset(dataset_id: DatasetId | str, joint_names=None) -> SkeletonSpec:
    """Resolve the shipped spec for a dataset id; GENERIC requires joint_names."""
    did = DatasetId(dataset_id) if not isinstance(dataset_id, DatasetId) else dataset_id
    if did is DatasetId.UIPRMD:
        return UIPRMD_SPEC
    if did is DatasetId.REHAB24_6:
        return REHAB24_SPEC
    if joint_names is None:
        raise ValueError("generic dataset needs explicit joint_names")
    return generic_spec(joint_names)
