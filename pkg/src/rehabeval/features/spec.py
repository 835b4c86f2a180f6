"""Feature definitions and the per-exercise config files that ship with the package.

A config file is a JSON document ``{exercise_id, dataset_id, features: [...]}``
where each feature record carries ``{name, primitive, joint_refs, units}``.
Extras: ``deviation_from_straight`` (JointAngle only; reports 180 minus the
angle, used for valgus-style collapse measures), ``inner`` (a nested feature
record for StabilityRange), free-text ``notes`` at either level. Unknown
primitive names fail at load time.

Joint refs may carry the side placeholders ``ACTIVE:``/``PASSIVE:`` which are
resolved to ``left_``/``right_`` joint names per sample at extraction time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import ConfigError

ACTIVE_PREFIX = "ACTIVE:"
PASSIVE_PREFIX = "PASSIVE:"

PRIMITIVES = (
    "JointAngle",
    "SegmentVerticalAngle",
    "PlaneDeviation",
    "PairSymmetry",
    "PelvicTilt",
    "HorizontalDistance",
    "VerticalDisplacement",
    "StabilityRange",
)

# joint_refs arity per primitive; PlaneDeviation takes tracked point + plane
# points (3 means the tracked point doubles as a plane point).
_ARITY = {
    "JointAngle": (3, 3),
    "SegmentVerticalAngle": (2, 2),
    "PlaneDeviation": (3, 4),
    "PairSymmetry": (2, 2),
    "PelvicTilt": (2, 2),
    "HorizontalDistance": (2, 2),
    "VerticalDisplacement": (1, 1),
    "StabilityRange": (0, 0),
}

# primitives whose value depends on the world vertical
_UP_REFERENCED = {
    "SegmentVerticalAngle",
    "PelvicTilt",
    "PairSymmetry",
    "HorizontalDistance",
    "VerticalDisplacement",
}

ANGLE_PRIMITIVES = {"JointAngle", "SegmentVerticalAngle", "PelvicTilt"}


@dataclass(frozen=True)
class FeatureDef:
    """One named kinematic feature: a primitive plus the joints it reads."""

    name: str
    primitive: str
    joint_refs: tuple[str, ...] = ()
    units: str = "degrees"
    deviation_from_straight: bool = False
    inner: "FeatureDef | None" = None

    def __post_init__(self):
        object.__setattr__(self, "joint_refs", tuple(self.joint_refs))
        if self.primitive not in PRIMITIVES:
            raise ConfigError(f"unknown primitive {self.primitive!r} for feature {self.name!r}")
        lo, hi = _ARITY[self.primitive]
        if not lo <= len(self.joint_refs) <= hi:
            raise ConfigError(
                f"feature {self.name!r}: {self.primitive} takes {lo}"
                + (f"..{hi}" if hi != lo else "")
                + f" joint refs, got {len(self.joint_refs)}"
            )
        if self.primitive == "StabilityRange":
            if self.inner is None:
                raise ConfigError(f"feature {self.name!r}: StabilityRange needs an inner feature")
        elif self.inner is not None:
            raise ConfigError(f"feature {self.name!r}: only StabilityRange takes an inner feature")
        if self.deviation_from_straight and self.primitive != "JointAngle":
            raise ConfigError(
                f"feature {self.name!r}: deviation_from_straight applies to JointAngle only"
            )

    @property
    def is_angle_valued(self) -> bool:
        base = self.inner if self.primitive == "StabilityRange" else self
        return base.primitive in ANGLE_PRIMITIVES

    @property
    def requires_up(self) -> bool:
        base = self.inner if self.primitive == "StabilityRange" else self
        return base.primitive in _UP_REFERENCED

    @property
    def has_side_placeholder(self) -> bool:
        refs = self.all_joint_refs
        return any(r.startswith((ACTIVE_PREFIX, PASSIVE_PREFIX)) for r in refs)

    @property
    def all_joint_refs(self) -> tuple[str, ...]:
        if self.primitive == "StabilityRange":
            return self.inner.all_joint_refs
        return self.joint_refs

    @classmethod
    def from_dict(cls, record: dict) -> "FeatureDef":
        inner = record.get("inner")
        return cls(
            name=record["name"],
            primitive=record["primitive"],
            joint_refs=tuple(record.get("joint_refs", ())),
            units=record.get("units", "degrees"),
            deviation_from_straight=bool(record.get("deviation_from_straight", False)),
            inner=cls.from_dict(inner) if inner else None,
        )

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "primitive": self.primitive,
            "joint_refs": list(self.joint_refs),
            "units": self.units,
        }
        if self.deviation_from_straight:
            out["deviation_from_straight"] = True
        if self.inner is not None:
            out["inner"] = self.inner.to_dict()
        return out


@dataclass(frozen=True)
class FeatureSpec:
    """Ordered feature catalog for one exercise."""

    exercise_id: str
    features: tuple[FeatureDef, ...]
    dataset_id: str | None = None
    exercise_name: str | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        object.__setattr__(self, "notes", tuple(self.notes))
        if not 3 <= len(self.features) <= 5:
            raise ConfigError(
                f"{self.exercise_id}: feature specs carry 3 to 5 features, got {len(self.features)}"
            )
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise ConfigError(f"{self.exercise_id}: duplicate feature names")

    @property
    def num_features(self) -> int:
        return len(self.features)

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)

    @property
    def has_side_placeholders(self) -> bool:
        return any(f.has_side_placeholder for f in self.features)

    @classmethod
    def from_dict(cls, record: dict) -> "FeatureSpec":
        return cls(
            exercise_id=record["exercise_id"],
            features=tuple(FeatureDef.from_dict(f) for f in record["features"]),
            dataset_id=record.get("dataset_id"),
            exercise_name=record.get("exercise_name"),
            notes=tuple(record.get("notes", ())),
        )

    def to_dict(self) -> dict:
        out = {
            "exercise_id": self.exercise_id,
            "features": [f.to_dict() for f in self.features],
        }
        if self.dataset_id:
            out["dataset_id"] = self.dataset_id
        if self.exercise_name:
            out["exercise_name"] = self.exercise_name
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def load_feature_spec(path) -> FeatureSpec:
    """Load one exercise config file."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"feature config not found: {p}")
    try:
        record = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"unreadable feature config {p}: {exc}") from exc
    try:
        return FeatureSpec.from_dict(record)
    except KeyError as exc:
        raise ConfigError(f"feature config {p} missing field {exc}") from exc


def save_feature_spec(spec: FeatureSpec, path) -> Path:
    p = Path(path)
    p.write_text(json.dumps(spec.to_dict(), indent=2) + "\n", encoding="utf-8")
    return p


def _shipped_root():
    return resources.files("rehabeval") / "configs"


def shipped_exercises() -> dict[str, list[str]]:
    """Map dataset id -> sorted exercise ids with shipped configs."""
    out: dict[str, list[str]] = {}
    for dataset_dir in _shipped_root().iterdir():
        if dataset_dir.is_dir():
            out[dataset_dir.name] = sorted(p.name[:-5] for p in dataset_dir.iterdir() if p.name.endswith(".json"))
    return out


def load_shipped_spec(dataset_id: str, exercise_id: str) -> FeatureSpec:
    """Load a shipped per-exercise config by dataset and exercise id."""
    entry = _shipped_root() / str(dataset_id) / f"{exercise_id}.json"
    try:
        text = entry.read_text(encoding="utf-8")
    except (FileNotFoundError, NotADirectoryError):
        raise ConfigError(f"no shipped feature config for {dataset_id}/{exercise_id}") from None
    return FeatureSpec.from_dict(json.loads(text))


def find_feature_spec(exercise_id: str, dataset_id: str | None = None, extra_dir=None) -> FeatureSpec:
    """Resolve an exercise's feature spec from an extra config dir or the shipped set."""
    if extra_dir is not None:
        candidate = Path(extra_dir) / f"{exercise_id}.json"
        if candidate.is_file():
            return load_feature_spec(candidate)
    if dataset_id is not None:
        return load_shipped_spec(dataset_id, exercise_id)
    for did, exercises in shipped_exercises().items():
        if exercise_id in exercises:
            return load_shipped_spec(did, exercise_id)
    raise ConfigError(f"no feature config found for exercise {exercise_id!r}")
