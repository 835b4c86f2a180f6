"""Small input-validation helpers used across modules and by the estimators."""

from __future__ import annotations

import numpy as np

from .errors import ConfigError


def as_float_matrix(values, name: str = "values") -> np.ndarray:
    """Coerce to a 2-D float64 array, rejecting ragged or scalar input."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix, got ndim={arr.ndim}")
    return arr


def check_finite(arr: np.ndarray, name: str = "array") -> np.ndarray:
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_unit_vector(vec, tol: float = 1e-9, name: str = "up_axis") -> np.ndarray:
    v = np.asarray(vec, dtype=np.float64).reshape(-1)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector")
    if abs(np.linalg.norm(v) - 1.0) > tol:
        raise ValueError(f"{name} must have unit norm (got {np.linalg.norm(v)!r})")
    return v


def check_unit_interval(value: float, name: str = "value") -> float:
    v = float(value)
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {v}")
    return v


def check_positive(value, name: str = "value"):
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def check_nonnegative_int(value, name: str = "value") -> int:
    v = int(value)
    if v < 0 or v != value:
        raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
    return v


def check_feature_sequences(seqs, name: str = "X") -> list:
    """Validate a collection of FeatureSequence-like objects for the estimators."""
    seqs = list(seqs)
    if not seqs:
        raise ConfigError(f"{name} must contain at least one feature sequence")
    for s in seqs:
        if not hasattr(s, "values") or not hasattr(s, "feature_names"):
            raise ConfigError(f"{name} items must be FeatureSequence-like, got {type(s).__name__}")
    return seqs
