"""Geometric primitives behind the per-frame kinematic features.

Every function accepts single 3-vectors or (n, 3) per-frame stacks and
broadcasts, returning a scalar or an (n,) array to match. Angles come back
in degrees. Angle computations go through atan2 of the cross/dot pair,
which stays accurate near 0 and 180 where plain arccos loses digits.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateGeometryError

EPSILON = 1e-9


def _as_points(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        if arr.shape != (3,):
            raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
        return arr[None, :], True
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"expected (n, 3) points, got shape {arr.shape}")
    return arr, False


def _ret(values: np.ndarray, scalar: bool):
    return float(values[0]) if scalar else values


def _check_lengths(norms: np.ndarray, what: str):
    bad = norms <= EPSILON
    if bad.any():
        idx = int(np.argmax(bad))
        raise DegenerateGeometryError(f"degenerate {what}", frame_index=idx)


def joint_angle(a, b, c):
    """Angle at vertex b between rays b->a and b->c, in [0, 180] degrees."""
    pa, sa = _as_points(a)
    pb, sb = _as_points(b)
    pc, sc = _as_points(c)
    u = pa - pb
    v = pc - pb
    nu = np.linalg.norm(u, axis=-1)
    nv = np.linalg.norm(v, axis=-1)
    _check_lengths(nu, "segment at vertex (first ray)")
    _check_lengths(nv, "segment at vertex (second ray)")
    cross = np.linalg.norm(np.cross(u, v), axis=-1)
    dot = np.einsum("ij,ij->i", u, v)
    return _ret(np.degrees(np.arctan2(cross, dot)), sa and sb and sc)


def segment_vertical_angle(base, tip, up):
    """Angle between the segment base->tip and the up axis, in [0, 180] degrees."""
    pb, sb = _as_points(base)
    pt, st = _as_points(tip)
    u = np.asarray(up, dtype=np.float64).reshape(3)
    seg = pt - pb
    ns = np.linalg.norm(seg, axis=-1)
    _check_lengths(ns, "segment")
    cross = np.linalg.norm(np.cross(seg, u), axis=-1)
    dot = seg @ u
    return _ret(np.degrees(np.arctan2(cross, dot)), sb and st)


def pelvic_tilt(left_hip, right_hip, up):
    """Signed angle of the hip line against the horizontal plane, in [-90, 90] degrees.

    Positive when the left hip sits higher along the up axis.
    """
    pl, sl = _as_points(left_hip)
    pr, sr = _as_points(right_hip)
    u = np.asarray(up, dtype=np.float64).reshape(3)
    d = pl - pr
    nd = np.linalg.norm(d, axis=-1)
    _check_lengths(nd, "hip line (coincident hips)")
    rise = d @ u
    horizontal = np.linalg.norm(d - rise[:, None] * u, axis=-1)
    return _ret(np.degrees(np.arctan2(rise, horizontal)), sl and sr)


def plane_deviation(point_series, plane_points):
    """Per-frame unsigned distance of a tracked point from a fixed plane.

    The plane is fixed by three points (taken at frame 0 by callers). Distance
    comes back in data units.
    """
    pts, scalar = _as_points(point_series)
    plane = np.asarray(plane_points, dtype=np.float64)
    if plane.shape != (3, 3):
        raise ValueError(f"plane_points must be three 3-vectors, got shape {plane.shape}")
    u = plane[1] - plane[0]
    v = plane[2] - plane[0]
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu <= EPSILON or nv <= EPSILON:
        raise DegenerateGeometryError("coincident plane points")
    normal = np.cross(u / nu, v / nv)
    nn = np.linalg.norm(normal)
    if nn <= EPSILON:
        raise DegenerateGeometryError("collinear plane points")
    normal = normal / nn
    dist = np.abs((pts - plane[0]) @ normal)
    return _ret(dist, scalar)


def stability_range(series) -> float:
    """Spread max(series) - min(series) of a per-frame scalar signal."""
    arr = np.asarray(series, dtype=np.float64).reshape(-1)
    if arr.size < 2:
        raise ValueError("stability_range needs a series of length >= 2")
    return float(arr.max() - arr.min())


def pair_symmetry(a_series, b_series, up) -> float:
    """Largest height gap between two mirrored joints over the repetition.

    Heights are taken along the up axis; the result is a single spread value
    in data units (emitted as a constant per-frame column by the extractor).
    """
    pa, _ = _as_points(a_series)
    pb, _ = _as_points(b_series)
    u = np.asarray(up, dtype=np.float64).reshape(3)
    gap = np.abs((pa - pb) @ u)
    return float(gap.max())


def horizontal_distance(a, b, up):
    """Distance between two joints projected onto the horizontal plane."""
    pa, sa = _as_points(a)
    pb, sb = _as_points(b)
    u = np.asarray(up, dtype=np.float64).reshape(3)
    d = pa - pb
    rise = d @ u
    return _ret(np.linalg.norm(d - rise[:, None] * u, axis=-1), sa and sb)


def vertical_displacement(point_series, up):
    """Per-frame height of a joint relative to its own frame-0 height."""
    pts, scalar = _as_points(point_series)
    u = np.asarray(up, dtype=np.float64).reshape(3)
    heights = pts @ u
    return _ret(heights - heights[0], scalar)
