"""Loader for the 22-joint Kinect dataset's segmented plain-text layout.

Expected layout: positions files named ``mXX_sYY_eZZ_positions.txt`` (or
``..._positions_inc.txt`` for incorrect executions), one frame per line,
66 numbers per frame. Each per-episode file is one repetition. The label
comes from the enclosing folder: any path component containing
"incorrect" (or the ``_inc`` filename suffix) marks the incorrect set.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path

from ..errors import NotFoundError
from ._numeric import read_frame_matrix
from .types import Label, RepetitionSample, Side, SkeletonSpec

logger = logging.getLogger(__name__)

FRAME_RATE_HZ = 30.0

_POSITIONS_FILE = re.compile(
    r"^(?P<exercise>m\d{2})_s(?P<subject>\d{2})_e(?P<episode>\d{2})_positions(?P<inc>_inc)?\.txt$"
)


def _label_for(path: Path, inc_suffix: bool) -> Label:
    if inc_suffix:
        return Label.INCORRECT
    if any("incorrect" in part.lower() for part in path.parts[:-1]):
        return Label.INCORRECT
    return Label.CORRECT


def load_uiprmd(root_path, exercise_id: str, spec: SkeletonSpec) -> list[RepetitionSample]:
    """Load every repetition of one exercise from the segmented layout.

    Args:
        root_path: directory containing the correct and incorrect movement
            folders (searched recursively).
        exercise_id: exercise code such as "m01".
        spec: skeleton spec fixing the expected 66-column frame width.

    Returns:
        One sample per positions file, sorted by (subject, episode, label)
        so repeated loads are byte-identical.
    """
    root = Path(root_path)
    if not root.is_dir():
        raise NotFoundError(f"dataset directory not found: {root}")

    found: list[tuple[str, int, Label, Path]] = []
    for path in sorted(root.rglob("*.txt")):
        m = _POSITIONS_FILE.match(path.name)
        if m is None or m.group("exercise") != exercise_id:
            continue
        label = _label_for(path, m.group("inc") is not None)
        found.append((f"s{m.group('subject')}", int(m.group("episode")), label, path))

    found.sort(key=lambda item: (item[0], item[1], item[2].value))
    samples = []
    for subject_id, episode, label, path in found:
        frames = read_frame_matrix(path, spec.frame_width)
        if frames is None:
            continue
        samples.append(
            RepetitionSample(
                exercise_id=exercise_id,
                subject_id=subject_id,
                repetition_index=episode - 1,
                label=label,
                frames=frames,
                frame_rate_hz=FRAME_RATE_HZ,
                dominant_side=Side.UNKNOWN,
            )
        )
    return samples
