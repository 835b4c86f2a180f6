"""Plain-text numeric frame parsing shared by the dataset loaders."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from ..errors import ParseError, SchemaError
from .types import repair_nonfinite_rows

logger = logging.getLogger(__name__)


def read_frame_matrix(path: Path, expected_columns: int) -> np.ndarray | None:
    """Read one whitespace- or comma-separated frame-per-line file.

    Returns the repaired frame matrix, or None when the file had non-finite
    gaps too large to repair (caller skips the sample).

    Raises:
        ParseError: a token is not numeric (message carries file and line).
        SchemaError: a row's column count disagrees with the skeleton.
    """
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            tokens = line.replace(",", " ").split()
            if not tokens:
                continue
            try:
                values = [float(tok) for tok in tokens]
            except ValueError:
                raise ParseError("malformed numeric value", path=path, line=line_no) from None
            if len(values) != expected_columns:
                raise SchemaError(
                    f"expected {expected_columns} columns, got {len(values)} [{path}:{line_no}]"
                )
            rows.append(values)
    if not rows:
        raise SchemaError(f"no frames in {path}")
    matrix = np.asarray(rows, dtype=np.float64)
    repaired = repair_nonfinite_rows(matrix)
    if repaired is None:
        logger.warning("rejecting %s: non-finite gap longer than repair limit", path)
    return repaired
