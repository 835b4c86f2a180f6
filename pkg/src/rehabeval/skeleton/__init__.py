"""Loading, validation and splitting of body-joint repetition data."""

from .interchange import load_generic, read_header, save_generic, spec_from_header
from .rehab24 import load_rehab24, read_annotation_table
from .specs import REHAB24_SPEC, UIPRMD_SPEC, generic_spec, spec_for_dataset
from .splits import SplitPolicy, split_support_and_test
from .types import (
    DatasetId,
    Label,
    RepetitionAnnotation,
    RepetitionSample,
    Side,
    SkeletonSpec,
    Units,
    label_counts,
    repair_nonfinite_rows,
)
from .uiprmd import load_uiprmd

__all__ = [
    "DatasetId",
    "Label",
    "REHAB24_SPEC",
    "RepetitionAnnotation",
    "RepetitionSample",
    "Side",
    "SkeletonSpec",
    "SplitPolicy",
    "UIPRMD_SPEC",
    "Units",
    "generic_spec",
    "label_counts",
    "load_generic",
    "load_rehab24",
    "load_uiprmd",
    "read_annotation_table",
    "read_header",
    "repair_nonfinite_rows",
    "save_generic",
    "spec_for_dataset",
    "spec_from_header",
    "split_support_and_test",
]
