"""Experiment orchestration: configs, cells, the grid and the CLI."""

from .cells import AuditRow, CellResult, cell_fingerprint, cell_seed, run_cell
from .config import ExperimentConfig, build_client, force_mock
from .experiments import (
    ComparisonResult,
    PerExerciseResult,
    SweepResult,
    load_exercise_data,
    run_feedback,
    run_per_exercise,
    run_reasoning_comparison,
    run_shot_sweep,
)
from .reports import (
    REFERENCE_PER_EXERCISE,
    REFERENCE_SHOT,
    REFERENCE_TECHNIQUES,
    format_exercise_table,
    format_shot_table,
    format_technique_table,
    write_plot_data,
)

__all__ = [
    "AuditRow",
    "CellResult",
    "ComparisonResult",
    "ExperimentConfig",
    "PerExerciseResult",
    "REFERENCE_PER_EXERCISE",
    "REFERENCE_SHOT",
    "REFERENCE_TECHNIQUES",
    "SweepResult",
    "build_client",
    "cell_fingerprint",
    "cell_seed",
    "force_mock",
    "format_exercise_table",
    "format_shot_table",
    "format_technique_table",
    "load_exercise_data",
    "run_cell",
    "run_feedback",
    "run_per_exercise",
    "run_reasoning_comparison",
    "run_shot_sweep",
    "write_plot_data",
]
