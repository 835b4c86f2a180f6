"""The experiment grid: shot sweeps, technique comparison, per-exercise cells, feedback."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import CapacityError, StateError
from ..features.extract import FeatureSequence
from ..metrics import MetricsReport, build_report
from ..prompting.render import render_feedback_prompt, sensor_name_for
from ..prompting.techniques import PromptTechnique, TechniqueKind
from ..skeleton.interchange import load_generic, read_header, spec_from_header
from ..skeleton.types import Label
from .cells import CellResult, cell_fingerprint, cell_seed, run_cell, sequences_for
from .config import ExperimentConfig, build_client
from .reports import (
    format_exercise_table,
    format_shot_table,
    format_technique_table,
    write_plot_data,
)

logger = logging.getLogger(__name__)


@dataclass
class ExerciseData:
    exercise_id: str
    exercise_name: str
    sensor_name: str
    sequences_by_variant: dict[str, list[FeatureSequence]]

    def sequences(self, variant: str) -> list[FeatureSequence]:
        return self.sequences_by_variant[variant]


def load_exercise_data(config: ExperimentConfig, exercise_id: str) -> ExerciseData:
    """Load one exercise's interchange file and precompute its feature sequences."""
    path = config.data_file_for(exercise_id)
    header = read_header(path)
    skeleton_spec = spec_from_header(header)
    samples = load_generic(path)
    feature_spec = config.feature_spec_for(exercise_id)
    by_variant = {
        variant: sequences_for(samples, skeleton_spec, feature_spec, variant)
        for variant in config.input_variants
    }
    return ExerciseData(
        exercise_id=exercise_id,
        exercise_name=feature_spec.exercise_name or exercise_id,
        sensor_name=sensor_name_for(header["dataset_id"]),
        sequences_by_variant=by_variant,
    )


def _cells_dir(config: ExperimentConfig) -> Path:
    return Path(config.output_dir) / "cells"


def _run_or_load_cell(
    config: ExperimentConfig,
    client,
    data: ExerciseData,
    technique: PromptTechnique,
    input_variant: str,
) -> CellResult:
    """Execute one cell, or reuse its saved result when the fingerprint matches."""
    seed = cell_seed(config.seed, data.exercise_id, technique.k)
    fingerprint = cell_fingerprint(
        data.exercise_id, technique, seed, config.split_policy, config.serialization,
        input_variant, config.threshold, getattr(client, "model_name", ""),
    )
    name = f"{data.exercise_id}_{technique.kind.value}_k{technique.k}_{input_variant}"
    path = _cells_dir(config) / f"{name}.json"
    if path.exists():
        cached = CellResult.load(path)
        if cached.fingerprint == fingerprint:
            logger.info("cell %s already complete; skipping", name)
            return cached
        logger.warning("cell %s exists with stale fingerprint; recomputing", name)
    result = run_cell(
        sequences=data.sequences(input_variant),
        exercise_id=data.exercise_id,
        exercise_name=data.exercise_name,
        sensor_name=data.sensor_name,
        technique=technique,
        seed=seed,
        split_policy=config.split_policy,
        policy=config.serialization,
        client=client,
        threshold=config.threshold,
        positive_label=config.positive_class,
        input_variant=input_variant,
        in_flight=config.in_flight,
    )
    result.save(_cells_dir(config))
    return result


def _pooled_report(cells: list[CellResult], positive_label: Label, **metadata) -> MetricsReport:
    outcomes = [
        (row.as_outcome(), Label.from_string(row.truth))
        for cell in cells
        for row in cell.audit
    ]
    with_probabilities = any(cell.report.auc_roc is not None for cell in cells) or any(
        row.probability_correct is not None for cell in cells for row in cell.audit
    )
    return build_report(
        outcomes, positive_label=positive_label, with_probabilities=with_probabilities, **metadata
    )


@dataclass
class SweepResult:
    pooled_by_k: dict[int, MetricsReport]
    macro_accuracy_by_k: dict[int, float]
    cells: list[CellResult]
    skipped: list[str] = field(default_factory=list)
    table_path: Path | None = None
    plot_path: Path | None = None
    table_text: str = ""


def run_shot_sweep(config: ExperimentConfig, client=None) -> SweepResult:
    """Classification accuracy as the shot count grows, per input variant."""
    config.validate_exercises()
    client = client or build_client(config)
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    data = {ex: load_exercise_data(config, ex) for ex in config.exercise_ids}
    cells: list[CellResult] = []
    skipped: list[str] = []
    plot_rows = []
    pooled_by_k: dict[int, MetricsReport] = {}
    macro_by_k: dict[int, float] = {}

    for variant in config.input_variants:
        for k in config.k_values:
            technique = PromptTechnique(kind=TechniqueKind.CLASSIFICATION, k=k)
            k_cells = []
            for exercise_id in config.exercise_ids:
                try:
                    cell = _run_or_load_cell(config, client, data[exercise_id], technique, variant)
                except CapacityError as exc:
                    note = f"{exercise_id} k={k} variant={variant}: {exc}"
                    logger.warning("skipping cell %s", note)
                    skipped.append(note)
                    continue
                k_cells.append(cell)
                cells.append(cell)
            if not k_cells:
                continue
            pooled = _pooled_report(
                k_cells, config.positive_class,
                exercise_id="ALL", technique=technique.kind.value, k=k,
                seed=config.seed, model_name=getattr(client, "model_name", ""),
            )
            macro = sum(c.report.accuracy for c in k_cells) / len(k_cells)
            plot_rows.append(
                {
                    "k": k,
                    "input_variant": variant,
                    "accuracy_pooled": f"{pooled.accuracy:.6f}",
                    "accuracy_macro": f"{macro:.6f}",
                }
            )
            if variant == "features":
                pooled_by_k[k] = pooled
                macro_by_k[k] = macro

    table = format_shot_table(config.dataset_id, pooled_by_k, macro_by_k)
    table_path = out_dir / "shot_sweep.txt"
    table_path.write_text(table + "\n", encoding="utf-8")
    plot_path = write_plot_data(out_dir / "shot_sweep_plot.csv", plot_rows)
    (out_dir / "shot_sweep.json").write_text(
        json.dumps({str(k): r.to_dict() for k, r in pooled_by_k.items()}, indent=1) + "\n",
        encoding="utf-8",
    )
    return SweepResult(
        pooled_by_k=pooled_by_k,
        macro_accuracy_by_k=macro_by_k,
        cells=cells,
        skipped=skipped,
        table_path=table_path,
        plot_path=plot_path,
        table_text=table,
    )


@dataclass
class ComparisonResult:
    by_technique: dict[str, MetricsReport]
    cells: list[CellResult]
    table_path: Path | None = None
    table_text: str = ""


def run_reasoning_comparison(config: ExperimentConfig, client=None) -> ComparisonResult:
    """Five assessment techniques on identical splits at a fixed shot count."""
    config.validate_exercises()
    client = client or build_client(config)
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    data = {ex: load_exercise_data(config, ex) for ex in config.exercise_ids}
    techniques = [t for t in config.techniques if t.kind is not TechniqueKind.ROLE_PLAY_FEEDBACK]
    by_technique: dict[str, MetricsReport] = {}
    cells: list[CellResult] = []
    for technique in techniques:
        technique_cells = []
        for exercise_id in config.exercise_ids:
            cell = _run_or_load_cell(config, client, data[exercise_id], technique, "features")
            technique_cells.append(cell)
            cells.append(cell)
        by_technique[technique.kind.value] = _pooled_report(
            technique_cells, config.positive_class,
            exercise_id="ALL", technique=technique.kind.value, k=technique.k,
            seed=config.seed, model_name=getattr(client, "model_name", ""),
        )

    table = format_technique_table(config.dataset_id, by_technique)
    table_path = out_dir / "technique_comparison.txt"
    table_path.write_text(table + "\n", encoding="utf-8")
    (out_dir / "technique_comparison.json").write_text(
        json.dumps({t: r.to_dict() for t, r in by_technique.items()}, indent=1) + "\n",
        encoding="utf-8",
    )
    return ComparisonResult(
        by_technique=by_technique, cells=cells, table_path=table_path, table_text=table
    )


@dataclass
class PerExerciseResult:
    by_exercise: dict[str, MetricsReport]
    cells: list[CellResult]
    table_path: Path | None = None
    table_text: str = ""


def run_per_exercise(config: ExperimentConfig, client=None) -> PerExerciseResult:
    """One certainty-elicitation report per exercise at the comparison shot count."""
    config.validate_exercises()
    client = client or build_client(config)
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    technique = PromptTechnique(kind=TechniqueKind.CERTAINTY, k=config.comparison_k)
    by_exercise: dict[str, MetricsReport] = {}
    cells: list[CellResult] = []
    for exercise_id in config.exercise_ids:
        data = load_exercise_data(config, exercise_id)
        cell = _run_or_load_cell(config, client, data, technique, "features")
        cells.append(cell)
        by_exercise[exercise_id] = cell.report

    table = format_exercise_table(by_exercise)
    table_path = out_dir / "per_exercise.txt"
    table_path.write_text(table + "\n", encoding="utf-8")
    (out_dir / "per_exercise.json").write_text(
        json.dumps({e: r.to_dict() for e, r in by_exercise.items()}, indent=1) + "\n",
        encoding="utf-8",
    )
    return PerExerciseResult(
        by_exercise=by_exercise, cells=cells, table_path=table_path, table_text=table
    )


def run_feedback(
    config: ExperimentConfig,
    cell_results: list[CellResult] | None = None,
    client=None,
) -> Path:
    """Second-step role-play feedback for samples that already carry a verdict.

    Uses the given cells (or the saved per-exercise certainty cells) as the
    step-one source; renders one persona prompt per chosen sample carrying the
    step-one verdict and stores the transcript.
    """
    config.validate_exercises()
    client = client or build_client(config)
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if cell_results is None:
        cell_results = []
        cells_dir = _cells_dir(config)
        if cells_dir.is_dir():
            for path in sorted(cells_dir.glob("*.json")):
                cell_results.append(CellResult.load(path))
    if not cell_results:
        raise StateError("no step-one cell results available for feedback")

    transcript_path = out_dir / "feedback_transcript.jsonl"
    entries = 0
    mentions = 0
    with open(transcript_path, "w", encoding="utf-8") as fh:
        for exercise_id in config.exercise_ids:
            cells = [c for c in cell_results if c.exercise_id == exercise_id]
            if not cells:
                raise StateError(f"no step-one outcomes for exercise {exercise_id}")
            cell = cells[0]
            rows = [r for r in cell.audit if r.predicted is not None]
            if not rows:
                raise StateError(f"no parsed step-one outcomes for exercise {exercise_id}")
            data = load_exercise_data(config, exercise_id)
            by_key = {seq.key: seq for seq in data.sequences("features")}
            for row in rows[: config.feedback_samples]:
                seq = by_key.get(row.sample_key)
                if seq is None:
                    raise StateError(f"sample {row.sample_key} missing from data set")
                bundle = render_feedback_prompt(
                    config.feedback_persona,
                    row.as_outcome(),
                    seq,
                    data.exercise_name,
                    config.serialization,
                )
                record = client.complete(bundle)
                feedback = record.response_text
                mentions_feature = any(
                    name.lower() in feedback.lower() for name in seq.feature_names
                )
                mentions += mentions_feature
                fh.write(
                    json.dumps(
                        {
                            "sample_key": row.sample_key,
                            "persona": config.feedback_persona,
                            "verdict": row.predicted,
                            "prompt": bundle.rendered_text,
                            "feedback": feedback,
                            "mentions_feature": mentions_feature,
                        }
                    )
                    + "\n"
                )
                entries += 1
    # descriptive statistic only: feedback quality has no ground truth to score
    summary = {
        "entries": entries,
        "feature_mention_rate": mentions / entries if entries else 0.0,
        "persona": config.feedback_persona,
    }
    (out_dir / "feedback_summary.json").write_text(json.dumps(summary, indent=1) + "\n")
    logger.info(
        "wrote %d feedback entries to %s (feature mention rate %.2f)",
        entries, transcript_path, summary["feature_mention_rate"],
    )
    return transcript_path
