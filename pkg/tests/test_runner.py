"""Experiment orchestration: configs, grid runs, resumability and the CLI."""

import json
from pathlib import Path

import numpy as np
import pytest

from rehabeval.datasets import (
    SYNTHETIC_SPEC,
    SYNTHETIC_THRESHOLDS,
    make_synthetic_classification_data,
)
from rehabeval.errors import ConfigError, StateError
from rehabeval.features.extract import extract_features
from rehabeval.features.spec import save_feature_spec
from rehabeval.gateway.cache import ResponseCache
from rehabeval.gateway.mock import MockOracle, MockOracleClient, oracle_decide_direct
from rehabeval.gateway.records import prompt_hash
from rehabeval.metrics import build_report
from rehabeval.parsing import AssessmentOutcome, ParseStatus
from rehabeval.prompting import PromptTechnique, TechniqueKind, render_prompt
from rehabeval.runner import (
    CellResult,
    ExperimentConfig,
    build_client,
    cell_seed,
    run_feedback,
    run_per_exercise,
    run_reasoning_comparison,
    run_shot_sweep,
)
from rehabeval.runner.cli import main
from rehabeval.skeleton.interchange import load_generic, save_generic
from rehabeval.skeleton.splits import SplitPolicy, split_support_and_test
from rehabeval.skeleton.types import Label

EXERCISES = ("syn1", "syn2")


def write_experiment(tmp_path, reps=14, k_values=(0, 1, 3), input_variants=("features",), seed=11):
    """Lay out data, feature configs and a config file for a mock experiment."""
    samples, specs, oracle = make_synthetic_classification_data(
        exercise_ids=EXERCISES, repetitions_per_exercise=reps, seed=1
    )
    data_dir = tmp_path / "data"
    data_dir.mkdir(exist_ok=True)
    feature_dir = tmp_path / "feature_configs"
    feature_dir.mkdir(exist_ok=True)
    for exercise_id in EXERCISES:
        save_generic(data_dir / f"{exercise_id}.jsonl", samples[exercise_id], SYNTHETIC_SPEC)
        save_feature_spec(specs[exercise_id], feature_dir / f"{exercise_id}.json")
    record = {
        "dataset_id": "generic",
        "exercise_ids": list(EXERCISES),
        "data_dir": str(data_dir),
        "output_dir": str(tmp_path / "out"),
        "cache_dir": str(tmp_path / "cache"),
        "feature_config_dir": str(feature_dir),
        "k_values": list(k_values),
        "seed": seed,
        "split_policy": "subject_disjoint",
        "input_variants": list(input_variants),
        "endpoint": {"kind": "mock", "thresholds": dict(SYNTHETIC_THRESHOLDS)},
        "threshold": 0.5,
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(record, indent=1))
    return config_path, samples, specs, oracle


class TestConfig:
    def test_round_trip_from_file(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        config = ExperimentConfig.from_file(config_path)
        assert config.exercise_ids == list(EXERCISES)
        assert config.split_policy is SplitPolicy.SUBJECT_DISJOINT
        config.validate_exercises()

    def test_unknown_field_rejected(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        record = json.loads(config_path.read_text())
        record["bogus"] = 1
        config_path.write_text(json.dumps(record))
        with pytest.raises(ConfigError):
            ExperimentConfig.from_file(config_path)

    def test_unknown_exercise_fails_before_running(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        config = ExperimentConfig.from_file(config_path)
        config.exercise_ids = ["zz9"]
        with pytest.raises(ConfigError):
            config.validate_exercises()

    def test_mock_client_built(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        client = build_client(ExperimentConfig.from_file(config_path))
        assert isinstance(client, MockOracleClient)

    def test_empty_k_values_rejected(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        record = json.loads(config_path.read_text())
        record["k_values"] = []
        config_path.write_text(json.dumps(record))
        with pytest.raises(ConfigError):
            ExperimentConfig.from_file(config_path)


class TestShotSweep:
    def test_mock_sweep_is_perfect_and_emits_artifacts(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path, k_values=(0, 1, 3))
        config = ExperimentConfig.from_file(config_path)
        result = run_shot_sweep(config)
        assert set(result.pooled_by_k) == {0, 1, 3}
        for k, report in result.pooled_by_k.items():
            if k >= 1:
                assert report.accuracy == 1.0
        assert result.plot_path.exists() and result.table_path.exists()
        plot_lines = result.plot_path.read_text().splitlines()
        assert plot_lines[0] == "k,input_variant,accuracy_pooled,accuracy_macro"
        assert len(plot_lines) == 1 + 3  # header + one row per k
        assert "reference" in result.table_text

    def test_raw_joint_variant_rows(self, tmp_path):
        config_path, *_ = write_experiment(
            tmp_path, k_values=(1,), input_variants=("features", "raw_joints")
        )
        config = ExperimentConfig.from_file(config_path)
        config.endpoint["thresholds"] = {"Bend A.": 90.0, "tip_y": 0.0}
        result = run_shot_sweep(config)
        rows = result.plot_path.read_text().splitlines()[1:]
        variants = {line.split(",")[1] for line in rows}
        assert variants == {"features", "raw_joints"}

    def test_pipeline_equals_direct_threshold_metrics(self, tmp_path):
        config_path, samples, specs, oracle = write_experiment(tmp_path, k_values=(3,))
        config = ExperimentConfig.from_file(config_path)
        result = run_shot_sweep(config)
        for cell in result.cells:
            exercise_id = cell.exercise_id
            sequences = [
                extract_features(s, SYNTHETIC_SPEC, specs[exercise_id])
                for s in load_generic(config.data_file_for(exercise_id))
            ]
            seed = cell_seed(config.seed, exercise_id, 3)
            _, test = split_support_and_test(sequences, 3, seed, config.split_policy)
            direct_outcomes = [
                (
                    AssessmentOutcome(
                        ParseStatus.PARSED,
                        predicted_label=oracle_decide_direct(seq, oracle, config.serialization),
                    ),
                    seq.label,
                )
                for seq in test
            ]
            direct = build_report(
                direct_outcomes,
                exercise_id=exercise_id,
                technique=cell.technique,
                k=3,
                seed=seed,
                model_name="mock-oracle",
            )
            assert direct.accuracy == cell.report.accuracy
            assert direct.precision == cell.report.precision
            assert direct.recall == cell.report.recall
            assert direct.f1 == cell.report.f1
            assert cell.report.accuracy == 1.0

    def test_skips_unsatisfiable_cells(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path, reps=6, k_values=(0, 5))
        config = ExperimentConfig.from_file(config_path)
        result = run_shot_sweep(config)
        assert result.skipped  # k=5 cannot be satisfied with 3 per class
        assert 0 in result.pooled_by_k and 5 not in result.pooled_by_k


class TestResumability:
    def test_completed_cells_are_skipped(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path, k_values=(0, 1))
        config = ExperimentConfig.from_file(config_path)
        first_client = build_client(config)
        run_shot_sweep(config, client=first_client)
        assert first_client.completions_performed > 0

        full = ExperimentConfig.from_file(config_path)
        full.k_values = [0, 1, 3]
        second_client = build_client(full)
        result = run_shot_sweep(full, client=second_client)
        k3_test_sizes = sum(
            len(c.audit) for c in result.cells if c.k == 3
        )
        assert second_client.completions_performed == k3_test_sizes
        assert second_client.cache.stats.hits == 0  # old cells never re-rendered

    def test_killed_mid_cell_restarts_from_cache(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path, k_values=(1,))
        config = ExperimentConfig.from_file(config_path)

        class DyingClient:
            def __init__(self, inner, fail_after):
                self.inner = inner
                self.fail_after = fail_after
                self.model_name = inner.model_name

            def complete(self, bundle):
                if self.inner.completions_performed >= self.fail_after:
                    raise RuntimeError("simulated kill")
                return self.inner.complete(bundle)

        dying = DyingClient(build_client(config), fail_after=5)
        with pytest.raises(RuntimeError):
            run_shot_sweep(config, client=dying)
        assert dying.inner.completions_performed == 5

        fresh = ExperimentConfig.from_file(config_path)
        resumed_client = build_client(fresh)
        result = run_shot_sweep(fresh, client=resumed_client)
        total = sum(len(c.audit) for c in result.cells)
        assert resumed_client.completions_performed == total - 5
        assert resumed_client.cache.stats.hits == 5


class TestComparison:
    def test_identical_test_sets_across_techniques(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        config = ExperimentConfig.from_file(config_path)
        result = run_reasoning_comparison(config)
        assert set(result.by_technique) == {
            "classification", "chain_of_thought", "certainty", "probability",
            "chain_of_thought_certainty",
        }
        for exercise_id in EXERCISES:
            keys = {
                tuple(row.sample_key for row in cell.audit)
                for cell in result.cells
                if cell.exercise_id == exercise_id
            }
            assert len(keys) == 1

    def test_only_probability_rows_have_auc(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        config = ExperimentConfig.from_file(config_path)
        result = run_reasoning_comparison(config)
        for technique, report in result.by_technique.items():
            if technique == "probability":
                assert report.auc_roc is not None and report.auc_pr is not None
            else:
                assert report.auc_roc is None and report.auc_pr is None
        table_rows = [
            line for line in result.table_text.splitlines() if line.startswith("Certainty")
        ]
        assert table_rows and "-" in table_rows[0]

    def test_mock_mode_identical_labels_across_techniques(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        config = ExperimentConfig.from_file(config_path)
        result = run_reasoning_comparison(config)
        metrics = {
            (r.accuracy, r.precision, r.recall, r.f1) for r in result.by_technique.values()
        }
        assert len(metrics) == 1  # the oracle ignores the technique


class TestPerExercise:
    def test_one_report_per_exercise(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        config = ExperimentConfig.from_file(config_path)
        result = run_per_exercise(config)
        assert list(result.by_exercise) == list(EXERCISES)
        for report in result.by_exercise.values():
            assert report.technique == "certainty" and report.k == 3
        assert "reference" in result.table_text


class TestFeedback:
    def test_transcript_entries(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        config = ExperimentConfig.from_file(config_path)
        per_exercise = run_per_exercise(config)
        transcript = run_feedback(config, per_exercise.cells)
        lines = transcript.read_text().splitlines()
        assert len(lines) == config.feedback_samples * len(EXERCISES)
        for line in lines:
            entry = json.loads(line)
            assert entry["persona"] == "physiotherapist"
            assert entry["verdict"] in ("correct", "incorrect")
            assert entry["feedback"]
            assert entry["verdict"] in entry["prompt"]

    def test_byte_stable_in_mock_mode(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        config = ExperimentConfig.from_file(config_path)
        cells = run_per_exercise(config).cells
        first = run_feedback(config, cells).read_text()
        second = run_feedback(config, cells).read_text()
        assert first == second

    def test_missing_step_one_raises(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        config = ExperimentConfig.from_file(config_path)
        with pytest.raises(StateError):
            run_feedback(config, [])

    def test_summary_reports_feature_mention_rate(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path)
        config = ExperimentConfig.from_file(config_path)
        cells = run_per_exercise(config).cells
        run_feedback(config, cells)
        summary = json.loads((Path(config.output_dir) / "feedback_summary.json").read_text())
        assert summary["entries"] == config.feedback_samples * len(EXERCISES)
        assert 0.0 <= summary["feature_mention_rate"] <= 1.0


class TestConcurrency:
    def test_in_flight_results_match_sequential(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path, k_values=(2,))
        sequential_config = ExperimentConfig.from_file(config_path)
        sequential_config.in_flight = 1
        sequential_config.output_dir = str(tmp_path / "out_seq")
        sequential_config.cache_dir = str(tmp_path / "cache_seq")
        sequential = run_shot_sweep(sequential_config)

        parallel_config = ExperimentConfig.from_file(config_path)
        parallel_config.in_flight = 4
        parallel_config.output_dir = str(tmp_path / "out_par")
        parallel_config.cache_dir = str(tmp_path / "cache_par")
        client = build_client(parallel_config)
        parallel = run_shot_sweep(parallel_config, client=client)

        assert parallel.pooled_by_k[2] == sequential.pooled_by_k[2]
        for cell_a, cell_b in zip(sequential.cells, parallel.cells):
            assert cell_a.audit == cell_b.audit
        assert client.completions_performed == sum(len(c.audit) for c in parallel.cells)


class TestAuditReconstruction:
    def test_prompt_rebuilt_from_audit(self, tmp_path):
        config_path, samples, specs, _ = write_experiment(tmp_path, k_values=(2,))
        config = ExperimentConfig.from_file(config_path)
        result = run_shot_sweep(config)
        cell = result.cells[0]
        sequences = [
            extract_features(s, SYNTHETIC_SPEC, specs[cell.exercise_id])
            for s in load_generic(config.data_file_for(cell.exercise_id))
        ]
        by_key = {seq.key: seq for seq in sequences}
        support = [by_key[key] for key, _ in cell.support_keys]
        technique = PromptTechnique(kind=TechniqueKind.CLASSIFICATION, k=cell.k)
        for row in cell.audit:
            bundle = render_prompt(
                technique, support, by_key[row.sample_key],
                specs[cell.exercise_id].exercise_name, "motion capture",
                config.serialization,
            )
            assert prompt_hash(bundle.rendered_text, "mock-oracle", 0.0) == row.prompt_hash

    def test_cell_result_round_trips(self, tmp_path):
        config_path, *_ = write_experiment(tmp_path, k_values=(1,))
        config = ExperimentConfig.from_file(config_path)
        result = run_shot_sweep(config)
        cell = result.cells[0]
        path = Path(config.output_dir) / "cells" / f"{cell.cell_name}.json"
        loaded = CellResult.load(path)
        assert loaded.report == cell.report
        assert loaded.audit == cell.audit


class TestCli:
    def test_missing_config_is_exit_2(self, capsys):
        assert main(["sweep"]) == 2
        assert "error" in capsys.readouterr().err

    def test_bad_config_is_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{}")
        assert main(["sweep", "--config", str(bad)]) == 2

    def test_mock_sweep_runs(self, tmp_path, capsys):
        config_path, *_ = write_experiment(tmp_path, k_values=(0, 1))
        assert main(["sweep", "--config", str(config_path), "--mock"]) == 0
        out = capsys.readouterr().out
        assert "0-shot" in out and "1-shot" in out and "reference" in out

    def test_compare_and_report(self, tmp_path, capsys):
        config_path, *_ = write_experiment(tmp_path)
        assert main(["compare", "--config", str(config_path)]) == 0
        assert main(["per-exercise", "--config", str(config_path)]) == 0
        assert main(["feedback", "--config", str(config_path), "--persona", "coach"]) == 0
        assert main(["report", "--config", str(config_path)]) == 0
        out = capsys.readouterr().out
        assert "completed cells" in out

    def test_transport_failure_is_exit_3(self, tmp_path, monkeypatch, capsys):
        config_path, *_ = write_experiment(tmp_path, k_values=(0,))
        record = json.loads(config_path.read_text())
        record["endpoint"] = {
            "kind": "http",
            "base_url": "http://unreachable.invalid/v1",
            "model_name": "nope",
            "max_retries": 1,
        }
        config_path.write_text(json.dumps(record))

        from rehabeval.gateway.client import TransportFailure

        def dead_transport(payload, config):
            raise TransportFailure("no route")

        monkeypatch.setattr("rehabeval.gateway.client.http_transport", dead_transport)
        monkeypatch.setattr("rehabeval.gateway.client.BACKOFF_BASE_S", 0.0)
        assert main(["sweep", "--config", str(config_path)]) == 3

    def test_ingest_uiprmd(self, tmp_path, rng, capsys):
        from rehabeval.skeleton.specs import UIPRMD_SPEC

        data_root = tmp_path / "raw"
        (data_root / "positions").mkdir(parents=True)
        for episode in (1, 2):
            frames = rng.normal(size=(6, UIPRMD_SPEC.frame_width))
            lines = "\n".join(",".join(f"{v:.5f}" for v in row) for row in frames)
            (data_root / "positions" / f"m01_s01_e{episode:02d}_positions.txt").write_text(lines)
        out = tmp_path / "m01.jsonl"
        code = main([
            "ingest", "--dataset", "uiprmd", "--root", str(data_root),
            "--exercise", "m01", "--out", str(out),
        ])
        assert code == 0
        assert len(load_generic(out)) == 2

    def test_features_command(self, tmp_path, capsys):
        config_path, samples, specs, _ = write_experiment(tmp_path)
        data_file = Path(json.loads(config_path.read_text())["data_dir"]) / "syn1.jsonl"
        out = tmp_path / "features.jsonl"
        code = main([
            "features", "--data", str(data_file),
            "--feature-config", str(tmp_path / "feature_configs" / "syn1.json"),
            "--out", str(out),
        ])
        assert code == 0
        first = json.loads(out.read_text().splitlines()[0])
        assert first["feature_names"] == ["Bend A.", "Lean A.", "Wing Span"]
