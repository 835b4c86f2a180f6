"""Command-line entry point: ingest data, extract features, run the experiment grid."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..errors import (
    CapacityError,
    ConfigError,
    EndpointError,
    NotFoundError,
    ParseError,
    RangeError,
    SchemaError,
    StateError,
    TransportError,
)
from ..features.extract import extract_features
from ..features.spec import load_feature_spec
from ..skeleton.interchange import load_generic, read_header, save_generic, spec_from_header
from ..skeleton.rehab24 import load_rehab24, read_annotation_table
from ..skeleton.specs import spec_for_dataset
from ..skeleton.uiprmd import load_uiprmd
from .cells import CellResult
from .config import ExperimentConfig, force_mock
from .experiments import (
    run_feedback,
    run_per_exercise,
    run_reasoning_comparison,
    run_shot_sweep,
)

logger = logging.getLogger(__name__)

CONFIG_ERRORS = (ConfigError, SchemaError, NotFoundError, ParseError, RangeError, CapacityError, StateError)
TRANSPORT_ERRORS = (TransportError, EndpointError)


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="experiment config file (JSON)")
    parser.add_argument("--mock", action="store_true", help="force the offline oracle endpoint")
    parser.add_argument("--cache-dir", help="override the response cache directory")
    parser.add_argument("--seed", type=int, help="override the global seed")
    parser.add_argument("--out", help="override the output directory")


def _load_config(args) -> ExperimentConfig:
    if not args.config:
        raise ConfigError("this command needs --config")
    config = ExperimentConfig.from_file(args.config)
    if args.seed is not None:
        config.seed = args.seed
    if args.out:
        config.output_dir = args.out
    if args.cache_dir:
        config.cache_dir = args.cache_dir
    if args.mock:
        force_mock(config)
    return config


def _cmd_ingest(args) -> int:
    spec = spec_for_dataset(args.dataset)
    if args.dataset == "uiprmd":
        samples = load_uiprmd(args.root, args.exercise, spec)
    else:
        if not args.annotations:
            raise ConfigError("rehab24_6 ingest needs --annotations (segmentation CSV)")
        table = read_annotation_table(args.annotations)
        samples = load_rehab24(args.root, args.exercise, spec, table)
    save_generic(args.out, samples, spec, exercise_id=args.exercise)
    print(f"ingested {len(samples)} repetitions of {args.exercise} -> {args.out}")
    return 0


def _cmd_features(args) -> int:
    header = read_header(args.data)
    skeleton_spec = spec_from_header(header)
    samples = load_generic(args.data)
    if args.feature_config:
        feature_spec = load_feature_spec(args.feature_config)
    else:
        from ..features.spec import find_feature_spec

        feature_spec = find_feature_spec(header["exercise_id"], header["dataset_id"])
    with open(args.out, "w", encoding="utf-8") as fh:
        for sample in samples:
            seq = extract_features(sample, skeleton_spec, feature_spec)
            fh.write(
                json.dumps(
                    {
                        "sample_key": seq.key,
                        "label": seq.label.value,
                        "feature_names": list(seq.feature_names),
                        "units": list(seq.units),
                        "values": seq.values.tolist(),
                    }
                )
                + "\n"
            )
    print(
        f"extracted {feature_spec.num_features} features "
        f"({', '.join(feature_spec.feature_names)}) for {len(samples)} repetitions -> {args.out}"
    )
    return 0


def _cmd_sweep(args) -> int:
    result = run_shot_sweep(_load_config(args))
    print(result.table_text)
    for note in result.skipped:
        print(f"skipped: {note}")
    print(f"plot data: {result.plot_path}")
    return 0


def _cmd_compare(args) -> int:
    result = run_reasoning_comparison(_load_config(args))
    print(result.table_text)
    return 0


def _cmd_per_exercise(args) -> int:
    result = run_per_exercise(_load_config(args))
    print(result.table_text)
    return 0


def _cmd_feedback(args) -> int:
    config = _load_config(args)
    if args.persona:
        config.feedback_persona = args.persona
    path = run_feedback(config)
    print(f"feedback transcript: {path}")
    return 0


def _cmd_report(args) -> int:
    config = _load_config(args)
    cells_dir = Path(config.output_dir) / "cells"
    if not cells_dir.is_dir():
        raise NotFoundError(f"no cells directory under {config.output_dir}")
    cells = [CellResult.load(p) for p in sorted(cells_dir.glob("*.json"))]
    print(f"{len(cells)} completed cells under {cells_dir}")
    for cell in cells:
        r = cell.report
        print(
            f"  {cell.cell_name:48s} acc={r.accuracy:.2f} prec={r.precision:.2f} "
            f"rec={r.recall:.2f} f1={r.f1:.2f} n={r.n_samples} "
            f"parse_fail={r.parse_failure_rate:.2f}"
        )
    for name in ("shot_sweep.txt", "technique_comparison.txt", "per_exercise.txt"):
        path = Path(config.output_dir) / name
        if path.exists():
            print()
            print(path.read_text(encoding="utf-8").rstrip())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rehabeval",
        description="Assess rehabilitation exercise quality from joint sequences with prompted language models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="convert a raw dataset tree to the interchange format")
    p.add_argument("--dataset", required=True, choices=["uiprmd", "rehab24_6"])
    p.add_argument("--root", required=True, help="dataset directory")
    p.add_argument("--exercise", required=True, help="exercise id (m01..m10 / ex1..ex6)")
    p.add_argument("--annotations", help="segmentation CSV (rehab24_6 only)")
    p.add_argument("--out", required=True, help="output interchange file")
    p.set_defaults(handler=_cmd_ingest)

    p = sub.add_parser("features", help="extract feature sequences from an interchange file")
    p.add_argument("--data", required=True, help="interchange file")
    p.add_argument("--feature-config", help="explicit feature config file")
    p.add_argument("--out", required=True, help="output JSONL of feature sequences")
    p.set_defaults(handler=_cmd_features)

    for name, handler, description in (
        ("sweep", _cmd_sweep, "shot sweep with the classification prompt"),
        ("compare", _cmd_compare, "compare assessment techniques on identical splits"),
        ("per-exercise", _cmd_per_exercise, "per-exercise certainty-elicitation reports"),
        ("feedback", _cmd_feedback, "generate role-play feedback from step-one verdicts"),
        ("report", _cmd_report, "re-render reports from completed cells"),
    ):
        p = sub.add_parser(name, help=description)
        _add_common(p)
        if name == "feedback":
            p.add_argument("--persona", help="override the feedback persona")
        p.set_defaults(handler=handler)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TRANSPORT_ERRORS as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return 3


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
