"""Text tables and plot data, with published reference values for comparison.

The reference numbers reproduce the originally reported GPT-4o results for
the two datasets. A proprietary model without seed control produced them, so
they are printed next to live results for orientation and never asserted.
"""

from __future__ import annotations

import csv
from pathlib import Path

from ..metrics import MetricsReport

REFERENCE_MODEL = "GPT-4o (published reference)"

# shot sweep: k -> (accuracy, precision, recall, f1)
REFERENCE_SHOT = {
    "uiprmd": {
        0: (0.57, 0.55, 0.75, 0.64),
        1: (0.59, 0.57, 0.72, 0.63),
        2: (0.66, 0.62, 0.84, 0.71),
        3: (0.68, 0.74, 0.79, 0.76),
        4: (0.42, 0.43, 0.50, 0.46),
        5: (0.63, 0.64, 0.60, 0.62),
    },
    "rehab24_6": {
        0: (0.53, 0.54, 0.73, 0.62),
        1: (0.58, 0.58, 0.77, 0.66),
        2: (0.61, 0.59, 0.81, 0.68),
        3: (0.63, 0.60, 0.85, 0.70),
        4: (0.57, 0.68, 0.72, 0.65),
        5: (0.56, 0.62, 0.61, 0.60),
    },
}

# technique -> (accuracy, precision, recall, f1, auc_roc, auc_pr)
REFERENCE_TECHNIQUES = {
    "uiprmd": {
        "classification": (0.68, 0.74, 0.79, 0.76, None, None),
        "chain_of_thought": (0.72, 0.75, 0.67, 0.71, None, None),
        "certainty": (0.76, 0.72, 0.87, 0.79, None, None),
        "probability": (0.68, 0.65, 0.79, 0.71, 0.70, 0.68),
        "chain_of_thought_certainty": (0.64, 0.59, 0.90, 0.72, None, None),
    },
    "rehab24_6": {
        "classification": (0.63, 0.60, 0.85, 0.70, None, None),
        "chain_of_thought": (0.70, 0.71, 0.67, 0.69, None, None),
        "certainty": (0.70, 0.67, 0.80, 0.73, None, None),
        "probability": (0.67, 0.63, 0.80, 0.71, 0.72, 0.68),
        "chain_of_thought_certainty": (0.67, 0.63, 0.80, 0.71, None, None),
    },
}

# exercise -> (accuracy, precision, recall, f1) at 3-shot certainty elicitation
REFERENCE_PER_EXERCISE = {
    "ex1": (0.67, 0.71, 0.75, 0.73),
    "ex5": (0.74, 0.69, 0.90, 0.78),
    "ex6": (0.75, 0.78, 0.70, 0.74),
    "m07": (0.76, 0.76, 0.84, 0.80),
    "m03": (0.67, 0.64, 0.76, 0.70),
    "m01": (0.76, 0.69, 0.95, 0.80),
}

TECHNIQUE_DISPLAY = {
    "classification": "{k}-shot",
    "chain_of_thought": "Chain-of-Thought",
    "certainty": "Certainty",
    "probability": "Probability",
    "chain_of_thought_certainty": "Chain-of-Thought + Certainty",
}

_REFERENCE_FOOTER = (
    f"reference columns: {REFERENCE_MODEL}; shown for comparison only, never asserted"
)


def _fmt(value, width: int = 6) -> str:
    if value is None:
        return "-".rjust(width)
    return f"{value:.2f}".rjust(width)


def technique_display(technique: str, k: int) -> str:
    return TECHNIQUE_DISPLAY.get(technique, technique).format(k=k)


def format_shot_table(
    dataset_id: str,
    pooled_by_k: dict[int, MetricsReport],
    macro_accuracy_by_k: dict[int, float],
) -> str:
    """Shot-sweep table: pooled metrics per k with reference values alongside."""
    reference = REFERENCE_SHOT.get(dataset_id, {})
    lines = [
        f"shot sweep on {dataset_id} (pooled over exercises; macro = mean of per-exercise accuracy)",
        f"{'':10s} {'Acc':>6s} {'Prec':>6s} {'Rec':>6s} {'F1':>6s} {'MacAcc':>7s}"
        f" | {'refAcc':>6s} {'refP':>6s} {'refR':>6s} {'refF1':>6s}",
    ]
    for k in sorted(pooled_by_k):
        r = pooled_by_k[k]
        ref = reference.get(k, (None, None, None, None))
        lines.append(
            f"{f'{k}-shot':10s} {_fmt(r.accuracy)} {_fmt(r.precision)} {_fmt(r.recall)}"
            f" {_fmt(r.f1)} {_fmt(macro_accuracy_by_k.get(k), 7)}"
            f" | {_fmt(ref[0])} {_fmt(ref[1])} {_fmt(ref[2])} {_fmt(ref[3])}"
        )
    lines.append(_REFERENCE_FOOTER)
    return "\n".join(lines)


def format_technique_table(dataset_id: str, by_technique: dict[str, MetricsReport]) -> str:
    """Technique-comparison table; AUC columns fill only for probability rows."""
    reference = REFERENCE_TECHNIQUES.get(dataset_id, {})
    header = (
        f"{'Setting':30s} {'Acc':>6s} {'Prec':>6s} {'Rec':>6s} {'F1':>6s}"
        f" {'AUCROC':>7s} {'AUCPR':>6s}"
    )
    lines = [f"prompting techniques on {dataset_id}", header]
    for technique, r in by_technique.items():
        name = technique_display(technique, r.k)
        lines.append(
            f"{name:30s} {_fmt(r.accuracy)} {_fmt(r.precision)} {_fmt(r.recall)}"
            f" {_fmt(r.f1)} {_fmt(r.auc_roc, 7)} {_fmt(r.auc_pr)}"
        )
    for technique, values in reference.items():
        name = "ref: " + technique_display(technique, 3)
        lines.append(
            f"{name:30s} {_fmt(values[0])} {_fmt(values[1])} {_fmt(values[2])}"
            f" {_fmt(values[3])} {_fmt(values[4], 7)} {_fmt(values[5])}"
        )
    lines.append(_REFERENCE_FOOTER)
    return "\n".join(lines)


def format_exercise_table(by_exercise: dict[str, MetricsReport]) -> str:
    """Per-exercise table: metrics as rows, exercises as columns."""
    exercises = list(by_exercise)
    width = 8
    lines = ["per-exercise results (3-shot certainty elicitation)"]
    lines.append("Metric".ljust(10) + "".join(e.rjust(width) for e in exercises))
    rows = [
        ("Accuracy", [by_exercise[e].accuracy for e in exercises]),
        ("Precision", [by_exercise[e].precision for e in exercises]),
        ("Recall", [by_exercise[e].recall for e in exercises]),
        ("F1", [by_exercise[e].f1 for e in exercises]),
    ]
    for name, values in rows:
        lines.append(name.ljust(10) + "".join(_fmt(v, width) for v in values))
    referenced = [e for e in exercises if e in REFERENCE_PER_EXERCISE]
    if referenced:
        lines.append("reference (" + REFERENCE_MODEL + "):")
        for row_index, name in enumerate(("Accuracy", "Precision", "Recall", "F1")):
            lines.append(
                ("ref " + name).ljust(10)
                + "".join(
                    _fmt(REFERENCE_PER_EXERCISE[e][row_index], width) for e in referenced
                )
            )
    lines.append(_REFERENCE_FOOTER)
    return "\n".join(lines)


def write_plot_data(path, rows: list[dict]) -> Path:
    """Delimited plot file: one row per (k, input variant) with both aggregates."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fields = ["k", "input_variant", "accuracy_pooled", "accuracy_macro"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow({f: row[f] for f in fields})
    return path
