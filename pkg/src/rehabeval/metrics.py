"""Binary classification metrics over assessment outcomes.

Positive class defaults to the correctly performed movement. Failed parses
are never dropped: they score as predicting the opposite of the truth, and
each report also carries the parse-failure rate. Degenerate 0/0 ratios are
defined as 0 and flagged in the ``undefined`` set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyInputError, UndefinedMetricError
from .parsing import AssessmentOutcome, ParseStatus
from .skeleton.types import Label


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    def __post_init__(self):
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise ValueError("confusion counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class BasicMetrics:
    """Accuracy, precision, recall and F1, with 0/0 conventions flagged."""

    accuracy: float
    precision: float
    recall: float
    f1: float
    undefined: frozenset[str] = frozenset()

    def __iter__(self):
        return iter((self.accuracy, self.precision, self.recall, self.f1))


def confusion(
    outcomes: list[tuple[AssessmentOutcome, Label]],
    positive_label: Label = Label.CORRECT,
) -> ConfusionCounts:
    """Count the confusion matrix; unusable outcomes count against themselves."""
    if not outcomes:
        raise EmptyInputError("no outcomes to score")
    tp = fp = tn = fn = 0
    for outcome, truth in outcomes:
        predicted = outcome.predicted_label
        if outcome.parse_status is ParseStatus.FAILED or predicted is None:
            predicted = truth.opposite
        if truth is positive_label:
            if predicted is positive_label:
                tp += 1
            else:
                fn += 1
        else:
            if predicted is positive_label:
                fp += 1
            else:
                tn += 1
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def basic_metrics(counts: ConfusionCounts) -> BasicMetrics:
    if counts.total == 0:
        raise EmptyInputError("confusion counts are all zero")
    undefined = set()
    accuracy = (counts.tp + counts.tn) / counts.total
    if counts.tp + counts.fp == 0:
        precision = 0.0
        undefined.add("precision")
    else:
        precision = counts.tp / (counts.tp + counts.fp)
    if counts.tp + counts.fn == 0:
        recall = 0.0
        undefined.add("recall")
    else:
        recall = counts.tp / (counts.tp + counts.fn)
    if precision + recall == 0:
        f1 = 0.0
        undefined.add("f1")
    else:
        f1 = 2 * precision * recall / (precision + recall)
    return BasicMetrics(accuracy, precision, recall, f1, frozenset(undefined))


def _split_scores(
    scores: list[tuple[float, Label]], positive_label: Label
) -> tuple[list[float], list[float]]:
    pos = [s for s, lab in scores if lab is positive_label]
    neg = [s for s, lab in scores if lab is not positive_label]
    return pos, neg


def auc_roc(scores: list[tuple[float, Label]], positive_label: Label = Label.CORRECT) -> float:
    """Area under the ROC curve via rank statistics.

    Equals the concordance probability P(score_pos > score_neg) + 0.5 P(tie).
    Ties get midranks, which keeps this identical to trapezoidal integration
    of the ROC curve.
    """
    pos, neg = _split_scores(scores, positive_label)
    if not pos or not neg:
        raise UndefinedMetricError("AUC-ROC needs at least one sample of each class")
    labeled = sorted(
        [(s, 1) for s in pos] + [(s, 0) for s in neg], key=lambda item: item[0]
    )
    rank_sum_pos = 0.0
    i = 0
    n = len(labeled)
    while i < n:
        j = i
        while j < n and labeled[j][0] == labeled[i][0]:
            j += 1
        midrank = (i + 1 + j) / 2  # average of 1-based ranks i+1..j
        rank_sum_pos += midrank * sum(lab for _, lab in labeled[i:j])
        i = j
    n_pos, n_neg = len(pos), len(neg)
    u_statistic = rank_sum_pos - n_pos * (n_pos + 1) / 2
    return u_statistic / (n_pos * n_neg)


def roc_curve(
    scores: list[tuple[float, Label]], positive_label: Label = Label.CORRECT
) -> tuple[list[float], list[float], list[float]]:
    """(fpr, tpr, thresholds) over distinct descending thresholds, ties grouped."""
    pos, neg = _split_scores(scores, positive_label)
    if not pos or not neg:
        raise UndefinedMetricError("ROC curve needs at least one sample of each class")
    by_score = sorted([(s, 1) for s in pos] + [(s, 0) for s in neg], key=lambda t: -t[0])
    fpr, tpr, thresholds = [0.0], [0.0], [float("inf")]
    tp = fp = 0
    i = 0
    n = len(by_score)
    while i < n:
        j = i
        while j < n and by_score[j][0] == by_score[i][0]:
            tp += by_score[j][1]
            fp += 1 - by_score[j][1]
            j += 1
        thresholds.append(by_score[i][0])
        tpr.append(tp / len(pos))
        fpr.append(fp / len(neg))
        i = j
    return fpr, tpr, thresholds


def trapezoid_area(xs: list[float], ys: list[float]) -> float:
    area = 0.0
    for i in range(1, len(xs)):
        area += (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]) / 2
    return area


def auc_pr(scores: list[tuple[float, Label]], positive_label: Label = Label.CORRECT) -> float:
    """Area under the precision-recall step curve, descending thresholds, ties grouped.

    Sums precision times recall increment at every distinct threshold.
    """
    pos, neg = _split_scores(scores, positive_label)
    if not pos:
        raise UndefinedMetricError("AUC-PR needs at least one positive sample")
    by_score = sorted([(s, 1) for s in pos] + [(s, 0) for s in neg], key=lambda t: -t[0])
    area = 0.0
    tp = fp = 0
    prev_recall = 0.0
    i = 0
    n = len(by_score)
    while i < n:
        j = i
        while j < n and by_score[j][0] == by_score[i][0]:
            tp += by_score[j][1]
            fp += 1 - by_score[j][1]
            j += 1
        recall = tp / len(pos)
        precision = tp / (tp + fp)
        area += (recall - prev_recall) * precision
        prev_recall = recall
        i = j
    return area


@dataclass(frozen=True)
class MetricsReport:
    """All metrics for one experiment cell plus the cell's identity."""

    accuracy: float
    precision: float
    recall: float
    f1: float
    parse_failure_rate: float
    n_samples: int
    auc_roc: float | None = None
    auc_pr: float | None = None
    undefined: frozenset[str] = frozenset()
    positive_class: str = Label.CORRECT.value
    exercise_id: str = ""
    technique: str = ""
    k: int = 0
    seed: int = 0
    model_name: str = ""

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "auc_roc": self.auc_roc,
            "auc_pr": self.auc_pr,
            "parse_failure_rate": self.parse_failure_rate,
            "n_samples": self.n_samples,
            "undefined": sorted(self.undefined),
            "positive_class": self.positive_class,
            "exercise_id": self.exercise_id,
            "technique": self.technique,
            "k": self.k,
            "seed": self.seed,
            "model_name": self.model_name,
        }

    @classmethod
    def from_dict(cls, record: dict) -> "MetricsReport":
        return cls(
            accuracy=record["accuracy"],
            precision=record["precision"],
            recall=record["recall"],
            f1=record["f1"],
            parse_failure_rate=record["parse_failure_rate"],
            n_samples=record["n_samples"],
            auc_roc=record.get("auc_roc"),
            auc_pr=record.get("auc_pr"),
            undefined=frozenset(record.get("undefined", ())),
            positive_class=record.get("positive_class", Label.CORRECT.value),
            exercise_id=record.get("exercise_id", ""),
            technique=record.get("technique", ""),
            k=record.get("k", 0),
            seed=record.get("seed", 0),
            model_name=record.get("model_name", ""),
        )


def build_report(
    outcomes: list[tuple[AssessmentOutcome, Label]],
    positive_label: Label = Label.CORRECT,
    with_probabilities: bool = False,
    exercise_id: str = "",
    technique: str = "",
    k: int = 0,
    seed: int = 0,
    model_name: str = "",
) -> MetricsReport:
    """Score one cell's outcomes; AUC fields fill only when probabilities were elicited."""
    counts = confusion(outcomes, positive_label)
    basics = basic_metrics(counts)
    failures = sum(1 for o, _ in outcomes if o.parse_status is ParseStatus.FAILED)
    undefined = set(basics.undefined)

    roc = pr = None
    if with_probabilities:
        scored = [
            (o.probability_correct, truth)
            for o, truth in outcomes
            if o.probability_correct is not None
        ]
        try:
            roc = auc_roc(scored, positive_label)
        except (UndefinedMetricError, EmptyInputError):
            undefined.add("auc_roc")
        try:
            pr = auc_pr(scored, positive_label)
        except (UndefinedMetricError, EmptyInputError):
            undefined.add("auc_pr")

    return MetricsReport(
        accuracy=basics.accuracy,
        precision=basics.precision,
        recall=basics.recall,
        f1=basics.f1,
        auc_roc=roc,
        auc_pr=pr,
        parse_failure_rate=failures / len(outcomes),
        n_samples=len(outcomes),
        undefined=frozenset(undefined),
        positive_class=positive_label.value,
        exercise_id=exercise_id,
        technique=technique,
        k=k,
        seed=seed,
        model_name=model_name,
    )
