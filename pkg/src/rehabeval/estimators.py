"""Scikit-learn style estimators wrapping the assessment pipeline.

``ExerciseFeatureExtractor`` is a transformer from repetition samples to
feature sequences; ``FewShotExerciseClassifier`` holds a labeled support set
(fit) and classifies test sequences by prompting a completion client
(predict). Both play with sklearn pipelines, cloning and get_params.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin

from .errors import ConfigError
from .features.extract import FeatureSequence, extract_features
from .features.spec import FeatureSpec
from .parsing import AssessmentOutcome, parse
from .prompting.policy import SerializationPolicy
from .prompting.render import render_prompt
from .prompting.techniques import PromptTechnique, TechniqueKind
from .skeleton.splits import SplitPolicy, split_support_and_test
from .skeleton.types import Label, RepetitionSample, SkeletonSpec
from .validation import check_feature_sequences


class ExerciseFeatureExtractor(TransformerMixin, BaseEstimator):
    """Transform repetition samples into exercise-specific feature sequences."""

    def __init__(self, skeleton_spec: SkeletonSpec = None, feature_spec: FeatureSpec = None):
        self.skeleton_spec = skeleton_spec
        self.feature_spec = feature_spec

    def fit(self, X=None, y=None):
        """Validate that every configured joint ref can resolve; no state is learned."""
        if self.skeleton_spec is None or self.feature_spec is None:
            raise ConfigError("skeleton_spec and feature_spec are both required")
        known = set(self.skeleton_spec.joint_names)
        for feat in self.feature_spec.features:
            for ref in feat.all_joint_refs:
                if ref.startswith(("ACTIVE:", "PASSIVE:")):
                    stem = ref.split(":", 1)[1]
                    candidates = {f"left_{stem}", f"right_{stem}"}
                    if not candidates <= known:
                        raise ConfigError(f"placeholder ref {ref!r} has no left/right joints")
                elif ref not in known:
                    raise ConfigError(f"joint ref {ref!r} not in skeleton")
        self._fitted = True
        return self

    def transform(self, X) -> list[FeatureSequence]:
        if not getattr(self, "_fitted", False):
            self.fit()
        return [extract_features(s, self.skeleton_spec, self.feature_spec) for s in X]


class FewShotExerciseClassifier(ClassifierMixin, BaseEstimator):
    """Movement-quality classifier backed by k-shot prompting of a completion client.

    ``fit`` draws a deterministic support set (k per class, seeded) from the
    labeled sequences it is given; ``predict`` renders one prompt per test
    sequence, completes it through ``client`` and parses the verdict. With the
    probability technique, ``predict_proba`` exposes the elicited scores.
    """

    def __init__(
        self,
        client=None,
        technique: str = TechniqueKind.CLASSIFICATION.value,
        k: int = 3,
        seed: int = 0,
        exercise_name: str = "exercise",
        sensor_name: str = "motion capture",
        serialization: SerializationPolicy = None,
        threshold: float = 0.5,
    ):
        self.client = client
        self.technique = technique
        self.k = k
        self.seed = seed
        self.exercise_name = exercise_name
        self.sensor_name = sensor_name
        self.serialization = serialization
        self.threshold = threshold

    def _technique(self) -> PromptTechnique:
        return PromptTechnique(kind=TechniqueKind(self.technique), k=self.k)

    def fit(self, X, y=None):
        """Select the support set from labeled feature sequences.

        ``y`` may override the labels carried on the sequences ("correct" /
        "incorrect" strings or Label values).
        """
        if self.client is None:
            raise ConfigError("a completion client is required")
        X = check_feature_sequences(X)
        if y is not None:
            labels = [lab if isinstance(lab, Label) else Label.from_string(str(lab)) for lab in y]
            if len(labels) != len(X):
                raise ConfigError("y length must match X")
            X = [
                FeatureSequence(
                    exercise_id=s.exercise_id,
                    subject_id=s.subject_id,
                    repetition_index=s.repetition_index,
                    label=lab,
                    feature_names=s.feature_names,
                    values=s.values,
                    units=s.units,
                )
                for s, lab in zip(X, labels)
            ]
        support, _ = split_support_and_test(X, self.k, self.seed, SplitPolicy.ANY)
        self.support_ = support
        self.classes_ = np.array(sorted(lab.value for lab in Label))
        return self

    def assess(self, X) -> list[AssessmentOutcome]:
        """Full parsed outcomes (label, scores, reasoning, parse status) per sequence."""
        if not hasattr(self, "support_"):
            raise ConfigError("classifier is not fitted")
        technique = self._technique()
        policy = self.serialization or SerializationPolicy()
        outcomes = []
        for seq in X:
            bundle = render_prompt(
                technique, self.support_, seq, self.exercise_name, self.sensor_name, policy
            )
            record = self.client.complete(bundle)
            outcomes.append(
                parse(record.response_text, bundle.expected_output_format, self.threshold)
            )
        return outcomes

    def predict(self, X) -> np.ndarray:
        """Predicted labels; unparseable responses fall back to "incorrect"."""
        labels = []
        for outcome in self.assess(X):
            label = outcome.predicted_label or Label.INCORRECT
            labels.append(label.value)
        return np.asarray(labels)

    def predict_proba(self, X) -> np.ndarray:
        """Class probabilities from probability elicitation (columns follow classes_)."""
        if TechniqueKind(self.technique) is not TechniqueKind.PROBABILITY:
            raise ConfigError("predict_proba needs the probability technique")
        rows = []
        for outcome in self.assess(X):
            p = outcome.probability_correct if outcome.probability_correct is not None else 0.5
            rows.append([p if c == Label.CORRECT.value else 1.0 - p for c in self.classes_])
        return np.asarray(rows)
