"""Estimator facade: sklearn conventions over the assessment pipeline."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import Pipeline

from rehabeval.datasets import (
    SYNTHETIC_SPEC,
    make_synthetic_classification_data,
    synthetic_feature_spec,
)
from rehabeval.errors import ConfigError
from rehabeval.estimators import ExerciseFeatureExtractor, FewShotExerciseClassifier
from rehabeval.gateway.mock import MockOracleClient
from rehabeval.skeleton.types import Label


@pytest.fixture(scope="module")
def synthetic():
    samples, specs, oracle = make_synthetic_classification_data(
        exercise_ids=("syn1",), repetitions_per_exercise=16, seed=3
    )
    return samples["syn1"], specs["syn1"], oracle


def test_extractor_transform(synthetic):
    samples, feature_spec, _ = synthetic
    extractor = ExerciseFeatureExtractor(SYNTHETIC_SPEC, feature_spec)
    sequences = extractor.fit_transform(samples)
    assert len(sequences) == len(samples)
    assert sequences[0].feature_names == feature_spec.feature_names


def test_extractor_validates_refs(synthetic):
    samples, _, _ = synthetic
    from rehabeval.features import FeatureDef, FeatureSpec

    bad_spec = FeatureSpec(
        exercise_id="syn1",
        features=(
            FeatureDef(name="a", primitive="VerticalDisplacement", joint_refs=("missing",)),
            FeatureDef(name="b", primitive="VerticalDisplacement", joint_refs=("tip",)),
            FeatureDef(name="c", primitive="VerticalDisplacement", joint_refs=("base",)),
        ),
    )
    with pytest.raises(ConfigError):
        ExerciseFeatureExtractor(SYNTHETIC_SPEC, bad_spec).fit()


def test_classifier_fit_predict(synthetic):
    samples, feature_spec, oracle = synthetic
    sequences = ExerciseFeatureExtractor(SYNTHETIC_SPEC, feature_spec).fit_transform(samples)
    classifier = FewShotExerciseClassifier(
        client=MockOracleClient(oracle), k=2, seed=5, exercise_name="hinge bend"
    )
    classifier.fit(sequences)
    predicted = classifier.predict(sequences[:6])
    truth = np.asarray([s.label.value for s in sequences[:6]])
    assert np.array_equal(predicted, truth)
    assert list(classifier.classes_) == ["correct", "incorrect"]
    assert classifier.score(sequences[:6], truth) == 1.0


def test_classifier_pipeline_composes(synthetic):
    samples, feature_spec, oracle = synthetic
    pipeline = Pipeline(
        [
            ("features", ExerciseFeatureExtractor(SYNTHETIC_SPEC, feature_spec)),
            ("assess", FewShotExerciseClassifier(client=MockOracleClient(oracle), k=2)),
        ]
    )
    pipeline.fit(samples)
    predicted = pipeline.predict(samples[:4])
    assert set(predicted) <= {"correct", "incorrect"}


def test_predict_proba_probability_technique(synthetic):
    samples, feature_spec, oracle = synthetic
    sequences = ExerciseFeatureExtractor(SYNTHETIC_SPEC, feature_spec).fit_transform(samples)
    classifier = FewShotExerciseClassifier(
        client=MockOracleClient(oracle), technique="probability", k=2
    ).fit(sequences)
    proba = classifier.predict_proba(sequences[:4])
    assert proba.shape == (4, 2)
    assert np.allclose(proba.sum(axis=1), 1.0)
    correct_col = list(classifier.classes_).index("correct")
    for row, seq in zip(proba, sequences[:4]):
        expected = 0.9 if seq.label is Label.CORRECT else 0.1
        assert row[correct_col] == expected


def test_predict_proba_rejected_for_label_technique(synthetic):
    samples, feature_spec, oracle = synthetic
    sequences = ExerciseFeatureExtractor(SYNTHETIC_SPEC, feature_spec).fit_transform(samples)
    classifier = FewShotExerciseClassifier(client=MockOracleClient(oracle), k=2).fit(sequences)
    with pytest.raises(ConfigError):
        classifier.predict_proba(sequences[:2])


def test_get_params_and_clone(synthetic):
    _, _, oracle = synthetic
    client = MockOracleClient(oracle)
    classifier = FewShotExerciseClassifier(client=client, k=4, seed=9, technique="certainty")
    params = classifier.get_params()
    assert params["k"] == 4 and params["technique"] == "certainty"
    cloned = clone(classifier)
    assert cloned.get_params()["seed"] == 9
    assert not hasattr(cloned, "support_")

    extractor = ExerciseFeatureExtractor(SYNTHETIC_SPEC, synthetic_feature_spec("syn1"))
    assert "feature_spec" in extractor.get_params()
    clone(extractor)


def test_y_overrides_sequence_labels(synthetic):
    samples, feature_spec, oracle = synthetic
    sequences = ExerciseFeatureExtractor(SYNTHETIC_SPEC, feature_spec).fit_transform(samples)
    flipped = [s.label.opposite.value for s in sequences]
    classifier = FewShotExerciseClassifier(client=MockOracleClient(oracle), k=2)
    classifier.fit(sequences, flipped)
    support_labels = {s.label for s in classifier.support_}
    assert support_labels == {Label.CORRECT, Label.INCORRECT}
