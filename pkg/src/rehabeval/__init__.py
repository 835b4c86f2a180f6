"""Rehabilitation exercise quality assessment from body-joint sequences.

Pipeline: load per-repetition joint data, compute exercise-specific kinematic
features, render k-shot prompts, complete them against a chat model (or the
deterministic offline oracle), parse the verdicts and score them against the
ground-truth labels.
"""

from .estimators import ExerciseFeatureExtractor, FewShotExerciseClassifier
from .features import FeatureDef, FeatureSequence, FeatureSpec, extract_features
from .gateway import MockOracle, MockOracleClient, ModelEndpointConfig, ResponseCache
from .metrics import MetricsReport, auc_pr, auc_roc, basic_metrics, confusion
from .parsing import AssessmentOutcome, ParseStatus, parse
from .prompting import (
    PromptBundle,
    PromptTechnique,
    SerializationPolicy,
    TechniqueKind,
    render_feedback_prompt,
    render_prompt,
    serialize_features,
)
from .skeleton import (
    DatasetId,
    Label,
    RepetitionAnnotation,
    RepetitionSample,
    Side,
    SkeletonSpec,
    SplitPolicy,
    load_generic,
    load_rehab24,
    load_uiprmd,
    save_generic,
    split_support_and_test,
)

__version__ = "0.1.0"

__all__ = [
    "AssessmentOutcome",
    "DatasetId",
    "ExerciseFeatureExtractor",
    "FeatureDef",
    "FeatureSequence",
    "FeatureSpec",
    "FewShotExerciseClassifier",
    "Label",
    "MetricsReport",
    "MockOracle",
    "MockOracleClient",
    "ModelEndpointConfig",
    "ParseStatus",
    "PromptBundle",
    "PromptTechnique",
    "RepetitionAnnotation",
    "RepetitionSample",
    "ResponseCache",
    "SerializationPolicy",
    "Side",
    "SkeletonSpec",
    "SplitPolicy",
    "TechniqueKind",
    "auc_pr",
    "auc_roc",
    "basic_metrics",
    "confusion",
    "extract_features",
    "load_generic",
    "load_rehab24",
    "load_uiprmd",
    "parse",
    "render_feedback_prompt",
    "render_prompt",
    "save_generic",
    "serialize_features",
    "split_support_and_test",
]
