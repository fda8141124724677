"""labelloop: active-learning text classification with a human feedback loop.

Rank unlabeled text by prediction entropy, collect labels in small batches,
retrain a TF-IDF linear classifier after every batch, and track learning
curves of accuracy and macro precision/recall against label count.
"""

from .classifier import Model, TrainConfig, loss_and_gradient, predict, predict_batch, train
from .corpus import (
    DatasetDescriptor,
    Document,
    LabelSchema,
    builtin_descriptors,
    load_dataset,
    split,
)
from .evaluation import LearningCurve, RoundMetrics, confusion_matrix, metrics_from_confusion
from .featurizer import SparseVector, Vocabulary, fit_vocabulary, tokenize, vectorize
from .loop import (
    Annotation,
    Oracle,
    Protocol,
    SessionConfig,
    SessionState,
    create_session,
    next_batch,
    oracle_label,
    run_benchmark,
    submit_annotations,
)
from .synthetic import synthetic_corpus
from .uncertainty import Prediction, Strategy, entropy, rank_pool, select_batch

__version__ = "0.1.0"

__all__ = [
    "Annotation",
    "DatasetDescriptor",
    "Document",
    "LabelSchema",
    "LearningCurve",
    "Model",
    "Oracle",
    "Prediction",
    "Protocol",
    "RoundMetrics",
    "SessionConfig",
    "SessionState",
    "SparseVector",
    "Strategy",
    "TrainConfig",
    "Vocabulary",
    "builtin_descriptors",
    "confusion_matrix",
    "create_session",
    "entropy",
    "fit_vocabulary",
    "load_dataset",
    "loss_and_gradient",
    "metrics_from_confusion",
    "next_batch",
    "oracle_label",
    "predict",
    "predict_batch",
    "rank_pool",
    "run_benchmark",
    "select_batch",
    "split",
    "submit_annotations",
    "synthetic_corpus",
    "tokenize",
    "train",
    "vectorize",
]
