"""Multinomial logistic regression over sparse TF-IDF features.

Training is full-batch gradient descent from zero initialization on
L2-regularized mean cross-entropy (bias unregularized), which makes it
deterministic and invariant to example order. Models retrain from scratch
each labeling round; labeled sets stay small so this costs milliseconds.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .corpus import LabelSchema
from .errors import DimMismatch, EmptyBatch, UnknownLabel
from .featurizer import SparseVector, Vocabulary, pack_csr


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.5
    epochs: int = 200
    l2_lambda: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.l2_lambda < 0:
            raise ValueError(f"l2_lambda must be >= 0, got {self.l2_lambda}")

    def to_json(self) -> dict:
        return {
            "learning_rate": self.learning_rate,
            "epochs": self.epochs,
            "l2_lambda": self.l2_lambda,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, payload: dict) -> "TrainConfig":
        return cls(
            learning_rate=float(payload["learning_rate"]),
            epochs=int(payload["epochs"]),
            l2_lambda=float(payload["l2_lambda"]),
            seed=int(payload["seed"]),
        )


def schema_digest(schema: LabelSchema) -> str:
    return hashlib.sha256(json.dumps(list(schema.labels)).encode("utf-8")).hexdigest()


def vocab_digest(vocab: Vocabulary) -> str:
    return hashlib.sha256(json.dumps(vocab.to_json(), sort_keys=True).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Model:
    weights: np.ndarray  # (C, V)
    bias: np.ndarray     # (C,)
    schema_hash: str
    vocab_hash: str
    train_config: TrainConfig = field(default_factory=TrainConfig)

    @property
    def n_classes(self) -> int:
        return self.weights.shape[0]

    @property
    def n_features(self) -> int:
        return self.weights.shape[1]

    def to_json(self) -> dict:
        return {
            "v": 1,
            "schema_hash": self.schema_hash,
            "vocab_hash": self.vocab_hash,
            "train_config": self.train_config.to_json(),
            "weights": [list(row) for row in self.weights],
            "bias": list(self.bias),
        }

    @classmethod
    def from_json(cls, payload: dict) -> "Model":
        return cls(
            weights=np.array(payload["weights"], dtype=np.float64),
            bias=np.array(payload["bias"], dtype=np.float64),
            schema_hash=payload["schema_hash"],
            vocab_hash=payload["vocab_hash"],
            train_config=TrainConfig.from_json(payload["train_config"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Model":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def zero_model(schema: LabelSchema, vocab: Vocabulary, config: TrainConfig | None = None) -> Model:
    """All-zero weights: predicts the uniform distribution for every input."""
    return Model(
        weights=np.zeros((schema.n_labels, vocab.size)),
        bias=np.zeros(schema.n_labels),
        schema_hash=schema_digest(schema),
        vocab_hash=vocab_digest(vocab),
        train_config=config or TrainConfig(),
    )


def _check_examples(examples, n_classes: int, n_features: int) -> None:
    for vec, label in examples:
        if vec.dim != n_features:
            raise DimMismatch(n_features, vec.dim)
        if not (0 <= label < n_classes):
            raise UnknownLabel(label)


def _canonical_order(examples):
    """Fix the accumulation order so float rounding cannot depend on how the
    caller happened to order the batch; keeps training permutation-invariant
    down to the bit level."""
    return sorted(
        examples,
        key=lambda ex: (ex[1], ex[0].indices.tobytes(), ex[0].values.tobytes()),
    )


def train(
    examples: list[tuple[SparseVector, int]],
    schema: LabelSchema,
    config: TrainConfig,
    vocab: Vocabulary,
) -> Model:
    """Full-batch gradient descent from zero init; bit-identical on reruns.

    An empty example list returns the zero model.
    """
    base = zero_model(schema, vocab, config)
    if not examples:
        return base
    _check_examples(examples, schema.n_labels, vocab.size)
    examples = _canonical_order(examples)
    indptr, indices, data = pack_csr([vec for vec, _ in examples])
    labels = np.array([label for _, label in examples], dtype=np.int64)
    weights, bias = kernels.train_from_zero(
        indptr,
        indices,
        data,
        labels,
        schema.n_labels,
        vocab.size,
        config.learning_rate,
        config.epochs,
        config.l2_lambda,
    )
    return Model(
        weights=weights,
        bias=bias,
        schema_hash=base.schema_hash,
        vocab_hash=base.vocab_hash,
        train_config=config,
    )


def predict(model: Model, vec: SparseVector) -> np.ndarray:
    """Class probabilities softmax(Wv + b); sums to 1 within 1e-9."""
    if vec.dim != model.n_features:
        raise DimMismatch(model.n_features, vec.dim)
    logits = model.bias.copy()
    if vec.nnz:
        logits += model.weights[:, vec.indices] @ vec.values
    shifted = logits - logits.max()
    probs = np.exp(shifted)
    return probs / probs.sum()


def predict_batch(model: Model, vectors: list[SparseVector]) -> np.ndarray:
    """Probability matrix (n, C) for a list of vectors, via the active kernel."""
    if not vectors:
        return np.zeros((0, model.n_classes))
    for vec in vectors:
        if vec.dim != model.n_features:
            raise DimMismatch(model.n_features, vec.dim)
    indptr, indices, data = pack_csr(vectors)
    return kernels.softmax_rows(
        kernels.logits(indptr, indices, data, model.weights, model.bias)
    )


def loss_and_gradient(
    model: Model,
    examples: list[tuple[SparseVector, int]],
) -> tuple[float, tuple[np.ndarray, np.ndarray]]:
    """Mean cross-entropy + (lambda/2)||W||_F^2 with its analytic gradient."""
    if not examples:
        raise EmptyBatch("loss requires at least one example")
    _check_examples(examples, model.n_classes, model.n_features)
    examples = _canonical_order(examples)
    indptr, indices, data = pack_csr([vec for vec, _ in examples])
    labels = np.array([label for _, label in examples], dtype=np.int64)
    loss, grad_w, grad_b = kernels.loss_grad(
        indptr, indices, data, labels, model.weights, model.bias,
        model.train_config.l2_lambda,
    )
    return float(loss), (grad_w, grad_b)
