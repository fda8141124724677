"""Accuracy, macro precision/recall, confusion matrices, learning curves.

Macro averaging is unweighted over all classes; a class whose denominator
is zero contributes 0 to its metric and still counts in the mean. This is
the harshest convention and behaves sanely when most of a 77-class label
set is still unseen.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyEval, IndexOutOfRange, LengthMismatch

CURVE_CSV_HEADER = "n_labels,accuracy,precision_macro,recall_macro"


def confusion_matrix(predicted, gold, n_classes: int) -> np.ndarray:
    """Count matrix where entry (g, p) counts gold=g predicted=p."""
    predicted = np.asarray(predicted, dtype=np.int64)
    gold = np.asarray(gold, dtype=np.int64)
    if predicted.shape != gold.shape:
        raise LengthMismatch(f"{len(predicted)} predictions vs {len(gold)} gold labels")
    if predicted.size == 0:
        raise EmptyEval("confusion matrix requires at least one pair")
    for arr in (predicted, gold):
        if arr.min() < 0 or arr.max() >= n_classes:
            raise IndexOutOfRange(f"label index outside [0, {n_classes})")
    matrix = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(matrix, (gold, predicted), 1)
    return matrix


def metrics_from_confusion(matrix: np.ndarray) -> tuple[float, float, float]:
    """(accuracy, precision_macro, recall_macro) from a count matrix."""
    matrix = np.asarray(matrix)
    total = matrix.sum()
    if total < 1:
        raise EmptyEval("empty confusion matrix")
    diag = np.diag(matrix).astype(np.float64)
    col_sums = matrix.sum(axis=0).astype(np.float64)  # predicted counts
    row_sums = matrix.sum(axis=1).astype(np.float64)  # gold counts
    precision = np.divide(diag, col_sums, out=np.zeros_like(diag), where=col_sums > 0)
    recall = np.divide(diag, row_sums, out=np.zeros_like(diag), where=row_sums > 0)
    accuracy = float(diag.sum() / total)
    return accuracy, float(precision.mean()), float(recall.mean())


@dataclass(frozen=True)
class RoundMetrics:
    n_labels: int
    accuracy: float
    precision_macro: float
    recall_macro: float
    confusion: np.ndarray
    eval_size: int
    mean_pool_entropy: float | None = None

    @classmethod
    def from_predictions(
        cls,
        predicted,
        gold,
        n_classes: int,
        n_labels: int,
        mean_pool_entropy: float | None = None,
    ) -> "RoundMetrics":
        matrix = confusion_matrix(predicted, gold, n_classes)
        accuracy, precision, recall = metrics_from_confusion(matrix)
        return cls(
            n_labels=n_labels,
            accuracy=accuracy,
            precision_macro=precision,
            recall_macro=recall,
            confusion=matrix,
            eval_size=int(matrix.sum()),
            mean_pool_entropy=mean_pool_entropy,
        )

    def to_json(self) -> dict:
        payload = {
            "n_labels": self.n_labels,
            "accuracy": self.accuracy,
            "precision_macro": self.precision_macro,
            "recall_macro": self.recall_macro,
            "eval_size": self.eval_size,
        }
        if self.mean_pool_entropy is not None:
            payload["mean_pool_entropy"] = self.mean_pool_entropy
        return payload

    def csv_row(self) -> str:
        return (
            f"{self.n_labels},{self.accuracy:.6f},"
            f"{self.precision_macro:.6f},{self.recall_macro:.6f}"
        )


@dataclass
class LearningCurve:
    """Per-round metrics ordered by strictly increasing label count."""

    rounds: list[RoundMetrics] = field(default_factory=list)

    def append(self, metrics: RoundMetrics) -> None:
        if self.rounds and metrics.n_labels <= self.rounds[-1].n_labels:
            raise ValueError(
                f"n_labels must increase: {metrics.n_labels} after {self.rounds[-1].n_labels}"
            )
        self.rounds.append(metrics)

    def __len__(self) -> int:
        return len(self.rounds)

    def __iter__(self):
        return iter(self.rounds)

    def __getitem__(self, i):
        return self.rounds[i]

    def to_csv(self) -> str:
        lines = [CURVE_CSV_HEADER]
        lines.extend(m.csv_row() for m in self.rounds)
        return "\n".join(lines) + "\n"

    def to_json(self) -> list[dict]:
        return [m.to_json() for m in self.rounds]
