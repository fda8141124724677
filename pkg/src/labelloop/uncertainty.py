"""Prediction uncertainty metrics and the prioritized labeling queue.

Entropy is measured in nats with a normalized companion in [0, 1] so
thresholds stay comparable between a 2-class and a 77-class dataset. All
tie-breaks are total and deterministic so sessions replay byte-for-byte.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass

import numpy as np

from .errors import InvalidBatchSize, InvalidDistribution, MissingGold

_SUM_TOLERANCE = 1e-6


class Strategy(str, enum.Enum):
    MAX_ENTROPY = "max_entropy"
    LEAST_CONFIDENCE = "least_confidence"
    MISCLASSIFIED_FIRST = "misclassified_first"
    RANDOM = "random"

    @classmethod
    def parse(cls, name: "str | Strategy") -> "Strategy":
        if isinstance(name, Strategy):
            return name
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown strategy {name!r}; expected one of {choices}") from None


def entropy(probs) -> float:
    """Shannon entropy -sum(p ln p) in nats, with 0 ln 0 := 0.

    The input is renormalized before computing; components must be
    non-negative and sum to 1 within 1e-6.
    """
    arr = np.asarray(probs, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidDistribution("probability vector must be 1-D and non-empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidDistribution("probability vector has non-finite components")
    if np.any(arr < 0):
        raise InvalidDistribution("probability vector has negative components")
    total = arr.sum()
    if abs(total - 1.0) > _SUM_TOLERANCE:
        raise InvalidDistribution(f"probabilities sum to {total}, expected 1")
    arr = arr / total
    nonzero = arr[arr > 0]
    return float(-(nonzero * np.log(nonzero)).sum())


@dataclass(frozen=True)
class Prediction:
    doc_id: str
    probs: np.ndarray
    predicted: int        # argmax, smallest index on exact ties
    confidence: float     # max component
    entropy_nats: float
    entropy_norm: float   # entropy_nats / ln(C)

    @classmethod
    def from_probs(cls, doc_id: str, probs) -> "Prediction":
        arr = np.asarray(probs, dtype=np.float64)
        h = entropy(arr)
        predicted = int(np.argmax(arr))
        return cls(
            doc_id=doc_id,
            probs=arr,
            predicted=predicted,
            confidence=float(arr[predicted]),
            entropy_nats=h,
            entropy_norm=h / math.log(len(arr)),
        )


def rank_pool(
    predictions: list[Prediction],
    strategy: Strategy | str,
    gold: dict[str, int] | None = None,
    seed: int | None = None,
) -> list[str]:
    """Order doc ids by labeling priority under the given strategy.

    max_entropy: descending entropy, ties by ascending confidence then id.
    least_confidence: ascending confidence, ties by descending entropy then id.
    misclassified_first: wrong predictions (by gold) before right ones, each
    group by descending entropy, ties by id; requires gold.
    random: seeded shuffle of the sorted id list.

    Always returns a permutation of the input ids.
    """
    if not predictions:
        raise ValueError("rank_pool requires at least one prediction")
    strategy = Strategy.parse(strategy)

    if strategy is Strategy.RANDOM:
        if seed is None:
            raise ValueError("random strategy requires a seed")
        ids = sorted(p.doc_id for p in predictions)
        random.Random(seed).shuffle(ids)
        return ids

    if strategy is Strategy.MISCLASSIFIED_FIRST:
        if gold is None:
            raise MissingGold("misclassified_first requires gold labels")
        for p in predictions:
            if p.doc_id not in gold:
                raise MissingGold(p.doc_id)
        keyed = sorted(
            predictions,
            key=lambda p: (p.predicted == gold[p.doc_id], -p.entropy_nats, p.doc_id),
        )
        return [p.doc_id for p in keyed]

    if strategy is Strategy.MAX_ENTROPY:
        keyed = sorted(predictions, key=lambda p: (-p.entropy_nats, p.confidence, p.doc_id))
    else:  # least confidence
        keyed = sorted(predictions, key=lambda p: (p.confidence, -p.entropy_nats, p.doc_id))
    return [p.doc_id for p in keyed]


def select_batch(ranked: list[str], k: int) -> list[str]:
    """First min(k, len) ids in ranked order."""
    if k < 1:
        raise InvalidBatchSize(k)
    if not ranked:
        raise ValueError("select_batch requires a non-empty ranking")
    return list(ranked[:k])
