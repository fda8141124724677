"""External zero-shot predictors and the native lexical fallback.

The wire contract is a single vendor-neutral JSON POST; adapters for
specific providers belong outside the core. Backend predictions are only
ever used for a session's round-0 cold start, and any failure degrades to
the native zero model instead of aborting the session.
"""

from __future__ import annotations

import json
import urllib.error
import urllib.request
from dataclasses import dataclass

import numpy as np

from .corpus import LabelSchema
from .errors import BackendProtocolError, BackendUnavailable, ConfigError, NoHints
from .featurizer import tokenize


@dataclass(frozen=True)
class BackendDescriptor:
    name: str
    endpoint_url: str
    timeout: float = 10.0
    max_batch: int = 64

    def __post_init__(self):
        if not self.endpoint_url.startswith(("http://", "https://")):
            raise ConfigError(f"endpoint_url must be http(s), got {self.endpoint_url!r}")
        if self.timeout <= 0:
            raise ConfigError("timeout must be positive")
        if self.max_batch < 1:
            raise ConfigError("max_batch must be >= 1")


def _normalize(row: list, n_classes: int) -> np.ndarray:
    arr = np.asarray(row, dtype=np.float64)
    if arr.shape != (n_classes,):
        raise BackendProtocolError(
            f"probability row has length {arr.size}, expected {n_classes}"
        )
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise BackendProtocolError("probability row has negative or non-finite entries")
    total = arr.sum()
    if total == 0.0:
        return np.full(n_classes, 1.0 / n_classes)
    return arr / total


def predict_external(
    backend: BackendDescriptor,
    texts: list[str],
    schema: LabelSchema,
) -> list[np.ndarray]:
    """POST texts+labels to the backend; return one renormalized probability
    vector per text, in input order."""
    if not texts:
        raise ValueError("texts must be non-empty")
    if len(texts) > backend.max_batch:
        raise ValueError(f"batch of {len(texts)} exceeds max_batch {backend.max_batch}")

    body = json.dumps({"texts": list(texts), "labels": list(schema.labels)}).encode("utf-8")
    request = urllib.request.Request(
        backend.endpoint_url,
        data=body,
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    try:
        with urllib.request.urlopen(request, timeout=backend.timeout) as response:
            if response.status != 200:
                raise BackendUnavailable(f"{backend.name}: HTTP {response.status}")
            raw = response.read()
    except urllib.error.HTTPError as exc:
        raise BackendUnavailable(f"{backend.name}: HTTP {exc.code}") from None
    except (urllib.error.URLError, TimeoutError, OSError) as exc:
        raise BackendUnavailable(f"{backend.name}: {exc}") from None

    try:
        payload = json.loads(raw)
    except json.JSONDecodeError:
        raise BackendProtocolError(f"{backend.name}: response is not JSON") from None
    if not isinstance(payload, dict) or "probs" not in payload:
        raise BackendProtocolError(f"{backend.name}: response missing 'probs'")
    rows = payload["probs"]
    if not isinstance(rows, list) or len(rows) != len(texts):
        got = len(rows) if isinstance(rows, list) else type(rows).__name__
        raise BackendProtocolError(
            f"{backend.name}: expected {len(texts)} probability rows, got {got}"
        )
    return [_normalize(row, schema.n_labels) for row in rows]


def external_cold_start(backend: BackendDescriptor, schema: LabelSchema):
    """Adapt a backend to the loop's cold-start callable, chunking requests
    to max_batch."""

    def predictor(texts: list[str]) -> list[np.ndarray]:
        out: list[np.ndarray] = []
        for start in range(0, len(texts), backend.max_batch):
            out.extend(predict_external(backend, texts[start:start + backend.max_batch], schema))
        return out

    return predictor


def lexical_zero_shot(
    text: str,
    schema: LabelSchema,
    label_hints: dict[str, list[str]],
) -> np.ndarray:
    """Softmax over per-class counts of hint-term tokens found in the text.

    A text matching no hints comes out uniform (softmax of all zeros).
    """
    if not label_hints or not any(label_hints.values()):
        raise NoHints("label_hints must name terms for at least one label")
    for name in label_hints:
        if name not in schema.labels:
            raise ConfigError(f"hint label {name!r} not in schema")

    hint_tokens: dict[int, set[str]] = {}
    for name, terms in label_hints.items():
        tokens: set[str] = set()
        for term in terms:
            tokens.update(tokenize(term))
        hint_tokens[schema.index_of(name)] = tokens

    scores = np.zeros(schema.n_labels)
    for token in tokenize(text):
        for label_index, tokens in hint_tokens.items():
            if token in tokens:
                scores[label_index] += 1.0
    shifted = np.exp(scores - scores.max())
    return shifted / shifted.sum()


def lexical_cold_start(schema: LabelSchema, label_hints: dict[str, list[str]]):
    """Cold-start callable backed by lexical_zero_shot."""

    def predictor(texts: list[str]) -> list[np.ndarray]:
        return [lexical_zero_shot(text, schema, label_hints) for text in texts]

    return predictor
