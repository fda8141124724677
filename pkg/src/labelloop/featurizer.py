"""TF-IDF featurization over a corpus-fitted vocabulary.

Terms are maximal runs of Unicode letters/digits, lowercased. Document
vectors are raw term counts weighted by smoothed idf and L2-normalized,
so every non-zero vector has unit Euclidean norm.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Document
from .errors import EmptyCorpus, EmptyVocabulary

# letters and digits only; \w minus underscore
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

DEFAULT_MAX_FEATURES = 50_000
DEFAULT_MIN_DF = 2
# below this corpus size min_df falls back to 1 so tiny train sets stay representable
MIN_DF_FALLBACK_CORPUS_SIZE = 50


def tokenize(text: str) -> list[str]:
    """Lowercased tokens; all non-alphanumeric characters separate."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class SparseVector:
    """Sorted sparse vector; either empty or unit-norm."""

    indices: np.ndarray  # int64, strictly increasing
    values: np.ndarray   # float64, finite and non-zero
    dim: int

    @property
    def nnz(self) -> int:
        return len(self.indices)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dim)
        dense[self.indices] = self.values
        return dense


@dataclass(frozen=True)
class Vocabulary:
    term_to_index: dict[str, int]
    idf: np.ndarray  # aligned with indices, every entry >= 1
    fitted_on: int   # document count the idf statistics came from

    @property
    def size(self) -> int:
        return len(self.term_to_index)

    def to_json(self) -> dict:
        terms = sorted(self.term_to_index.items(), key=lambda kv: kv[1])
        return {
            "v": 1,
            "fitted_on": self.fitted_on,
            "terms": [[term, index, self.idf[index]] for term, index in terms],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "Vocabulary":
        term_to_index = {term: int(index) for term, index, _ in payload["terms"]}
        idf = np.zeros(len(term_to_index))
        for _, index, value in payload["terms"]:
            idf[int(index)] = float(value)
        return cls(term_to_index=term_to_index, idf=idf, fitted_on=int(payload["fitted_on"]))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def fit_vocabulary(
    corpus: list[Document],
    min_df: int | None = None,
    max_features: int = DEFAULT_MAX_FEATURES,
) -> Vocabulary:
    """Fit term indices and idf weights on a corpus.

    Keeps terms with document frequency >= min_df; if more than max_features
    survive, the highest-df terms win (ties broken by lexicographic term
    order). idf[t] = ln((1+N)/(1+df[t])) + 1. min_df=None resolves to 2, or
    to 1 when the corpus has fewer than 50 documents.
    """
    if not corpus:
        raise EmptyCorpus("cannot fit a vocabulary on an empty corpus")
    if min_df is None:
        min_df = DEFAULT_MIN_DF if len(corpus) >= MIN_DF_FALLBACK_CORPUS_SIZE else 1
    if min_df < 1:
        raise ValueError(f"min_df must be >= 1, got {min_df}")
    if max_features < 1:
        raise ValueError(f"max_features must be >= 1, got {max_features}")

    df: Counter[str] = Counter()
    for doc in corpus:
        df.update(set(tokenize(doc.text)))

    surviving = [(term, count) for term, count in df.items() if count >= min_df]
    if not surviving:
        raise EmptyVocabulary(f"no term reaches min_df={min_df}")
    if len(surviving) > max_features:
        surviving.sort(key=lambda tc: (-tc[1], tc[0]))
        surviving = surviving[:max_features]

    n_docs = len(corpus)
    terms = sorted(term for term, _ in surviving)
    term_to_index = {term: i for i, term in enumerate(terms)}
    idf = np.array([math.log((1 + n_docs) / (1 + df[term])) + 1.0 for term in terms])
    return Vocabulary(term_to_index=term_to_index, idf=idf, fitted_on=n_docs)


def vectorize(text: str, vocab: Vocabulary) -> SparseVector:
    """Counts x idf, L2-normalized. Out-of-vocabulary terms are dropped;
    an all-OOV text maps to the zero vector."""
    counts: Counter[int] = Counter()
    for token in tokenize(text):
        index = vocab.term_to_index.get(token)
        if index is not None:
            counts[index] += 1
    if not counts:
        return SparseVector(
            indices=np.empty(0, dtype=np.int64),
            values=np.empty(0, dtype=np.float64),
            dim=vocab.size,
        )
    indices = np.array(sorted(counts), dtype=np.int64)
    values = np.array([counts[i] for i in indices], dtype=np.float64) * vocab.idf[indices]
    values /= np.linalg.norm(values)
    return SparseVector(indices=indices, values=values, dim=vocab.size)


def pack_csr(vectors: list[SparseVector]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Concatenate sparse vectors into CSR arrays (indptr, indices, data)."""
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    for i, vec in enumerate(vectors):
        indptr[i + 1] = indptr[i] + vec.nnz
    total = int(indptr[-1])
    indices = np.empty(total, dtype=np.int64)
    data = np.empty(total, dtype=np.float64)
    for i, vec in enumerate(vectors):
        indices[indptr[i]:indptr[i + 1]] = vec.indices
        data[indptr[i]:indptr[i + 1]] = vec.values
    return indptr, indices, data
