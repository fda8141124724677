"""Seeded synthetic corpora for benchmarks and acceptance checks.

Each class owns a handful of exclusive keywords; every document mixes a few
of its class keywords into shared filler vocabulary. The corpus is easy for
a linear model given enough labels, which makes learning-curve shapes and
strategy comparisons reproducible artifacts of the loop rather than of the
data.
"""

from __future__ import annotations

import random

from .corpus import Document, LabelSchema


def synthetic_corpus(
    n_pool: int = 2000,
    n_eval: int = 1000,
    n_classes: int = 4,
    keywords_per_class: int = 5,
    n_filler: int = 40,
    seed: int = 42,
) -> tuple[list[Document], list[Document], LabelSchema]:
    """Generate (pool_docs, eval_docs, schema); fully determined by the seed."""
    rng = random.Random(seed)
    schema = LabelSchema(tuple(f"class{c}" for c in range(n_classes)))
    keywords = [
        [f"key{c}word{k}" for k in range(keywords_per_class)] for c in range(n_classes)
    ]
    filler = [f"filler{j:02d}" for j in range(n_filler)]

    def make_doc(prefix: str, i: int) -> Document:
        label = rng.randrange(n_classes)
        tokens = rng.choices(filler, k=rng.randint(6, 12))
        tokens += rng.choices(keywords[label], k=rng.randint(1, 3))
        rng.shuffle(tokens)
        return Document(doc_id=f"{prefix}{i:05d}", text=" ".join(tokens), gold_label=label)

    pool = [make_doc("p", i) for i in range(n_pool)]
    eval_docs = [make_doc("e", i) for i in range(n_eval)]
    return pool, eval_docs, schema
