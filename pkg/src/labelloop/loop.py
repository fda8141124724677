"""The labeling session state machine and the simulated-annotator benchmark.

One session cycles: rank the selection pool by uncertainty, serve a batch,
collect labels, retrain from scratch on every label so far, evaluate, repeat.
Two protocols are supported:

* paper_protocol - batches are drawn from the evaluation set itself and
  migrate into training, so the eval set shrinks by exactly the labeled
  count each round.
* pool_protocol - batches come from a disjoint unlabeled pool and the eval
  set never changes; the standard honest-measurement setup.

States are immutable: submit_annotations returns a fresh SessionState and
never touches its argument, so reads may run concurrently between mutations.
"""

from __future__ import annotations

import enum
import random
import time
import uuid
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .classifier import Model, TrainConfig, predict_batch, train, zero_model
from .corpus import Document, LabelSchema
from .errors import (
    BackendError,
    BudgetExhausted,
    ConfigError,
    EmptyEval,
    EmptyPool,
    MissingGold,
    NotInPool,
    PoolExhausted,
    UnknownLabel,
)
from .evaluation import LearningCurve, RoundMetrics
from .featurizer import SparseVector, Vocabulary, fit_vocabulary, vectorize
from .uncertainty import Prediction, Strategy, rank_pool, select_batch

ColdStart = Callable[[list[str]], list[np.ndarray]]


class Protocol(str, enum.Enum):
    PAPER = "paper_protocol"
    POOL = "pool_protocol"

    @classmethod
    def parse(cls, name: "str | Protocol") -> "Protocol":
        if isinstance(name, Protocol):
            return name
        try:
            return cls(name)
        except ValueError:
            raise ConfigError(
                f"unknown protocol {name!r}; expected paper_protocol or pool_protocol"
            ) from None


@dataclass(frozen=True)
class SessionConfig:
    batch_size: int = 10
    max_labels: int = 150
    strategy: Strategy = Strategy.MAX_ENTROPY
    protocol: Protocol = Protocol.PAPER
    train_config: TrainConfig = field(default_factory=TrainConfig)
    seed: int = 0

    def __post_init__(self):
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.max_labels < self.batch_size:
            raise ConfigError("max_labels must be >= batch_size")
        if self.max_labels % self.batch_size != 0:
            raise ConfigError(
                f"max_labels ({self.max_labels}) must be a multiple of "
                f"batch_size ({self.batch_size})"
            )
        object.__setattr__(self, "strategy", Strategy.parse(self.strategy))
        object.__setattr__(self, "protocol", Protocol.parse(self.protocol))

    @property
    def planned_rounds(self) -> int:
        return self.max_labels // self.batch_size


@dataclass(frozen=True)
class Annotation:
    doc_id: str
    label: int
    round: int
    source: str  # "human" | "oracle"
    timestamp: float

    def to_json(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "label": self.label,
            "round": self.round,
            "source": self.source,
            "timestamp": self.timestamp,
        }


@dataclass
class Oracle:
    """Simulated annotator answering from held gold labels.

    With probability noise_rate a draw returns a uniformly random wrong
    label, modeling imperfect human annotators. Draws come from a seeded
    stream, one per query, so runs replay exactly.
    """

    gold: dict[str, int]
    n_labels: int
    noise_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not (0.0 <= self.noise_rate <= 1.0):
            raise ConfigError(f"noise_rate must be in [0, 1], got {self.noise_rate}")
        self._rng = random.Random(self.seed)

    @classmethod
    def from_documents(
        cls,
        documents: list[Document],
        schema: LabelSchema,
        noise_rate: float = 0.0,
        seed: int = 0,
    ) -> "Oracle":
        gold = {}
        for doc in documents:
            if doc.gold_label is None:
                raise MissingGold(doc.doc_id)
            gold[doc.doc_id] = doc.gold_label
        return cls(gold=gold, n_labels=schema.n_labels, noise_rate=noise_rate, seed=seed)


def oracle_label(oracle: Oracle, doc_id: str) -> int:
    """Gold label, or a random wrong one with probability noise_rate."""
    if doc_id not in oracle.gold:
        raise MissingGold(doc_id)
    gold = oracle.gold[doc_id]
    flip = oracle._rng.random() < oracle.noise_rate
    if not flip:
        return gold
    wrong = oracle._rng.randrange(oracle.n_labels - 1)
    return wrong if wrong < gold else wrong + 1


@dataclass(frozen=True)
class SessionState:
    session_id: str
    schema: LabelSchema
    vocab: Vocabulary
    config: SessionConfig
    documents: dict[str, Document]          # every doc the session knows
    vectors: dict[str, SparseVector]        # frozen-vocabulary cache
    pool_ids: frozenset[str]                # unlabeled pool (pool_protocol)
    eval_ids: frozenset[str]
    labeled: tuple[Annotation, ...]
    round: int
    model: Model
    curve: LearningCurve
    cold_start: ColdStart | None = None

    @property
    def labels_used(self) -> int:
        return len(self.labeled)

    def selection_ids(self) -> list[str]:
        """The set batches are drawn from, sorted for deterministic ties."""
        source = self.eval_ids if self.config.protocol is Protocol.PAPER else self.pool_ids
        return sorted(source)

    def labeled_ids(self) -> set[str]:
        return {a.doc_id for a in self.labeled}


def _predictions(state: SessionState, doc_ids: list[str]) -> list[Prediction]:
    """Model predictions; at round 0 an attached cold-start predictor wins,
    degrading to the zero model if the backend fails."""
    texts_needed = state.round == 0 and state.cold_start is not None
    if texts_needed:
        try:
            probs = state.cold_start([state.documents[d].text for d in doc_ids])
            return [Prediction.from_probs(d, p) for d, p in zip(doc_ids, probs)]
        except BackendError:
            pass
    probs = predict_batch(state.model, [state.vectors[d] for d in doc_ids])
    return [Prediction.from_probs(d, probs[i]) for i, d in enumerate(doc_ids)]


def _mean_pool_entropy(state: SessionState) -> float | None:
    ids = state.selection_ids()
    if not ids:
        return None
    preds = _predictions(state, ids)
    return float(np.mean([p.entropy_nats for p in preds]))


def _evaluate(state: SessionState) -> RoundMetrics:
    eval_ids = sorted(state.eval_ids)
    if not eval_ids:
        raise EmptyEval("evaluation set is empty")
    preds = _predictions(state, eval_ids)
    predicted = [p.predicted for p in preds]
    gold = [state.documents[d].gold_label for d in eval_ids]
    return RoundMetrics.from_predictions(
        predicted,
        gold,
        state.schema.n_labels,
        n_labels=state.labels_used,
        mean_pool_entropy=_mean_pool_entropy(state),
    )


def create_session(
    pool_docs: list[Document],
    eval_docs: list[Document],
    schema: LabelSchema,
    config: SessionConfig,
    session_id: str | None = None,
    cold_start: ColdStart | None = None,
) -> SessionState:
    """Start a session at round 0 with a zero model and round-0 metrics.

    Under paper_protocol pool_docs is ignored: the eval set doubles as the
    selection pool. The vocabulary is fitted once on all session texts (an
    unsupervised step) and stays frozen so curves measure labeling, not
    feature drift.
    """
    if not eval_docs:
        raise EmptyEval("eval set must be non-empty")
    for doc in eval_docs:
        if doc.gold_label is None:
            raise MissingGold(doc.doc_id)

    if config.protocol is Protocol.PAPER:
        pool_docs = []
    elif not pool_docs:
        raise EmptyPool("pool_protocol requires a non-empty pool")

    if config.strategy is Strategy.MISCLASSIFIED_FIRST:
        for doc in pool_docs:
            if doc.gold_label is None:
                raise MissingGold(doc.doc_id)

    documents: dict[str, Document] = {}
    for doc in list(pool_docs) + list(eval_docs):
        if doc.doc_id in documents:
            raise ConfigError(f"document {doc.doc_id!r} appears in both pool and eval")
        documents[doc.doc_id] = doc

    for doc in documents.values():
        if doc.gold_label is not None and not (0 <= doc.gold_label < schema.n_labels):
            raise UnknownLabel(doc.gold_label)

    vocab = fit_vocabulary(list(documents.values()))
    vectors = {d: vectorize(doc.text, vocab) for d, doc in documents.items()}

    state = SessionState(
        session_id=session_id or uuid.uuid4().hex,
        schema=schema,
        vocab=vocab,
        config=config,
        documents=documents,
        vectors=vectors,
        pool_ids=frozenset(d.doc_id for d in pool_docs),
        eval_ids=frozenset(d.doc_id for d in eval_docs),
        labeled=(),
        round=0,
        model=zero_model(schema, vocab, config.train_config),
        curve=LearningCurve(),
        cold_start=cold_start,
    )
    state.curve.append(_evaluate(state))
    return state


def next_batch(state: SessionState) -> list[tuple[Document, Prediction]]:
    """Rank the selection pool and return the top batch without mutating state."""
    if state.labels_used >= state.config.max_labels:
        raise BudgetExhausted(
            f"label budget of {state.config.max_labels} reached"
        )
    ids = state.selection_ids()
    if not ids:
        raise PoolExhausted("selection pool is empty")
    preds = _predictions(state, ids)
    gold = None
    if state.config.strategy is Strategy.MISCLASSIFIED_FIRST:
        gold = {d: state.documents[d].gold_label for d in ids}
    ranked = rank_pool(
        preds,
        state.config.strategy,
        gold=gold,
        seed=state.config.seed + state.round,
    )
    chosen = select_batch(ranked, state.config.batch_size)
    by_id = {p.doc_id: p for p in preds}
    return [(state.documents[d], by_id[d]) for d in chosen]


def submit_annotations(
    state: SessionState,
    annotations: list[tuple[str, int]],
    source: str = "human",
    clock: Callable[[], float] = time.time,
) -> SessionState:
    """Apply one round of labels: record, retrain from scratch, re-evaluate.

    Returns a new state; the input state is unchanged.
    """
    if not annotations:
        raise ValueError("submit_annotations requires at least one annotation")
    if len(annotations) > state.config.batch_size:
        raise ValueError(
            f"cannot submit {len(annotations)} annotations; batch_size is "
            f"{state.config.batch_size}"
        )
    if state.labels_used + len(annotations) > state.config.max_labels:
        raise BudgetExhausted(f"label budget of {state.config.max_labels} reached")

    selection = set(state.selection_ids())
    seen: set[str] = set()
    for doc_id, label in annotations:
        if doc_id not in selection or doc_id in seen:
            raise NotInPool(doc_id)
        seen.add(doc_id)
        if not (0 <= label < state.schema.n_labels):
            raise UnknownLabel(label)

    if state.config.protocol is Protocol.PAPER and seen == set(state.eval_ids):
        raise PoolExhausted("labeling every remaining eval document would leave nothing to evaluate")

    new_round = state.round + 1
    now = clock()
    records = tuple(
        Annotation(doc_id=d, label=label, round=new_round, source=source, timestamp=now)
        for d, label in annotations
    )
    labeled = state.labeled + records

    if state.config.protocol is Protocol.PAPER:
        pool_ids = state.pool_ids
        eval_ids = state.eval_ids - seen
    else:
        pool_ids = state.pool_ids - seen
        eval_ids = state.eval_ids

    examples = [(state.vectors[a.doc_id], a.label) for a in labeled]
    model = train(examples, state.schema, state.config.train_config, state.vocab)

    curve = LearningCurve(list(state.curve.rounds))
    new_state = replace(
        state,
        pool_ids=pool_ids,
        eval_ids=eval_ids,
        labeled=labeled,
        round=new_round,
        model=model,
        curve=curve,
    )
    curve.append(_evaluate(new_state))
    return new_state


def run_benchmark(
    eval_docs: list[Document],
    pool_docs: list[Document],
    schema: LabelSchema,
    config: SessionConfig,
    oracle: Oracle,
) -> LearningCurve:
    """Drive the full loop with the simulated annotator until the budget or
    the pool runs out. Deterministic given inputs, config, and oracle seed."""
    state = create_session(pool_docs, eval_docs, schema, config)
    while True:
        try:
            batch = next_batch(state)
        except (BudgetExhausted, PoolExhausted):
            break
        labels = [(doc.doc_id, oracle_label(oracle, doc.doc_id)) for doc, _ in batch]
        try:
            state = submit_annotations(state, labels, source="oracle")
        except PoolExhausted:
            break
    return state.curve
