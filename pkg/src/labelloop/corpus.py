"""Dataset loading, validation, and splitting.

Input formats: CSV with header ``id,text,label`` (RFC-4180, UTF-8) and JSONL
with objects ``{"id": ..., "text": ..., "label": ...}`` where ``label`` is
optional. Rows without a label become unlabeled documents.
"""

from __future__ import annotations

import csv
import json
import random
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    ConfigError,
    DatasetFormatError,
    DuplicateId,
    EmptyText,
    MissingGold,
    SchemaTooSmall,
    UnknownLabel,
)

CSV_HEADER = ["id", "text", "label"]


@dataclass(frozen=True)
class LabelSchema:
    """Ordered set of distinct label names; index <-> name is a bijection."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) < 2:
            raise SchemaTooSmall(len(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ConfigError("label names must be unique")
        if any(not name.strip() for name in self.labels):
            raise ConfigError("label names must be non-empty")

    @property
    def n_labels(self) -> int:
        return len(self.labels)

    def index_of(self, name: str) -> int:
        try:
            return self.labels.index(name)
        except ValueError:
            raise UnknownLabel(name) from None

    def name_of(self, index: int) -> str:
        return self.labels[index]


@dataclass(frozen=True)
class Document:
    """One text item; gold_label is an index into the session's LabelSchema."""

    doc_id: str
    text: str
    gold_label: int | None = None


@dataclass(frozen=True)
class DatasetDescriptor:
    """Published shape of one of the benchmark datasets.

    label_names is complete only where the source enumerates the full set;
    label_count is always authoritative.
    """

    name: str
    expected_train_rows: int
    expected_test_rows: int
    label_count: int
    label_names: tuple[str, ...] = field(default_factory=tuple)
    source_url: str = ""

    def __post_init__(self):
        if self.expected_train_rows <= 0 or self.expected_test_rows <= 0:
            raise ConfigError("expected row counts must be positive")

    def validate_rows(self, n_train: int | None = None, n_test: int | None = None) -> None:
        """Warn (not error) on row-count drift; public mirrors shift over time."""
        if n_train is not None and n_train != self.expected_train_rows:
            warnings.warn(
                f"{self.name}: expected {self.expected_train_rows} train rows, got {n_train}",
                stacklevel=2,
            )
        if n_test is not None and n_test != self.expected_test_rows:
            warnings.warn(
                f"{self.name}: expected {self.expected_test_rows} test rows, got {n_test}",
                stacklevel=2,
            )


def builtin_descriptors() -> list[DatasetDescriptor]:
    """Descriptors for the five benchmark dataset families (six label sets)."""
    return [
        DatasetDescriptor(
            name="amazon",
            expected_train_rows=6001,
            expected_test_rows=2001,
            label_count=5,
            label_names=("Excellent", "Very Good", "Neutral", "Good", "Bad"),
            source_url="https://huggingface.co/datasets/A-Roucher/amazon_product_reviews_datafiniti",
        ),
        DatasetDescriptor(
            name="banking",
            expected_train_rows=200,
            expected_test_rows=2000,
            label_count=77,
            # only the example intents are published; the full 77 live in the data
            label_names=("cash received", "fiat currency support", "pin blocked"),
            source_url="https://huggingface.co/datasets/PolyAI/banking77",
        ),
        DatasetDescriptor(
            name="craigslist",
            expected_train_rows=201,
            expected_test_rows=1001,
            label_count=5,
            label_names=("phone", "furniture", "housing", "electronics", "car"),
            source_url="https://huggingface.co/datasets/craigslist_bargains",
        ),
        DatasetDescriptor(
            name="financial-phrasebank",
            expected_train_rows=4850,
            expected_test_rows=2425,  # single file; conventional 0.5 eval split
            label_count=3,
            label_names=("positive", "negative", "neutral"),
            source_url="https://huggingface.co/datasets/financial_phrasebank",
        ),
        DatasetDescriptor(
            name="trec-coarse",
            expected_train_rows=5452,
            expected_test_rows=500,
            label_count=6,
            label_names=("ABBR", "ENTY", "DESC", "HUM", "LOC", "NUM"),
            source_url="https://huggingface.co/datasets/trec",
        ),
        DatasetDescriptor(
            name="trec-fine",
            expected_train_rows=5452,
            expected_test_rows=500,
            label_count=50,
            label_names=("expression abbreviated", "animals", "organ of body", "color", "invention", "book"),
            source_url="https://huggingface.co/datasets/trec",
        ),
    ]


def descriptor(name: str) -> DatasetDescriptor:
    for d in builtin_descriptors():
        if d.name == name:
            return d
    raise KeyError(name)


def _rows_from_csv(path: Path):
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetFormatError(f"{path}: empty file, header required") from None
        if [h.strip() for h in header] != CSV_HEADER:
            raise DatasetFormatError(f"{path}: header must be exactly {','.join(CSV_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise DatasetFormatError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            yield lineno, row[0], row[1], row[2]


def _rows_from_jsonl(path: Path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetFormatError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
                raise DatasetFormatError(f"{path}:{lineno}: object must have 'id' and 'text' keys")
            label = obj.get("label")
            yield lineno, str(obj["id"]), str(obj["text"]), "" if label is None else str(label)


def load_dataset(
    path: str | Path,
    format: str = "csv",
    schema: LabelSchema | str = "infer",
) -> tuple[list[Document], LabelSchema]:
    """Load documents from a CSV or JSONL file.

    With ``schema="infer"`` the schema is the sorted set of distinct non-empty
    labels found in the file. Label matching is exact-string after trimming
    outer whitespace; no case folding.
    """
    path = Path(path)
    if format == "csv":
        rows = _rows_from_csv(path)
    elif format == "jsonl":
        rows = _rows_from_jsonl(path)
    else:
        raise ConfigError(f"unknown format {format!r}; expected 'csv' or 'jsonl'")

    raw: list[tuple[int, str, str, str]] = []
    seen: set[str] = set()
    for lineno, doc_id, text, label in rows:
        doc_id = doc_id.strip()
        if doc_id in seen:
            raise DuplicateId(doc_id)
        seen.add(doc_id)
        if not text.strip():
            raise EmptyText(lineno)
        raw.append((lineno, doc_id, text, label.strip()))

    if isinstance(schema, str):
        if schema != "infer":
            raise ConfigError(f"schema must be a LabelSchema or 'infer', got {schema!r}")
        names = sorted({label for _, _, _, label in raw if label})
        if len(names) < 2:
            raise SchemaTooSmall(len(names))
        resolved = LabelSchema(tuple(names))
    else:
        resolved = schema

    docs = []
    for lineno, doc_id, text, label in raw:
        if label:
            if label not in resolved.labels:
                raise UnknownLabel(label, row=lineno)
            gold = resolved.index_of(label)
        else:
            gold = None
        docs.append(Document(doc_id=doc_id, text=text, gold_label=gold))
    return docs, resolved


def scan_labels(path: str | Path, format: str = "csv") -> set[str]:
    """Distinct non-empty (trimmed) label strings present in a file."""
    path = Path(path)
    rows = _rows_from_csv(path) if format == "csv" else _rows_from_jsonl(path)
    return {label.strip() for _, _, _, label in rows if label.strip()}


def save_csv(path: str | Path, documents: list[Document], schema: LabelSchema) -> None:
    """Write documents back out in the input CSV format."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for doc in documents:
            label = "" if doc.gold_label is None else schema.name_of(doc.gold_label)
            writer.writerow([doc.doc_id, doc.text, label])


def split(
    documents: list[Document],
    eval_fraction: float,
    seed: int,
) -> tuple[list[Document], list[Document]]:
    """Deterministically partition documents into (pool, eval).

    |eval| = round(eval_fraction * N). The partition is a pure function of the
    document id order, the fraction, and the seed. Every document must carry a
    gold label because the eval side needs ground truth.
    """
    if not documents:
        raise ConfigError("cannot split an empty document list")
    if not (0.0 < eval_fraction < 1.0):
        raise ConfigError(f"eval_fraction must be in (0, 1), got {eval_fraction}")
    for doc in documents:
        if doc.gold_label is None:
            raise MissingGold(doc.doc_id)
    order = list(range(len(documents)))
    random.Random(seed).shuffle(order)
    n_eval = round(eval_fraction * len(documents))
    eval_idx = order[:n_eval]
    pool_idx = order[n_eval:]
    return [documents[i] for i in pool_idx], [documents[i] for i in eval_idx]
