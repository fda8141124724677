"""Append-only session event logs.

A session's history is three event kinds - created, annotated, evaluated -
written as JSONL. Because sessions are deterministic functions of their
inputs, replaying created + annotated events reconstructs the exact state;
evaluated events are recorded for audit and cross-checked on replay.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .classifier import TrainConfig
from .corpus import Document, LabelSchema
from .errors import DatasetFormatError
from .loop import SessionConfig, SessionState, create_session, submit_annotations
from .uncertainty import Strategy


def config_to_json(config: SessionConfig) -> dict:
    return {
        "batch_size": config.batch_size,
        "max_labels": config.max_labels,
        "strategy": config.strategy.value,
        "protocol": config.protocol.value,
        "seed": config.seed,
        "train": config.train_config.to_json(),
    }


def config_from_json(payload: dict) -> SessionConfig:
    return SessionConfig(
        batch_size=int(payload["batch_size"]),
        max_labels=int(payload["max_labels"]),
        strategy=Strategy.parse(payload["strategy"]),
        protocol=payload["protocol"],
        train_config=TrainConfig.from_json(payload["train"]),
        seed=int(payload["seed"]),
    )


def created_event(state: SessionState, dataset_name: str, ts: float | None = None) -> dict:
    return {
        "v": 1,
        "type": "created",
        "ts": time.time() if ts is None else ts,
        "session_id": state.session_id,
        "dataset": dataset_name,
        "labels": list(state.schema.labels),
        "config": config_to_json(state.config),
        "pool_ids": sorted(state.pool_ids),
        "eval_ids": sorted(state.eval_ids),
        "round0": state.curve[0].to_json(),
    }


def annotated_event(round_number: int, annotations, source: str, ts: float) -> dict:
    return {
        "v": 1,
        "type": "annotated",
        "ts": ts,
        "round": round_number,
        "source": source,
        "annotations": [[doc_id, int(label)] for doc_id, label in annotations],
    }


def evaluated_event(round_number: int, metrics_json: dict, ts: float) -> dict:
    return {
        "v": 1,
        "type": "evaluated",
        "ts": ts,
        "round": round_number,
        "metrics": metrics_json,
    }


def append_event(path: str | Path, event: dict) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(event) + "\n")


def read_events(path: str | Path) -> list[dict]:
    events = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                events.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise DatasetFormatError(f"{path}:{lineno}: invalid event JSON ({exc.msg})") from None
    if not events or events[0].get("type") != "created":
        raise DatasetFormatError(f"{path}: first event must be 'created'")
    return events


@dataclass(frozen=True)
class ReplayResult:
    state: SessionState
    dataset: str


def replay(
    path: str | Path,
    resolve_documents: Callable[[str], dict[str, Document]],
) -> ReplayResult:
    """Rebuild a session from its event log.

    resolve_documents maps the recorded dataset name to its documents by id;
    the log's id lists select the original pool/eval membership.
    """
    events = read_events(path)
    created = events[0]
    documents = resolve_documents(created["dataset"])
    schema = LabelSchema(tuple(created["labels"]))
    config = config_from_json(created["config"])

    def pick(ids: list[str]) -> list[Document]:
        missing = [d for d in ids if d not in documents]
        if missing:
            raise DatasetFormatError(
                f"{path}: dataset {created['dataset']!r} no longer contains ids {missing[:3]}"
            )
        return [documents[d] for d in ids]

    state = create_session(
        pick(created["pool_ids"]),
        pick(created["eval_ids"]),
        schema,
        config,
        session_id=created["session_id"],
    )
    for event in events[1:]:
        if event["type"] != "annotated":
            continue
        state = submit_annotations(
            state,
            [(doc_id, label) for doc_id, label in event["annotations"]],
            source=event["source"],
            clock=lambda ts=event["ts"]: ts,
        )
    return ReplayResult(state=state, dataset=created["dataset"])
