"""JSON-over-HTTP facade for annotation sessions.

Serves the labeling UI and scripts: create sessions, fetch the prioritized
batch, submit annotations, read the learning curve, export artifacts. One
mutation runs per session at a time; a second submission racing the first
gets 409 instead of queueing. All responses carry a top-level "v": 1.

Datasets live under <data_dir>/datasets as ``<name>.csv``/``<name>.jsonl``
(single labeled file) or ``<name>.train.csv`` + ``<name>.test.csv`` pairs.
Session event logs append to <data_dir>/sessions/<session_id>.jsonl.
"""

from __future__ import annotations

import json
import re
import threading
import time
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import events as ev
from .corpus import Document, LabelSchema, load_dataset, scan_labels, split
from .errors import (
    BudgetExhausted,
    ConfigError,
    LabelLoopError,
    NotInPool,
    PoolExhausted,
    UnknownLabel,
)
from .loop import (
    Protocol,
    SessionConfig,
    SessionState,
    create_session,
    next_batch,
    submit_annotations,
)
from .classifier import TrainConfig
from .uncertainty import Strategy

DEFAULT_EVAL_FRACTION = 0.5


class HttpApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


@dataclass(frozen=True)
class DatasetEntry:
    name: str
    format: str
    single_path: Path | None = None
    train_path: Path | None = None
    test_path: Path | None = None


class DatasetRegistry:
    """Datasets the server may build sessions from, keyed by name."""

    def __init__(self, root: Path):
        self.root = root

    def list_names(self) -> list[str]:
        names = set()
        if self.root.is_dir():
            for path in self.root.iterdir():
                entry_name = self._name_of(path)
                if entry_name:
                    names.add(entry_name)
        return sorted(names)

    @staticmethod
    def _name_of(path: Path) -> str | None:
        if path.suffix not in (".csv", ".jsonl"):
            return None
        stem = path.stem
        for part in (".train", ".test"):
            if stem.endswith(part):
                return stem[: -len(part)]
        return stem

    def resolve(self, name: str) -> DatasetEntry:
        if not re.fullmatch(r"[\w.-]+", name):
            raise HttpApiError(404, f"unknown dataset {name!r}")
        for fmt in ("csv", "jsonl"):
            single = self.root / f"{name}.{fmt}"
            train = self.root / f"{name}.train.{fmt}"
            test = self.root / f"{name}.test.{fmt}"
            if train.exists() and test.exists():
                return DatasetEntry(name=name, format=fmt, train_path=train, test_path=test)
            if single.exists():
                return DatasetEntry(name=name, format=fmt, single_path=single)
        raise HttpApiError(404, f"unknown dataset {name!r}")

    def load(self, entry: DatasetEntry) -> tuple[list[Document], list[Document] | None, LabelSchema]:
        """Returns (docs, test_docs_or_None, schema); schema inferred over all files."""
        if entry.single_path is not None:
            docs, schema = load_dataset(entry.single_path, entry.format, "infer")
            return docs, None, schema
        # fit the schema over both files so train-only or test-only labels survive
        names = scan_labels(entry.train_path, entry.format)
        names |= scan_labels(entry.test_path, entry.format)
        if len(names) < 2:
            raise HttpApiError(400, f"dataset {entry.name!r} has fewer than 2 labels")
        schema = LabelSchema(tuple(sorted(names)))
        train_docs, _ = load_dataset(entry.train_path, entry.format, schema)
        test_docs, _ = load_dataset(entry.test_path, entry.format, schema)
        return train_docs, test_docs, schema

    def documents_by_id(self, name: str) -> dict[str, Document]:
        entry = self.resolve(name)
        docs, test_docs, _ = self.load(entry)
        merged = {d.doc_id: d for d in docs}
        for d in test_docs or []:
            merged[d.doc_id] = d
        return merged


def _parse_config(payload: dict) -> tuple[SessionConfig, float]:
    config = payload.get("config", {})
    if not isinstance(config, dict):
        raise HttpApiError(400, "config must be an object")
    strategy = config.get("strategy", Strategy.MAX_ENTROPY.value)
    try:
        strategy = Strategy.parse(strategy)
    except ValueError as exc:
        raise HttpApiError(400, str(exc)) from None
    if strategy is Strategy.MISCLASSIFIED_FIRST:
        raise HttpApiError(400, "misclassified_first is benchmark-only; human sessions cannot see gold")
    train = config.get("train", {})
    try:
        train_config = TrainConfig(
            learning_rate=float(train.get("learning_rate", 0.5)),
            epochs=int(train.get("epochs", 200)),
            l2_lambda=float(train.get("l2_lambda", 1e-3)),
            seed=int(train.get("seed", 0)),
        )
        session_config = SessionConfig(
            batch_size=int(config.get("batch_size", 10)),
            max_labels=int(config.get("max_labels", 150)),
            strategy=strategy,
            protocol=config.get("protocol", Protocol.PAPER.value),
            train_config=train_config,
            seed=int(config.get("seed", 0)),
        )
        eval_fraction = float(config.get("eval_fraction", DEFAULT_EVAL_FRACTION))
    except (ConfigError, ValueError, TypeError) as exc:
        raise HttpApiError(400, f"invalid config: {exc}") from None
    if not (0.0 < eval_fraction < 1.0):
        raise HttpApiError(400, f"eval_fraction must be in (0, 1), got {eval_fraction}")
    return session_config, eval_fraction


@dataclass
class SessionRecord:
    state: SessionState
    dataset: str
    lock: threading.Lock


class Api:
    """Transport-independent request handlers; the HTTP layer stays thin."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.registry = DatasetRegistry(self.data_dir / "datasets")
        self.sessions_dir = self.data_dir / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self.sessions: dict[str, SessionRecord] = {}
        self._create_lock = threading.Lock()
        self._replay_existing()

    def _replay_existing(self) -> None:
        for log_path in sorted(self.sessions_dir.glob("*.jsonl")):
            try:
                result = ev.replay(log_path, self.registry.documents_by_id)
            except (LabelLoopError, HttpApiError, OSError) as exc:
                print(f"labelloop: skipping session log {log_path.name}: {exc}")
                continue
            self.sessions[result.state.session_id] = SessionRecord(
                state=result.state, dataset=result.dataset, lock=threading.Lock()
            )

    def _log_path(self, session_id: str) -> Path:
        return self.sessions_dir / f"{session_id}.jsonl"

    def _record(self, session_id: str) -> SessionRecord:
        record = self.sessions.get(session_id)
        if record is None:
            raise HttpApiError(404, f"unknown session {session_id!r}")
        return record

    @staticmethod
    def _summary(record: SessionRecord) -> dict:
        state = record.state
        latest = state.curve[-1]
        return {
            "v": 1,
            "session_id": state.session_id,
            "dataset": record.dataset,
            "round": state.round,
            "labels_used": state.labels_used,
            "budget": state.config.max_labels,
            "batch_size": state.config.batch_size,
            "strategy": state.config.strategy.value,
            "protocol": state.config.protocol.value,
            "labels": list(state.schema.labels),
            "eval_size": len(state.eval_ids),
            "pool_size": len(state.selection_ids()),
            "metrics": latest.to_json(),
        }

    def list_datasets(self) -> tuple[int, dict]:
        return 200, {"v": 1, "datasets": self.registry.list_names()}

    def list_sessions(self) -> tuple[int, dict]:
        summaries = [self._summary(r) for r in self.sessions.values()]
        summaries.sort(key=lambda s: s["session_id"])
        return 200, {"v": 1, "sessions": summaries}

    def get_session(self, session_id: str) -> tuple[int, dict]:
        return 200, self._summary(self._record(session_id))

    def create_session(self, payload: dict) -> tuple[int, dict]:
        name = payload.get("dataset")
        if not isinstance(name, str):
            raise HttpApiError(400, "request must name a dataset")
        config, eval_fraction = _parse_config(payload)
        entry = self.registry.resolve(name)
        try:
            docs, test_docs, schema = self.registry.load(entry)
            if test_docs is not None:
                pool_docs, eval_docs = docs, test_docs
            elif config.protocol is Protocol.PAPER:
                pool_docs, eval_docs = [], docs
            else:
                pool_docs, eval_docs = split(docs, eval_fraction, config.seed)
            state = create_session(pool_docs, eval_docs, schema, config)
        except LabelLoopError as exc:
            raise HttpApiError(400, str(exc)) from None
        with self._create_lock:
            record = SessionRecord(state=state, dataset=name, lock=threading.Lock())
            self.sessions[state.session_id] = record
            created = ev.created_event(state, name)
            ev.append_event(self._log_path(state.session_id), created)
        status, body = 201, self._summary(record)
        return status, body

    def get_batch(self, session_id: str) -> tuple[int, dict]:
        state = self._record(session_id).state
        try:
            batch = next_batch(state)
        except (BudgetExhausted, PoolExhausted) as exc:
            raise HttpApiError(409, str(exc)) from None
        items = []
        for position, (doc, pred) in enumerate(batch):
            items.append(
                {
                    "position": position,
                    "doc_id": doc.doc_id,
                    "text": doc.text,
                    "probs": [float(p) for p in pred.probs],
                    "predicted": pred.predicted,
                    "predicted_label": state.schema.name_of(pred.predicted),
                    "confidence": pred.confidence,
                    "entropy": pred.entropy_nats,
                    "entropy_norm": pred.entropy_norm,
                }
            )
        return 200, {"v": 1, "session_id": session_id, "round": state.round, "batch": items}

    def post_annotations(self, session_id: str, payload: dict) -> tuple[int, dict]:
        record = self._record(session_id)
        rows = payload.get("annotations")
        if not isinstance(rows, list) or not rows:
            raise HttpApiError(422, "annotations must be a non-empty list")
        if not record.lock.acquire(blocking=False):
            raise HttpApiError(409, "another submission is in flight for this session")
        try:
            state = record.state
            try:
                batch = next_batch(state)
            except (BudgetExhausted, PoolExhausted) as exc:
                raise HttpApiError(409, str(exc)) from None
            batch_ids = {doc.doc_id for doc, _ in batch}
            annotations = []
            for row in rows:
                if not isinstance(row, dict) or "doc_id" not in row or "label" not in row:
                    raise HttpApiError(422, "each annotation needs doc_id and label")
                doc_id = str(row["doc_id"])
                if doc_id not in batch_ids:
                    raise HttpApiError(422, f"document {doc_id!r} is not in the current batch")
                label = row["label"]
                if isinstance(label, str):
                    try:
                        label = state.schema.index_of(label)
                    except UnknownLabel:
                        raise HttpApiError(422, f"unknown label {row['label']!r}") from None
                annotations.append((doc_id, int(label)))
            ts = time.time()
            try:
                new_state = submit_annotations(state, annotations, source="human",
                                               clock=lambda: ts)
            except (NotInPool, UnknownLabel) as exc:
                raise HttpApiError(422, str(exc)) from None
            except (BudgetExhausted, PoolExhausted) as exc:
                raise HttpApiError(409, str(exc)) from None
            log = self._log_path(session_id)
            ev.append_event(log, ev.annotated_event(new_state.round, annotations, "human", ts))
            ev.append_event(
                log, ev.evaluated_event(new_state.round, new_state.curve[-1].to_json(), ts)
            )
            record.state = new_state
            return 200, {"v": 1, "metrics": new_state.curve[-1].to_json()}
        finally:
            record.lock.release()

    def get_metrics(self, session_id: str) -> tuple[int, dict]:
        state = self._record(session_id).state
        return 200, {"v": 1, "session_id": session_id, "curve": state.curve.to_json()}

    def get_export(self, session_id: str) -> tuple[int, dict]:
        state = self._record(session_id).state
        return 200, {
            "v": 1,
            "session_id": session_id,
            "model": state.model.to_json(),
            "vocabulary": state.vocab.to_json(),
            "annotations": [a.to_json() for a in state.labeled],
            "curve": state.curve.to_json(),
        }


_ROUTES = [
    ("GET", re.compile(r"^/datasets$"), "list_datasets"),
    ("GET", re.compile(r"^/sessions$"), "list_sessions"),
    ("POST", re.compile(r"^/sessions$"), "create_session"),
    ("GET", re.compile(r"^/sessions/([^/]+)$"), "get_session"),
    ("GET", re.compile(r"^/sessions/([^/]+)/batch$"), "get_batch"),
    ("POST", re.compile(r"^/sessions/([^/]+)/annotations$"), "post_annotations"),
    ("GET", re.compile(r"^/sessions/([^/]+)/metrics$"), "get_metrics"),
    ("GET", re.compile(r"^/sessions/([^/]+)/export$"), "get_export"),
]


class Handler(BaseHTTPRequestHandler):
    api: Api
    ui_dir: Path | None = None

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self._send_cors()
        self.end_headers()
        self.wfile.write(body)

    def _send_cors(self) -> None:
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        raw = self.rfile.read(length)
        try:
            payload = json.loads(raw)
        except json.JSONDecodeError:
            raise HttpApiError(400, "request body is not valid JSON") from None
        if not isinstance(payload, dict):
            raise HttpApiError(400, "request body must be a JSON object")
        return payload

    def _dispatch(self, method: str) -> None:
        path = self.path.split("?", 1)[0].rstrip("/") or "/"
        try:
            for verb, pattern, name in _ROUTES:
                if verb != method:
                    continue
                match = pattern.match(path)
                if not match:
                    continue
                handler = getattr(self.api, name)
                args = list(match.groups())
                if method == "POST":
                    args.append(self._read_body())
                status, payload = handler(*args)
                self._send_json(status, payload)
                return
            if method == "GET" and self.ui_dir is not None:
                self._serve_static(path)
                return
            self._send_json(404, {"v": 1, "error": f"no route for {method} {path}"})
        except HttpApiError as exc:
            self._send_json(exc.status, {"v": 1, "error": exc.message})
        except LabelLoopError as exc:
            self._send_json(400, {"v": 1, "error": str(exc)})

    def _serve_static(self, path: str) -> None:
        target = (self.ui_dir / path.lstrip("/")).resolve() if path != "/" else self.ui_dir / "index.html"
        if path != "/" and not str(target).startswith(str(self.ui_dir.resolve())):
            self._send_json(404, {"v": 1, "error": "not found"})
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            target = self.ui_dir / "index.html"
            if not target.is_file():
                self._send_json(404, {"v": 1, "error": "not found"})
                return
        content_types = {
            ".html": "text/html; charset=utf-8",
            ".js": "text/javascript; charset=utf-8",
            ".css": "text/css; charset=utf-8",
            ".svg": "image/svg+xml",
            ".json": "application/json",
        }
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", content_types.get(target.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(body)))
        self._send_cors()
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    def do_OPTIONS(self):
        self.send_response(204)
        self._send_cors()
        self.end_headers()


def make_server(
    host: str,
    port: int,
    data_dir: str | Path,
    ui_dir: str | Path | None = None,
) -> ThreadingHTTPServer:
    api = Api(data_dir)
    handler = type("BoundHandler", (Handler,), {
        "api": api,
        "ui_dir": Path(ui_dir) if ui_dir else None,
    })
    return ThreadingHTTPServer((host, port), handler)


def serve_forever(host: str, port: int, data_dir: str | Path, ui_dir=None) -> None:
    server = make_server(host, port, data_dir, ui_dir)
    print(f"labelloop service on http://{host}:{port} (data: {data_dir})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
