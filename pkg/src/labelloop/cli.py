"""Command-line entry points.

Subcommands: bench (seeded oracle benchmark -> curve CSVs), compare
(strategy comparison CSV), serve (HTTP API), export (replay a session log
into model/vocabulary/annotation artifacts), ingest (validate + register a
dataset), synth (emit the synthetic benchmark corpus).

Exit codes: 0 success, 2 configuration error, 3 dataset error, 4 port in
use. Benchmark outputs are written atomically and removed on failure so a
crashed run never leaves partial CSVs behind.
"""

from __future__ import annotations

import errno
import json
import shutil
import sys
import tempfile
from pathlib import Path

import click

from . import events as ev
from . import svg
from .corpus import LabelSchema, load_dataset, save_csv, scan_labels, split
from .errors import ConfigError, LabelLoopError
from .evaluation import CURVE_CSV_HEADER, LearningCurve
from .loop import Oracle, Protocol, SessionConfig, run_benchmark
from .synthetic import synthetic_corpus
from .uncertainty import Strategy

EXIT_CONFIG = 2
EXIT_DATASET = 3
EXIT_PORT = 4

_STRATEGIES = [s.value for s in Strategy]
_PROTOCOLS = [p.value for p in Protocol]
_METRICS = ["accuracy", "precision_macro", "recall_macro"]


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _write_atomic(path: Path, content: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with open(fd, "w", encoding="utf-8") as fh:
            fh.write(content)
        Path(tmp).replace(path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


class _OutputSet:
    """Tracks files one command wrote so a failure cleans all of them up."""

    def __init__(self):
        self.paths: list[Path] = []

    def write(self, path: Path, content: str) -> None:
        _write_atomic(path, content)
        self.paths.append(path)

    def discard_all(self) -> None:
        for path in self.paths:
            path.unlink(missing_ok=True)


def _load_bench_data(dataset, test, fmt, protocol, seed):
    """Resolve (pool_docs, eval_docs, schema) for bench/compare commands."""
    if test is not None:
        names = scan_labels(dataset, fmt) | scan_labels(test, fmt)
        if len(names) < 2:
            raise ConfigError("dataset files contain fewer than 2 distinct labels")
        schema = LabelSchema(tuple(sorted(names)))
        pool_docs, _ = load_dataset(dataset, fmt, schema)
        eval_docs, _ = load_dataset(test, fmt, schema)
        return pool_docs, eval_docs, schema
    docs, schema = load_dataset(dataset, fmt, "infer")
    if protocol is Protocol.PAPER:
        return [], docs, schema
    pool_docs, eval_docs = split(docs, 0.5, seed)
    return pool_docs, eval_docs, schema


def _check_gold(pool_docs, eval_docs, protocol, strategy):
    """Strategy/data compatibility (exit 2) before oracle suitability (exit 3)."""
    selection_docs = eval_docs if protocol is Protocol.PAPER else pool_docs
    unlabeled = sum(1 for d in selection_docs if d.gold_label is None)
    if unlabeled and strategy is Strategy.MISCLASSIFIED_FIRST:
        _fail(EXIT_CONFIG, "misclassified_first needs gold labels in the selection pool; "
                           f"{unlabeled} document(s) are unlabeled")
    if unlabeled:
        _fail(EXIT_DATASET, f"simulated oracle needs gold labels; {unlabeled} "
                            "selection-pool document(s) are unlabeled")
    if any(d.gold_label is None for d in eval_docs):
        _fail(EXIT_DATASET, "eval documents must all carry gold labels")


def _run_one(pool_docs, eval_docs, schema, strategy, batch_size, max_labels,
             protocol, seed, noise) -> LearningCurve:
    config = SessionConfig(
        batch_size=batch_size,
        max_labels=max_labels,
        strategy=strategy,
        protocol=protocol,
        seed=seed,
    )
    selection_docs = eval_docs if protocol is Protocol.PAPER else pool_docs
    oracle = Oracle.from_documents(selection_docs, schema, noise_rate=noise, seed=seed)
    return run_benchmark(eval_docs, pool_docs, schema, config, oracle)


def _rounded_rows(curve: LearningCurve) -> list[tuple[int, float, float, float]]:
    """Metric values exactly as the 6-decimal CSV publishes them, so the
    summary aggregates what readers of the per-seed files would compute."""
    return [
        (
            m.n_labels,
            float(f"{m.accuracy:.6f}"),
            float(f"{m.precision_macro:.6f}"),
            float(f"{m.recall_macro:.6f}"),
        )
        for m in curve
    ]


def _summary_csv(per_seed_rows: dict[int, list[tuple[int, float, float, float]]]) -> str:
    header = ["n_labels"]
    for metric in _METRICS:
        header += [f"{metric}_mean", f"{metric}_min", f"{metric}_max"]
    lines = [",".join(header)]
    n_rounds = max(len(rows) for rows in per_seed_rows.values())
    for i in range(n_rounds):
        rows = [rows_[i] for rows_ in per_seed_rows.values() if i < len(rows_)]
        n_labels = rows[0][0]
        cells = [str(n_labels)]
        for col in (1, 2, 3):
            values = [r[col] for r in rows]
            mean = sum(values) / len(values)
            cells += [f"{mean:.9f}", f"{min(values):.9f}", f"{max(values):.9f}"]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _metric_svgs(outputs: _OutputSet, out_dir: Path,
                 series_by_metric: dict[str, dict[str, list[tuple[float, float]]]]):
    for metric, series in series_by_metric.items():
        outputs.write(out_dir / f"{metric}.svg",
                      svg.line_chart(series, title=metric, x_label="labels"))


@click.group()
def main():
    """Active-learning text classification engine."""


@main.command()
@click.option("--dataset", required=True, type=click.Path(), help="Train/pool file (or the whole dataset).")
@click.option("--test", type=click.Path(), default=None,
              help="Held-out eval file. Default: the dataset itself under paper_protocol, a seeded 50/50 split under pool_protocol.")
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default="csv", show_default=True)
@click.option("--strategy", type=click.Choice(_STRATEGIES), default=Strategy.MAX_ENTROPY.value, show_default=True)
@click.option("--batch-size", type=int, default=10, show_default=True)
@click.option("--max-labels", type=int, default=150, show_default=True)
@click.option("--protocol", type=click.Choice(_PROTOCOLS), default=Protocol.PAPER.value, show_default=True)
@click.option("--seed", "seeds", type=int, multiple=True, default=(42,), show_default=True, help="Repeatable.")
@click.option("--noise", type=float, default=0.0, show_default=True, help="Oracle wrong-label rate.")
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
@click.option("--svg", "emit_svg", is_flag=True, help="Also write one SVG chart per metric.")
def bench(dataset, test, fmt, strategy, batch_size, max_labels, protocol, seeds,
          noise, out_dir, emit_svg):
    """Seeded oracle benchmark: curve_seed{S}.csv per seed plus summary.csv."""
    strategy = Strategy.parse(strategy)
    protocol = Protocol.parse(protocol)
    try:
        SessionConfig(batch_size=batch_size, max_labels=max_labels,
                      strategy=strategy, protocol=protocol, seed=seeds[0])
        if not (0.0 <= noise <= 1.0):
            raise ConfigError(f"noise must be in [0, 1], got {noise}")
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))

    try:
        pool_docs, eval_docs, schema = _load_bench_data(dataset, test, fmt, protocol, seeds[0])
    except (LabelLoopError, OSError) as exc:
        _fail(EXIT_DATASET, str(exc))
    _check_gold(pool_docs, eval_docs, protocol, strategy)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    outputs = _OutputSet()
    try:
        per_seed_rows = {}
        for seed in seeds:
            curve = _run_one(pool_docs, eval_docs, schema, strategy, batch_size,
                             max_labels, protocol, seed, noise)
            outputs.write(out / f"curve_seed{seed}.csv", curve.to_csv())
            per_seed_rows[seed] = _rounded_rows(curve)
        outputs.write(out / "summary.csv", _summary_csv(per_seed_rows))
        if emit_svg:
            series_by_metric = {}
            for col, metric in enumerate(_METRICS, start=1):
                series_by_metric[metric] = {
                    f"seed {seed}": [(r[0], r[col]) for r in rows]
                    for seed, rows in per_seed_rows.items()
                }
            _metric_svgs(outputs, out, series_by_metric)
    except LabelLoopError as exc:
        outputs.discard_all()
        _fail(EXIT_DATASET, str(exc))
    except BaseException:
        outputs.discard_all()
        raise
    click.echo(f"wrote {len(outputs.paths)} file(s) to {out}")


@main.command()
@click.option("--dataset", required=True, type=click.Path())
@click.option("--test", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default="csv", show_default=True)
@click.option("--strategy", "strategies", type=click.Choice(_STRATEGIES), multiple=True,
              help="Repeatable; at least two distinct strategies.")
@click.option("--batch-size", type=int, default=10, show_default=True)
@click.option("--max-labels", type=int, default=150, show_default=True)
@click.option("--protocol", type=click.Choice(_PROTOCOLS), default=Protocol.PAPER.value, show_default=True)
@click.option("--seed", "seeds", type=int, multiple=True, default=(42,), show_default=True)
@click.option("--noise", type=float, default=0.0, show_default=True)
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
@click.option("--svg", "emit_svg", is_flag=True)
def compare(dataset, test, fmt, strategies, batch_size, max_labels, protocol, seeds,
            noise, out_dir, emit_svg):
    """Strategy comparison: long-format comparison.csv over strategies x seeds."""
    strategies = tuple(dict.fromkeys(strategies))  # dedupe, keep order
    if len(strategies) < 2:
        _fail(EXIT_CONFIG, "compare needs at least two distinct --strategy values")
    strategies = tuple(Strategy.parse(s) for s in strategies)
    protocol = Protocol.parse(protocol)
    try:
        SessionConfig(batch_size=batch_size, max_labels=max_labels,
                      strategy=strategies[0], protocol=protocol, seed=seeds[0])
        if not (0.0 <= noise <= 1.0):
            raise ConfigError(f"noise must be in [0, 1], got {noise}")
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))

    try:
        pool_docs, eval_docs, schema = _load_bench_data(dataset, test, fmt, protocol, seeds[0])
    except (LabelLoopError, OSError) as exc:
        _fail(EXIT_DATASET, str(exc))
    for strategy in strategies:
        _check_gold(pool_docs, eval_docs, protocol, strategy)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    outputs = _OutputSet()
    try:
        lines = ["strategy,seed," + CURVE_CSV_HEADER]
        mean_series: dict[str, dict[str, list[tuple[float, float]]]] = {
            metric: {} for metric in _METRICS
        }
        for strategy in strategies:
            rows_by_seed = {}
            for seed in seeds:
                curve = _run_one(pool_docs, eval_docs, schema, strategy, batch_size,
                                 max_labels, protocol, seed, noise)
                rows_by_seed[seed] = _rounded_rows(curve)
                for m in curve:
                    lines.append(f"{strategy.value},{seed},{m.csv_row()}")
            for col, metric in enumerate(_METRICS, start=1):
                n_rounds = len(next(iter(rows_by_seed.values())))
                points = []
                for i in range(n_rounds):
                    rows = [r[i] for r in rows_by_seed.values() if i < len(r)]
                    points.append((rows[0][0], sum(r[col] for r in rows) / len(rows)))
                mean_series[metric][strategy.value] = points
        outputs.write(out / "comparison.csv", "\n".join(lines) + "\n")
        if emit_svg:
            _metric_svgs(outputs, out, mean_series)
    except LabelLoopError as exc:
        outputs.discard_all()
        _fail(EXIT_DATASET, str(exc))
    except BaseException:
        outputs.discard_all()
        raise
    click.echo(f"wrote {len(outputs.paths)} file(s) to {out}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8234, show_default=True)
@click.option("--data-dir", required=True, type=click.Path(file_okay=False))
@click.option("--ui-dir", type=click.Path(file_okay=False), default=None,
              help="Serve a built frontend from this directory.")
def serve(host, port, data_dir, ui_dir):
    """Run the annotation HTTP service."""
    from .service import serve_forever

    try:
        serve_forever(host, port, data_dir, ui_dir)
    except OSError as exc:
        if exc.errno in (errno.EADDRINUSE, errno.EACCES):
            _fail(EXIT_PORT, f"cannot bind {host}:{port}: {exc}")
        raise


@main.command()
@click.option("--log", "log_path", required=True, type=click.Path())
@click.option("--data-dir", required=True, type=click.Path(file_okay=False),
              help="Data directory holding the dataset the log references.")
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
def export(log_path, data_dir, out_dir):
    """Replay a session event log into model/vocabulary/annotation artifacts."""
    from .service import DatasetRegistry

    log_path = Path(log_path)
    if not log_path.is_file():
        _fail(EXIT_DATASET, f"no session log at {log_path}")
    registry = DatasetRegistry(Path(data_dir) / "datasets")
    try:
        result = ev.replay(log_path, registry.documents_by_id)
    except LabelLoopError as exc:
        _fail(EXIT_DATASET, str(exc))
    except Exception as exc:  # registry resolution errors surface as exit 3
        _fail(EXIT_DATASET, str(exc))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    state = result.state
    _write_atomic(out / "model.json", json.dumps(state.model.to_json()))
    _write_atomic(out / "vocabulary.json", json.dumps(state.vocab.to_json()))
    _write_atomic(out / "annotations.jsonl",
                  "".join(json.dumps(a.to_json()) + "\n" for a in state.labeled))
    _write_atomic(out / "curve.csv", state.curve.to_csv())
    click.echo(f"exported session {state.session_id} ({state.round} round(s)) to {out}")


@main.command()
@click.option("--dataset", required=True, type=click.Path())
@click.option("--test", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default="csv", show_default=True)
@click.option("--name", required=True, help="Registry name for the dataset.")
@click.option("--data-dir", required=True, type=click.Path(file_okay=False))
def ingest(dataset, test, fmt, name, data_dir):
    """Validate a dataset file (pair) and copy it into the service registry."""
    datasets_dir = Path(data_dir) / "datasets"
    datasets_dir.mkdir(parents=True, exist_ok=True)
    try:
        if test is not None:
            names = scan_labels(dataset, fmt) | scan_labels(test, fmt)
            if len(names) < 2:
                raise ConfigError("dataset files contain fewer than 2 distinct labels")
            schema = LabelSchema(tuple(sorted(names)))
            load_dataset(dataset, fmt, schema)
            load_dataset(test, fmt, schema)
            shutil.copyfile(dataset, datasets_dir / f"{name}.train.{fmt}")
            shutil.copyfile(test, datasets_dir / f"{name}.test.{fmt}")
        else:
            load_dataset(dataset, fmt, "infer")
            shutil.copyfile(dataset, datasets_dir / f"{name}.{fmt}")
    except (LabelLoopError, OSError) as exc:
        _fail(EXIT_DATASET, str(exc))
    click.echo(f"ingested dataset {name!r} into {datasets_dir}")


@main.command()
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
@click.option("--pool", "n_pool", type=int, default=2000, show_default=True)
@click.option("--eval", "n_eval", type=int, default=1000, show_default=True)
@click.option("--classes", type=int, default=4, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
def synth(out_dir, n_pool, n_eval, classes, seed):
    """Write the synthetic keyword corpus as pool.csv + eval.csv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pool_docs, eval_docs, schema = synthetic_corpus(
        n_pool=n_pool, n_eval=n_eval, n_classes=classes, seed=seed
    )
    save_csv(out / "pool.csv", pool_docs, schema)
    save_csv(out / "eval.csv", eval_docs, schema)
    click.echo(f"wrote pool.csv ({len(pool_docs)} rows) and eval.csv ({len(eval_docs)} rows) to {out}")


if __name__ == "__main__":
    main()
