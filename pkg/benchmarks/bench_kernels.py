"""Numba vs pure-numpy kernel benchmark.

Times the two paths that dominate a benchmark run - full-batch training
epochs over a small labeled set, and probability scoring of a large
unlabeled pool - on synthetic CSR data shaped like a mid-size text corpus
(50k features, ~40 nonzeros per row). Also reports the worst numeric
deviation between the two paths.

Run:

    python benchmarks/bench_kernels.py

If numba is not installed only the numpy path runs.
"""

import statistics
import time

import numpy as np

from labelloop import kernels


def make_csr(rng, n_rows, n_features, nnz_per_row):
    indptr = np.arange(0, (n_rows + 1) * nnz_per_row, nnz_per_row, dtype=np.int64)
    indices = np.empty(n_rows * nnz_per_row, dtype=np.int64)
    for i in range(n_rows):
        start = i * nnz_per_row
        indices[start:start + nnz_per_row] = np.sort(
            rng.choice(n_features, size=nnz_per_row, replace=False)
        )
    data = rng.random(n_rows * nnz_per_row)
    # unit-normalize rows to mirror real feature vectors
    for i in range(n_rows):
        row = slice(indptr[i], indptr[i + 1])
        data[row] /= np.linalg.norm(data[row])
    return indptr, indices, data


def time_call(fn, repeats=5):
    durations = []
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        durations.append(time.perf_counter() - t0)
    return result, statistics.mean(durations), statistics.pstdev(durations)


def main():
    n_classes, n_features = 10, 50_000
    n_train, n_pool, nnz = 150, 5_000, 40
    epochs, lr, l2 = 200, 0.5, 1e-3

    rng = np.random.default_rng(42)
    train_csr = make_csr(rng, n_train, n_features, nnz)
    train_labels = rng.integers(0, n_classes, size=n_train).astype(np.int64)
    pool_csr = make_csr(rng, n_pool, n_features, nnz)

    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    if not kernels.HAVE_NUMBA:
        print("numba not installed; timing the numpy path only")

    results = {}
    for backend in backends:
        with kernels.use_backend(backend):
            kernels.warmup()  # exclude JIT compilation from timings

            (weights, bias), train_mean, train_std = time_call(
                lambda: kernels.train_from_zero(
                    *train_csr, train_labels, n_classes, n_features, lr, epochs, l2
                )
            )
            probs, score_mean, score_std = time_call(
                lambda: kernels.softmax_rows(kernels.logits(*pool_csr, weights, bias))
            )
        results[backend] = {
            "train": (train_mean, train_std),
            "score": (score_mean, score_std),
            "weights": weights,
            "probs": probs,
        }
        print(f"{backend:>6}  train {n_train}x{epochs} epochs: "
              f"{train_mean:.3f}s ± {train_std:.3f}   "
              f"score {n_pool}-doc pool: {score_mean:.3f}s ± {score_std:.3f}")

    if len(results) == 2:
        dw = np.max(np.abs(results["numpy"]["weights"] - results["numba"]["weights"]))
        dp = np.max(np.abs(results["numpy"]["probs"] - results["numba"]["probs"]))
        speedup_train = results["numpy"]["train"][0] / results["numba"]["train"][0]
        speedup_score = results["numpy"]["score"][0] / results["numba"]["score"][0]
        print(f"\nmax |Δweights| = {dw:.2e}   max |Δprobs| = {dp:.2e}")
        print(f"numba speedup: train x{speedup_train:.1f}, scoring x{speedup_score:.1f}")


if __name__ == "__main__":
    main()
