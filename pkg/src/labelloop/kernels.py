"""Numeric hot paths: batch logits, row softmax, and the training loop.

Two interchangeable implementations live here: numba @njit kernels and a
pure-numpy fallback. Selection order: the LABELLOOP_KERNELS environment
variable ("numba" | "numpy" | "auto", default auto), then set_backend().
Auto picks numba when it imports, numpy otherwise. Both paths implement
identical math; results agree to float tolerance but are not guaranteed
bit-identical across paths (different libm). Each path is deterministic.

Batches are CSR triples (indptr, indices, data) as produced by
featurizer.pack_csr.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

import numpy as np

from .errors import ConfigError

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


ENV_VAR = "LABELLOOP_KERNELS"


# pure-numpy implementations


def _logits_np(indptr, indices, data, weights, bias):
    n = len(indptr) - 1
    logits = np.broadcast_to(bias, (n, weights.shape[0])).copy()
    if len(indices):
        rows = np.repeat(np.arange(n), np.diff(indptr))
        np.add.at(logits, rows, data[:, None] * weights[:, indices].T)
    return logits


def _softmax_rows_np(logits):
    shifted = logits - logits.max(axis=1, keepdims=True)
    probs = np.exp(shifted)
    probs /= probs.sum(axis=1, keepdims=True)
    return probs


def _loss_grad_np(indptr, indices, data, labels, weights, bias, l2):
    n = len(indptr) - 1
    n_classes, n_features = weights.shape
    probs = _softmax_rows_np(_logits_np(indptr, indices, data, weights, bias))
    loss = float(-np.log(probs[np.arange(n), labels]).mean())
    loss += 0.5 * l2 * float(np.sum(weights * weights))
    residual = probs
    residual[np.arange(n), labels] -= 1.0
    residual /= n
    grad_b = residual.sum(axis=0)
    grad_w_t = np.zeros((n_features, n_classes))
    if len(indices):
        rows = np.repeat(np.arange(n), np.diff(indptr))
        np.add.at(grad_w_t, indices, data[:, None] * residual[rows])
    grad_w = grad_w_t.T + l2 * weights
    return loss, grad_w, grad_b


def _train_np(indptr, indices, data, labels, n_classes, n_features, lr, epochs, l2):
    weights = np.zeros((n_classes, n_features))
    bias = np.zeros(n_classes)
    for _ in range(epochs):
        _, grad_w, grad_b = _loss_grad_np(indptr, indices, data, labels, weights, bias, l2)
        weights -= lr * grad_w
        bias -= lr * grad_b
    return weights, bias


# numba implementations (same math, fused loops)


@njit(cache=True)
def _logits_nb(indptr, indices, data, weights, bias):
    n = indptr.shape[0] - 1
    n_classes = weights.shape[0]
    logits = np.empty((n, n_classes))
    for i in range(n):
        for c in range(n_classes):
            logits[i, c] = bias[c]
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            v = data[k]
            for c in range(n_classes):
                logits[i, c] += v * weights[c, j]
    return logits


@njit(cache=True)
def _softmax_rows_nb(logits):
    n, n_classes = logits.shape
    probs = np.empty_like(logits)
    for i in range(n):
        top = logits[i, 0]
        for c in range(1, n_classes):
            if logits[i, c] > top:
                top = logits[i, c]
        total = 0.0
        for c in range(n_classes):
            e = np.exp(logits[i, c] - top)
            probs[i, c] = e
            total += e
        for c in range(n_classes):
            probs[i, c] /= total
    return probs


@njit(cache=True)
def _loss_grad_nb(indptr, indices, data, labels, weights, bias, l2):
    n = indptr.shape[0] - 1
    n_classes, n_features = weights.shape
    probs = _softmax_rows_nb(_logits_nb(indptr, indices, data, weights, bias))
    loss = 0.0
    for i in range(n):
        loss += -np.log(probs[i, labels[i]])
    loss /= n
    reg = 0.0
    for c in range(n_classes):
        for j in range(n_features):
            reg += weights[c, j] * weights[c, j]
    loss += 0.5 * l2 * reg

    grad_w = np.zeros((n_classes, n_features))
    grad_b = np.zeros(n_classes)
    for i in range(n):
        for c in range(n_classes):
            d = probs[i, c]
            if c == labels[i]:
                d -= 1.0
            d /= n
            probs[i, c] = d
            grad_b[c] += d
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            v = data[k]
            for c in range(n_classes):
                grad_w[c, j] += v * probs[i, c]
    for c in range(n_classes):
        for j in range(n_features):
            grad_w[c, j] += l2 * weights[c, j]
    return loss, grad_w, grad_b


@njit(cache=True)
def _train_nb(indptr, indices, data, labels, n_classes, n_features, lr, epochs, l2):
    weights = np.zeros((n_classes, n_features))
    bias = np.zeros(n_classes)
    for _ in range(epochs):
        _, grad_w, grad_b = _loss_grad_nb(indptr, indices, data, labels, weights, bias, l2)
        for c in range(n_classes):
            bias[c] -= lr * grad_b[c]
            for j in range(n_features):
                weights[c, j] -= lr * grad_w[c, j]
    return weights, bias


_IMPLS = {
    "numpy": {
        "logits": _logits_np,
        "softmax_rows": _softmax_rows_np,
        "loss_grad": _loss_grad_np,
        "train": _train_np,
    },
    "numba": {
        "logits": _logits_nb,
        "softmax_rows": _softmax_rows_nb,
        "loss_grad": _loss_grad_nb,
        "train": _train_nb,
    },
}


def _resolve(name: str) -> str:
    if name == "auto":
        return "numba" if HAVE_NUMBA else "numpy"
    if name == "numba":
        if not HAVE_NUMBA:
            raise ConfigError("LABELLOOP_KERNELS=numba but numba is not installed")
        return "numba"
    if name == "numpy":
        return "numpy"
    raise ConfigError(f"unknown kernel backend {name!r}; expected numba|numpy|auto")


_ACTIVE = _resolve(os.environ.get(ENV_VAR, "auto"))


def active_backend() -> str:
    return _ACTIVE


def set_backend(name: str) -> None:
    global _ACTIVE
    _ACTIVE = _resolve(name)


@contextmanager
def use_backend(name: str):
    previous = _ACTIVE
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def logits(indptr, indices, data, weights, bias) -> np.ndarray:
    return _IMPLS[_ACTIVE]["logits"](indptr, indices, data, weights, bias)


def softmax_rows(logits_matrix: np.ndarray) -> np.ndarray:
    return _IMPLS[_ACTIVE]["softmax_rows"](logits_matrix)


def loss_grad(indptr, indices, data, labels, weights, bias, l2):
    return _IMPLS[_ACTIVE]["loss_grad"](indptr, indices, data, labels, weights, bias, l2)


def train_from_zero(indptr, indices, data, labels, n_classes, n_features, lr, epochs, l2):
    return _IMPLS[_ACTIVE]["train"](
        indptr, indices, data, labels, n_classes, n_features, lr, epochs, l2
    )


def warmup() -> None:
    """Trigger JIT compilation on tiny inputs so timings exclude compile cost."""
    if _ACTIVE != "numba":
        return
    indptr = np.array([0, 1, 2], dtype=np.int64)
    indices = np.array([0, 1], dtype=np.int64)
    data = np.array([1.0, 1.0])
    labels = np.array([0, 1], dtype=np.int64)
    train_from_zero(indptr, indices, data, labels, 2, 2, 0.1, 2, 0.0)
    softmax_rows(logits(indptr, indices, data, np.zeros((2, 2)), np.zeros(2)))
    loss_grad(indptr, indices, data, labels, np.zeros((2, 2)), np.zeros(2), 0.0)
