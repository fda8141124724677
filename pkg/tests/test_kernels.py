import numpy as np
import pytest

from labelloop import kernels
from labelloop.errors import ConfigError


def random_csr(rng, n_rows, n_features, density=0.3):
    indptr = [0]
    indices = []
    data = []
    for _ in range(n_rows):
        nnz = max(1, int(density * n_features))
        cols = sorted(rng.choice(n_features, size=nnz, replace=False))
        indices.extend(cols)
        data.extend(rng.standard_normal(nnz))
        indptr.append(len(indices))
    return (
        np.array(indptr, dtype=np.int64),
        np.array(indices, dtype=np.int64),
        np.array(data, dtype=np.float64),
    )


@pytest.fixture
def instance():
    rng = np.random.default_rng(99)
    n, C, V = 12, 4, 15
    indptr, indices, data = random_csr(rng, n, V)
    labels = rng.integers(0, C, size=n).astype(np.int64)
    weights = rng.standard_normal((C, V)) * 0.3
    bias = rng.standard_normal(C) * 0.1
    return indptr, indices, data, labels, weights, bias


def test_backend_selection_round_trip():
    original = kernels.active_backend()
    with kernels.use_backend("numpy"):
        assert kernels.active_backend() == "numpy"
    assert kernels.active_backend() == original
    with pytest.raises(ConfigError):
        kernels.set_backend("cuda")


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
class TestBackendParity:
    def test_logits_and_softmax_agree(self, instance):
        indptr, indices, data, labels, weights, bias = instance
        with kernels.use_backend("numpy"):
            z_np = kernels.logits(indptr, indices, data, weights, bias)
            p_np = kernels.softmax_rows(z_np)
        with kernels.use_backend("numba"):
            z_nb = kernels.logits(indptr, indices, data, weights, bias)
            p_nb = kernels.softmax_rows(z_nb)
        assert np.max(np.abs(z_np - z_nb)) < 1e-12
        assert np.max(np.abs(p_np - p_nb)) < 1e-12

    def test_loss_grad_agree(self, instance):
        indptr, indices, data, labels, weights, bias = instance
        with kernels.use_backend("numpy"):
            l_np, gw_np, gb_np = kernels.loss_grad(indptr, indices, data, labels, weights, bias, 1e-3)
        with kernels.use_backend("numba"):
            l_nb, gw_nb, gb_nb = kernels.loss_grad(indptr, indices, data, labels, weights, bias, 1e-3)
        assert abs(l_np - l_nb) < 1e-12
        assert np.max(np.abs(gw_np - gw_nb)) < 1e-12
        assert np.max(np.abs(gb_np - gb_nb)) < 1e-12

    def test_training_agrees_to_tolerance(self, instance):
        indptr, indices, data, labels, weights, bias = instance
        args = (indptr, indices, data, labels, 4, 15, 0.5, 100, 1e-3)
        with kernels.use_backend("numpy"):
            w_np, b_np = kernels.train_from_zero(*args)
        with kernels.use_backend("numba"):
            w_nb, b_nb = kernels.train_from_zero(*args)
        assert np.max(np.abs(w_np - w_nb)) < 1e-9
        assert np.max(np.abs(b_np - b_nb)) < 1e-9


def test_training_deterministic_within_backend(instance):
    indptr, indices, data, labels, *_ = instance
    args = (indptr, indices, data, labels, 4, 15, 0.5, 50, 1e-3)
    w1, b1 = kernels.train_from_zero(*args)
    w2, b2 = kernels.train_from_zero(*args)
    assert np.array_equal(w1, w2)
    assert np.array_equal(b1, b2)


def test_empty_rows_get_bias_only_logits():
    indptr = np.array([0, 0, 0], dtype=np.int64)
    indices = np.empty(0, dtype=np.int64)
    data = np.empty(0, dtype=np.float64)
    bias = np.array([0.5, -0.5])
    z = kernels.logits(indptr, indices, data, np.zeros((2, 4)), bias)
    assert np.allclose(z, np.tile(bias, (2, 1)))
