import random

import numpy as np
import pytest

from labelloop.errors import EmptyEval, IndexOutOfRange, LengthMismatch
from labelloop.evaluation import (
    LearningCurve,
    RoundMetrics,
    confusion_matrix,
    metrics_from_confusion,
)


class TestConfusionMatrix:
    def test_perfect_diagonal(self):
        m = confusion_matrix([0, 1, 2, 1, 0], [0, 1, 2, 1, 0], 3)
        assert m.trace() == 5
        assert m.sum() == 5

    def test_all_wrong_zero_diagonal(self):
        m = confusion_matrix([1, 0], [0, 1], 2)
        assert m.trace() == 0

    def test_hand_counted(self):
        m = confusion_matrix([0, 1, 1, 2], [0, 0, 1, 2], 3)
        assert m.tolist() == [[1, 1, 0], [0, 1, 0], [0, 0, 1]]

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            confusion_matrix([0, 1], [0], 2)

    def test_empty(self):
        with pytest.raises(EmptyEval):
            confusion_matrix([], [], 2)

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            confusion_matrix([0, 3], [0, 1], 2)


class TestMetrics:
    def test_perfect(self):
        m = confusion_matrix([0, 1, 1, 2], [0, 1, 1, 2], 3)
        assert metrics_from_confusion(m) == (1.0, 1.0, 1.0)

    def test_hand_computed_example(self):
        m = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
        accuracy, precision, recall = metrics_from_confusion(m)
        assert accuracy == pytest.approx(0.75)
        assert precision == pytest.approx((1 / 1 + 1 / 2 + 1 / 1) / 3, abs=1e-12)
        assert recall == pytest.approx((1 / 2 + 1 / 1 + 1 / 1) / 3, abs=1e-12)

    def test_absent_class_scores_zero_but_counts(self):
        # class 2 never appears in gold or predictions
        m = confusion_matrix([0, 1], [0, 1], 3)
        accuracy, precision, recall = metrics_from_confusion(m)
        assert accuracy == 1.0
        assert precision == pytest.approx(2 / 3)
        assert recall == pytest.approx(2 / 3)

    def test_accuracy_equals_indicator_mean(self):
        rng = random.Random(8)
        for _ in range(30):
            n = rng.randint(1, 50)
            c = rng.randint(2, 5)
            gold = [rng.randrange(c) for _ in range(n)]
            pred = [rng.randrange(c) for _ in range(n)]
            m = confusion_matrix(pred, gold, c)
            accuracy, precision, recall = metrics_from_confusion(m)
            assert accuracy == pytest.approx(
                sum(p == g for p, g in zip(pred, gold)) / n, abs=1e-12
            )
            assert 0.0 <= precision <= 1.0
            assert 0.0 <= recall <= 1.0

    def test_joint_permutation_invariance(self):
        rng = random.Random(9)
        gold = [rng.randrange(3) for _ in range(40)]
        pred = [rng.randrange(3) for _ in range(40)]
        base = metrics_from_confusion(confusion_matrix(pred, gold, 3))
        order = list(range(40))
        rng.shuffle(order)
        shuffled = metrics_from_confusion(
            confusion_matrix([pred[i] for i in order], [gold[i] for i in order], 3)
        )
        assert base == shuffled

    def test_empty_matrix(self):
        with pytest.raises(EmptyEval):
            metrics_from_confusion(np.zeros((3, 3)))


class TestLearningCurve:
    def metrics(self, n_labels):
        return RoundMetrics.from_predictions([0, 1], [0, 1], 2, n_labels=n_labels)

    def test_strictly_increasing_labels(self):
        curve = LearningCurve()
        curve.append(self.metrics(0))
        curve.append(self.metrics(10))
        with pytest.raises(ValueError):
            curve.append(self.metrics(10))

    def test_csv_format(self):
        curve = LearningCurve()
        curve.append(self.metrics(0))
        curve.append(self.metrics(10))
        lines = curve.to_csv().splitlines()
        assert lines[0] == "n_labels,accuracy,precision_macro,recall_macro"
        assert lines[1] == "0,1.000000,1.000000,1.000000"
        assert len(lines) == 3

    def test_json_skips_missing_entropy(self):
        plain = self.metrics(0).to_json()
        assert "mean_pool_entropy" not in plain
        with_h = RoundMetrics.from_predictions([0, 1], [0, 1], 2, 0, mean_pool_entropy=0.5)
        assert with_h.to_json()["mean_pool_entropy"] == 0.5
