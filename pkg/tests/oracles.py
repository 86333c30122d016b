"""Independent oracles used to freeze expected test values.

Everything here deliberately avoids the library's own code paths: metrics
are recounted pair by pair in pure Python, separability is certified by a
perceptron, stump-separability by threshold enumeration, and linear
baselines by a least-squares probe.
"""

from __future__ import annotations

import numpy as np


def recount_confusion(y_true, y_pred) -> list[list[int]]:
    counts = [[0] * 4 for _ in range(4)]
    for t, p in zip(list(y_true), list(y_pred)):
        counts[int(t)][int(p)] += 1
    return counts


def recount_metrics(counts: list[list[int]]) -> dict:
    total = sum(sum(row) for row in counts)
    correct = sum(counts[c][c] for c in range(4))
    accuracy = correct / total
    precision, recall, f1, support = [], [], [], []
    for c in range(4):
        tp = counts[c][c]
        colsum = sum(counts[r][c] for r in range(4))
        rowsum = sum(counts[c])
        p = tp / colsum if colsum > 0 else 0.0
        r = tp / rowsum if rowsum > 0 else 0.0
        f = 2.0 * p * r / (p + r) if (p + r) > 0.0 else 0.0
        precision.append(p)
        recall.append(r)
        f1.append(f)
        support.append(rowsum)
    return {
        "accuracy": accuracy,
        "precision": precision,
        "recall": recall,
        "f1": f1,
        "support": support,
        "macro_precision": sum(precision) / 4,
        "macro_recall": sum(recall) / 4,
        "macro_f1": sum(f1) / 4,
        "weighted_precision": sum(x * s for x, s in zip(precision, support)) / total,
        "weighted_recall": sum(x * s for x, s in zip(recall, support)) / total,
        "weighted_f1": sum(x * s for x, s in zip(f1, support)) / total,
    }


def perceptron_separable(X, y_pm, max_epochs: int = 2000) -> bool:
    """Certify linear separability of a +-1 problem (bias included)."""
    X = np.asarray(X, dtype=np.float64)
    y_pm = np.asarray(y_pm, dtype=np.float64)
    Xa = np.hstack([X, np.ones((X.shape[0], 1))])
    w = np.zeros(Xa.shape[1])
    for _ in range(max_epochs):
        mistakes = 0
        for i in range(Xa.shape[0]):
            if y_pm[i] * (w @ Xa[i]) <= 0.0:
                w += y_pm[i] * Xa[i]
                mistakes += 1
        if mistakes == 0:
            return True
    return False


def one_vs_rest_separable(X, y, n_classes: int = 4) -> bool:
    return all(
        perceptron_separable(X, np.where(np.asarray(y) == c, 1.0, -1.0))
        for c in range(n_classes)
    )


def stump_accuracy(X, y) -> float:
    """Best single-threshold split on feature 0 (labels assigned per side)."""
    x0 = np.asarray(X, dtype=np.float64)[:, 0]
    y = np.asarray(y)
    best = 0.0
    values = np.unique(x0)
    thresholds = (values[1:] + values[:-1]) / 2.0
    for thr in thresholds:
        left = x0 <= thr
        for side_labels in [(a, b) for a in range(4) for b in range(4)]:
            pred = np.where(left, side_labels[0], side_labels[1])
            best = max(best, float((pred == y).mean()))
    return best


def linear_probe_accuracy(X, y) -> float:
    """Least-squares one-hot linear classifier; an upper-bound-ish linear
    baseline used to certify that a dataset is not linearly solvable."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    Xa = np.hstack([X, np.ones((X.shape[0], 1))])
    Y = np.eye(4)[y]
    W, *_ = np.linalg.lstsq(Xa, Y, rcond=None)
    pred = np.argmax(Xa @ W, axis=1)
    return float((pred == y).mean())
