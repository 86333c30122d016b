"""Gradient-boosted regression trees for 4-class softmax cross-entropy.

Per boosting round, one depth-limited tree per class is fitted to the
negative gradient of the softmax loss at the scores from the previous round.
Splits are exact greedy over all features and all midpoints between distinct
adjacent sorted values, scored with the Newton gain G_L^2/H_L + G_R^2/H_R -
G^2/H; leaf values are one Newton step -G/H.  Shrinkage scales every leaf
contribution.  Training is fully deterministic (no subsampling).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..dataset import N_CLASSES
from .common import TrainConfig, check_training_data, softmax_rows

__all__ = ["TreeNodes", "GbtModel", "train_gbt"]

_EPS = 1e-16


@dataclass(frozen=True)
class TreeNodes:
    """One regression tree as flat node arrays; feature == -1 marks a leaf."""

    feature: np.ndarray  # (n_nodes,) int32
    threshold: np.ndarray  # (n_nodes,) float64
    left: np.ndarray  # (n_nodes,) int32
    right: np.ndarray  # (n_nodes,) int32
    value: np.ndarray  # (n_nodes,) float64

    def __len__(self) -> int:
        return len(self.feature)

    def predict(self, X: np.ndarray) -> np.ndarray:
        idx = np.zeros(X.shape[0], dtype=np.int64)
        while True:
            feat = self.feature[idx]
            internal = feat >= 0
            if not internal.any():
                return self.value[idx]
            rows = np.nonzero(internal)[0]
            cur = idx[rows]
            go_left = X[rows, feat[rows]] <= self.threshold[cur]
            idx[rows] = np.where(go_left, self.left[cur], self.right[cur])


class _TreeBuilder:
    def __init__(self) -> None:
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []

    def add(self) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(0.0)
        return len(self.feature) - 1

    def finish(self) -> TreeNodes:
        return TreeNodes(
            feature=np.array(self.feature, dtype=np.int32),
            threshold=np.array(self.threshold, dtype=np.float64),
            left=np.array(self.left, dtype=np.int32),
            right=np.array(self.right, dtype=np.int32),
            value=np.array(self.value, dtype=np.float64),
        )


def _best_split(Xn: np.ndarray, g: np.ndarray, h: np.ndarray):
    """Exact greedy split; returns (feature, threshold, left_mask) or None.

    All candidate positions of all features are scored at once; ties resolve
    to the first maximal gain in (position, feature) scan order.
    """
    m, d = Xn.shape
    if m < 2:
        return None
    order = np.argsort(Xn, axis=0, kind="stable")
    x_sorted = np.take_along_axis(Xn, order, axis=0)
    gl = np.cumsum(g[order], axis=0)[:-1]
    hl = np.cumsum(h[order], axis=0)[:-1]
    g_tot = g.sum()
    h_tot = h.sum()
    gr = g_tot - gl
    hr = h_tot - hl
    gain = gl**2 / (hl + _EPS) + gr**2 / (hr + _EPS) - g_tot**2 / (h_tot + _EPS)
    distinct = x_sorted[1:] > x_sorted[:-1]
    gain = np.where(distinct, gain, -np.inf)
    flat = int(np.argmax(gain))
    pos, feat = divmod(flat, d)
    best = gain[pos, feat]
    if not np.isfinite(best) or best <= 1e-12:
        return None
    thr = 0.5 * (x_sorted[pos, feat] + x_sorted[pos + 1, feat])
    left_mask = Xn[:, feat] <= thr
    n_left = int(left_mask.sum())
    if n_left == 0 or n_left == m:  # midpoint rounding collapsed the split
        return None
    return feat, float(thr), left_mask


def _grow(builder: _TreeBuilder, Xn, g, h, depth: int, max_depth: int) -> int:
    node = builder.add()
    split = None if depth >= max_depth else _best_split(Xn, g, h)
    if split is None:
        builder.value[node] = float(-g.sum() / (h.sum() + _EPS))
        return node
    feat, thr, left_mask = split
    builder.feature[node] = feat
    builder.threshold[node] = thr
    builder.left[node] = _grow(
        builder, Xn[left_mask], g[left_mask], h[left_mask], depth + 1, max_depth
    )
    builder.right[node] = _grow(
        builder, Xn[~left_mask], g[~left_mask], h[~left_mask], depth + 1, max_depth
    )
    return node


def _fit_tree(X, g, h, max_depth: int) -> TreeNodes:
    builder = _TreeBuilder()
    _grow(builder, X, g, h, 0, max_depth)
    return builder.finish()


@dataclass(frozen=True)
class GbtModel:
    input_dim: int
    shrinkage: float
    trees: tuple[tuple[TreeNodes, ...], ...]  # [round][class]
    loss_history: tuple[float, ...] = field(default=(), repr=False)

    @property
    def dim(self) -> int:
        return self.input_dim

    @property
    def n_trees(self) -> int:
        return sum(len(r) for r in self.trees)

    def decision_scores(self, X: np.ndarray) -> np.ndarray:
        scores = np.zeros((X.shape[0], N_CLASSES))
        for round_trees in self.trees:
            for c, tree in enumerate(round_trees):
                scores[:, c] += self.shrinkage * tree.predict(X)
        return scores


def train_gbt(X, y, cfg: TrainConfig) -> GbtModel:
    """Boost rounds x 4 trees; with rounds=0 every prediction is uniform."""
    X, y = check_training_data(X, y)
    gbt_cfg = cfg.gbt
    n = X.shape[0]
    Y = np.eye(N_CLASSES)[y]
    scores = np.zeros((n, N_CLASSES))
    all_rounds: list[tuple[TreeNodes, ...]] = []
    history: list[float] = []
    for _ in range(gbt_cfg.rounds):
        probs = softmax_rows(scores)
        round_trees = []
        for c in range(N_CLASSES):
            g = probs[:, c] - Y[:, c]
            h = np.maximum(probs[:, c] * (1.0 - probs[:, c]), _EPS)
            tree = _fit_tree(X, g, h, gbt_cfg.max_depth)
            scores[:, c] += gbt_cfg.shrinkage * tree.predict(X)
            round_trees.append(tree)
        all_rounds.append(tuple(round_trees))
        p_now = softmax_rows(scores)
        history.append(float(-np.mean(np.log(p_now[np.arange(n), y] + 1e-300))))
    return GbtModel(
        input_dim=X.shape[1],
        shrinkage=gbt_cfg.shrinkage,
        trees=tuple(all_rounds),
        loss_history=tuple(history),
    )
