import dataclasses

import numpy as np

from emofuse.classifiers import GbtConfig, TrainConfig, predict, predict_proba, train_gbt
from conftest import FAST_TRAIN
from oracles import stump_accuracy


def stump_dataset(seed=0, n=60):
    """Two classes perfectly split by one threshold on feature 0; the other
    features are distractor noise."""
    rng = np.random.default_rng(seed)
    x0 = np.concatenate([rng.uniform(-2.0, -0.5, n // 2), rng.uniform(0.5, 2.0, n // 2)])
    y = np.concatenate([np.zeros(n // 2, int), np.ones(n // 2, int)])
    noise = rng.normal(size=(n, 3))
    X = np.column_stack([x0, noise])
    perm = rng.permutation(n)
    return X[perm], y[perm]


def test_stump_separable_reaches_full_accuracy_fast():
    X, y = stump_dataset()
    assert stump_accuracy(X, y) == 1.0  # certify the construction first
    cfg = TrainConfig(gbt=GbtConfig(rounds=10, max_depth=1, shrinkage=0.5))
    model = train_gbt(X, y, cfg)
    assert (predict(model, X) == y).mean() == 1.0
    assert model.n_trees == 10 * 4


def test_loss_non_increasing_per_round():
    X, y = stump_dataset(seed=1)
    cfg = TrainConfig(gbt=GbtConfig(rounds=30, max_depth=2, shrinkage=0.2))
    model = train_gbt(X, y, cfg)
    losses = np.array(model.loss_history)
    assert len(losses) == 30
    assert (np.diff(losses) <= 1e-12).all()


def test_loss_non_increasing_on_synthetic(small_data):
    X = small_data.text.vectors.astype(np.float64)
    y = small_data.manifest.labels()
    model = train_gbt(X, y, FAST_TRAIN)
    losses = np.array(model.loss_history)
    assert (np.diff(losses) <= 1e-12).all()


def test_zero_rounds_gives_uniform_probabilities():
    rng = np.random.default_rng(2)
    X = rng.normal(size=(10, 3))
    y = rng.integers(0, 4, size=10)
    cfg = TrainConfig(gbt=GbtConfig(rounds=0))

    model = train_gbt(X, y, cfg)
    probs = predict_proba(model, X)
    assert np.array_equal(probs, np.full((10, 4), 0.25))
    assert model.n_trees == 0


def test_separable_synthetic(small_data):
    X = small_data.speech.vectors.astype(np.float64)
    y = small_data.manifest.labels()
    model = train_gbt(X, y, FAST_TRAIN)
    assert (predict(model, X) == y).mean() >= 0.99


def test_leaves_are_finite(small_data):
    X = small_data.video.vectors.astype(np.float64)
    y = small_data.manifest.labels()
    model = train_gbt(X, y, dataclasses.replace(FAST_TRAIN, gbt=GbtConfig(rounds=5)))
    for round_trees in model.trees:
        assert len(round_trees) == 4
        for tree in round_trees:
            assert np.isfinite(tree.value).all()


def test_depth_limit_respected():
    X, y = stump_dataset(seed=3)
    cfg = TrainConfig(gbt=GbtConfig(rounds=3, max_depth=1))
    model = train_gbt(X, y, cfg)
    for round_trees in model.trees:
        for tree in round_trees:
            assert len(tree) <= 3  # a depth-1 tree has at most 3 nodes


def test_determinism():
    X, y = stump_dataset(seed=4)
    cfg = TrainConfig(gbt=GbtConfig(rounds=8, max_depth=3))
    a = train_gbt(X, y, cfg)
    b = train_gbt(X, y, cfg)
    assert a.loss_history == b.loss_history
    assert np.array_equal(a.decision_scores(X), b.decision_scores(X))
