"""Shared classifier contract: configs, input checks, scores -> labels/probabilities.

All three model kinds expose ``decision_scores(X) -> (n, 4)``; prediction is
the argmax over scores (ties break toward the lowest class index, which is
what np.argmax does) and predicted probabilities are the softmax of the same
scores.  For the neural network the softmax IS its output layer; for the SVM
and the boosted trees it is the documented convention turning raw per-class
scores into late-fusion-ready probability vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..dataset import N_CLASSES

__all__ = [
    "SvmConfig",
    "MlpConfig",
    "GbtConfig",
    "TrainConfig",
    "TrainingDataError",
    "check_training_data",
    "check_predict_input",
    "softmax_rows",
    "predict",
    "predict_proba",
]


@dataclass(frozen=True)
class SvmConfig:
    c_penalty: float = 1.0
    tolerance: float = 1e-4
    max_iterations: int = 10_000  # epochs over the dual

    def __post_init__(self) -> None:
        if self.c_penalty <= 0 or self.tolerance <= 0 or self.max_iterations <= 0:
            raise ValueError("SvmConfig values must be positive")


@dataclass(frozen=True)
class MlpConfig:
    hidden_width: int = 256
    learning_rate: float = 1e-3
    epochs: int = 50
    batch_size: int = 32

    def __post_init__(self) -> None:
        if self.hidden_width <= 0 or self.learning_rate <= 0 or self.batch_size <= 0:
            raise ValueError("MlpConfig values must be positive")
        if self.epochs < 0:
            raise ValueError("epochs must be nonnegative")


@dataclass(frozen=True)
class GbtConfig:
    rounds: int = 100
    max_depth: int = 4
    shrinkage: float = 0.1

    def __post_init__(self) -> None:
        if self.rounds < 0:
            raise ValueError("rounds must be nonnegative")
        if self.max_depth <= 0 or self.shrinkage <= 0:
            raise ValueError("max_depth and shrinkage must be positive")


@dataclass(frozen=True)
class TrainConfig:
    seed: int = 0
    svm: SvmConfig = field(default_factory=SvmConfig)
    mlp: MlpConfig = field(default_factory=MlpConfig)
    gbt: GbtConfig = field(default_factory=GbtConfig)


class TrainingDataError(ValueError):
    pass


def check_training_data(X, y) -> tuple[np.ndarray, np.ndarray]:
    """Validate and canonicalize (X, y) for training; returns float64/int64."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64).ravel()
    if X.ndim != 2:
        raise TrainingDataError(f"X must be 2-D, got shape {X.shape}")
    if X.shape[0] != y.shape[0]:
        raise TrainingDataError(f"{X.shape[0]} rows but {y.shape[0]} labels")
    if X.shape[0] < 2:
        raise TrainingDataError("need at least 2 training rows")
    if not np.isfinite(X).all():
        raise TrainingDataError("X contains NaN or Inf")
    if y.min() < 0 or y.max() >= N_CLASSES:
        raise TrainingDataError(f"labels must be in 0..{N_CLASSES - 1}")
    if np.unique(y).size < 2:
        raise TrainingDataError("training data contains a single class")
    return X, y


def check_predict_input(X, dim: int) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"X must be 2-D, got shape {X.shape}")
    if X.shape[1] != dim:
        raise ValueError(f"X has dim {X.shape[1]}, model expects {dim}")
    return X


def softmax_rows(scores: np.ndarray) -> np.ndarray:
    scores = np.atleast_2d(np.asarray(scores, dtype=np.float64))
    shifted = scores - scores.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def predict(model, X) -> np.ndarray:
    """Class labels by argmax over decision scores; ties -> lowest index."""
    X = check_predict_input(X, model.dim)
    if X.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    return np.argmax(model.decision_scores(X), axis=1).astype(np.int64)


def predict_proba(model, X) -> np.ndarray:
    """Per-class probability rows (softmax of decision scores)."""
    X = check_predict_input(X, model.dim)
    if X.shape[0] == 0:
        return np.empty((0, N_CLASSES), dtype=np.float64)
    return softmax_rows(model.decision_scores(X))
