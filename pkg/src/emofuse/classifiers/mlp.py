"""Two-layer neural network: input -> rectified hidden layer -> softmax.

Trained with mini-batch gradient descent on the softmax cross-entropy.
Initialization is seeded and documented: first-layer weights are He-normal
(std sqrt(2/fan_in)), hidden biases small normal (std 0.1, which also keeps
finite-difference checks away from rectifier kinks at zero input),
second-layer weights normal with std sqrt(1/hidden), output biases zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..dataset import N_CLASSES
from .common import TrainConfig, check_training_data, softmax_rows

__all__ = ["MlpModel", "train_mlp", "mlp_grad_check"]


@dataclass(frozen=True)
class MlpModel:
    w1: np.ndarray  # (dim, hidden)
    b1: np.ndarray  # (hidden,)
    w2: np.ndarray  # (hidden, 4)
    b2: np.ndarray  # (4,)
    loss_history: tuple[float, ...] = field(default=(), repr=False)

    @property
    def dim(self) -> int:
        return int(self.w1.shape[0])

    @property
    def hidden_width(self) -> int:
        return int(self.w1.shape[1])

    def decision_scores(self, X: np.ndarray) -> np.ndarray:
        hidden = np.maximum(X @ self.w1 + self.b1, 0.0)
        return hidden @ self.w2 + self.b2


def _init_params(dim: int, hidden: int, rng: np.random.Generator):
    w1 = rng.normal(0.0, np.sqrt(2.0 / dim), size=(dim, hidden))
    b1 = rng.normal(0.0, 0.1, size=hidden)
    w2 = rng.normal(0.0, np.sqrt(1.0 / hidden), size=(hidden, N_CLASSES))
    b2 = np.zeros(N_CLASSES)
    return w1, b1, w2, b2


def _loss_and_grads(params, X, Y):
    """Mean softmax cross-entropy over the batch and its parameter gradients."""
    w1, b1, w2, b2 = params
    z = X @ w1 + b1
    hidden = np.maximum(z, 0.0)
    probs = softmax_rows(hidden @ w2 + b2)
    n = X.shape[0]
    loss = -np.mean(np.log(np.sum(probs * Y, axis=1) + 1e-300))
    d_scores = (probs - Y) / n
    d_w2 = hidden.T @ d_scores
    d_b2 = d_scores.sum(axis=0)
    d_hidden = d_scores @ w2.T
    d_hidden[z <= 0.0] = 0.0
    d_w1 = X.T @ d_hidden
    d_b1 = d_hidden.sum(axis=0)
    return loss, (d_w1, d_b1, d_w2, d_b2)


def _mean_loss(params, X, Y) -> float:
    w1, b1, w2, b2 = params
    probs = softmax_rows(np.maximum(X @ w1 + b1, 0.0) @ w2 + b2)
    return float(-np.mean(np.log(np.sum(probs * Y, axis=1) + 1e-300)))


def train_mlp(X, y, cfg: TrainConfig) -> MlpModel:
    """Mini-batch gradient descent; with epochs=0 the model is its (seeded)
    initialization.  Full-dataset loss after each epoch is recorded in
    loss_history (monitored, not asserted)."""
    X, y = check_training_data(X, y)
    mlp_cfg = cfg.mlp
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed & 0x7FFFFFFFFFFFFFFF, 17]))
    params = _init_params(X.shape[1], mlp_cfg.hidden_width, rng)
    Y = np.eye(N_CLASSES)[y]
    n = X.shape[0]
    history = []
    for _ in range(mlp_cfg.epochs):
        order = rng.permutation(n)
        for start in range(0, n, mlp_cfg.batch_size):
            batch = order[start : start + mlp_cfg.batch_size]
            _, grads = _loss_and_grads(params, X[batch], Y[batch])
            params = tuple(p - mlp_cfg.learning_rate * g for p, g in zip(params, grads))
        history.append(_mean_loss(params, X, Y))
    w1, b1, w2, b2 = params
    return MlpModel(w1=w1, b1=b1, w2=w2, b2=b2, loss_history=tuple(history))


def mlp_grad_check(model: MlpModel, X, y, step: float = 1e-5) -> float:
    """Max relative error between analytic gradients and central finite
    differences over every parameter, in 64-bit arithmetic.

    Relative error uses max(|analytic|, |numeric|, 1e-3) as denominator; the
    scale floor keeps roundoff noise in exactly-zero gradients (dead hidden
    units) from dominating.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64).ravel()
    if X.shape[0] > 8 or X.shape[1] > 16:
        raise ValueError("grad check batches are limited to n<=8, dim<=16")
    Y = np.eye(N_CLASSES)[y]
    params = tuple(np.array(p, dtype=np.float64) for p in (model.w1, model.b1, model.w2, model.b2))
    _, analytic = _loss_and_grads(params, X, Y)

    worst = 0.0
    for p_idx, p in enumerate(params):
        flat = p.ravel()
        grad_flat = analytic[p_idx].ravel()
        for j in range(flat.size):
            orig = flat[j]
            flat[j] = orig + step
            plus = _mean_loss(params, X, Y)
            flat[j] = orig - step
            minus = _mean_loss(params, X, Y)
            flat[j] = orig
            numeric = (plus - minus) / (2.0 * step)
            a = grad_flat[j]
            rel = abs(a - numeric) / max(abs(a), abs(numeric), 1e-3)
            if rel > worst:
                worst = rel
    return worst
