"""Linear soft-margin SVM trained by dual coordinate descent, one-vs-rest.

Each of the four binary machines solves the L1-loss dual

    min_a  1/2 a' Q a - e' a   subject to  0 <= a_i <= C,

with Q_ij = y_i y_j x_i . x_j, updating one dual variable at a time with its
exact box-constrained minimizer.  The bias is folded in as a constant
augmented feature (so it is regularized like the weights); convergence is
declared when the largest projected-gradient KKT violation in an epoch drops
below the configured tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..dataset import N_CLASSES
from .common import TrainConfig, check_training_data

__all__ = ["SvmModel", "train_svm"]


@dataclass(frozen=True)
class SvmModel:
    weights: np.ndarray  # (4, dim)
    biases: np.ndarray  # (4,)
    # Dual variables per binary machine, kept for KKT diagnostics; not part
    # of the serialized model.
    dual_coefs: tuple[np.ndarray, ...] = field(default=(), repr=False)

    @property
    def dim(self) -> int:
        return int(self.weights.shape[1])

    def decision_scores(self, X: np.ndarray) -> np.ndarray:
        return X @ self.weights.T + self.biases


def _train_binary(
    Xa: np.ndarray,
    y_pm: np.ndarray,
    c_penalty: float,
    tolerance: float,
    max_iterations: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    n = Xa.shape[0]
    q_diag = np.einsum("ij,ij->i", Xa, Xa)  # >= 1 thanks to the bias feature
    alpha = np.zeros(n)
    w = np.zeros(Xa.shape[1])
    for _ in range(max_iterations):
        worst = 0.0
        for i in rng.permutation(n):
            x_i = Xa[i]
            y_i = y_pm[i]
            g = y_i * (w @ x_i) - 1.0
            a = alpha[i]
            if a <= 0.0:
                pg = min(g, 0.0)
            elif a >= c_penalty:
                pg = max(g, 0.0)
            else:
                pg = g
            if pg != 0.0:
                if abs(pg) > worst:
                    worst = abs(pg)
                a_new = min(max(a - g / q_diag[i], 0.0), c_penalty)
                if a_new != a:
                    w += (a_new - a) * y_i * x_i
                    alpha[i] = a_new
        if worst < tolerance:
            break
    return w, alpha


def train_svm(X, y, cfg: TrainConfig) -> SvmModel:
    """Train four one-vs-rest binary machines; deterministic under cfg.seed."""
    X, y = check_training_data(X, y)
    svm_cfg = cfg.svm
    Xa = np.hstack([X, np.ones((X.shape[0], 1))])
    weights = np.empty((N_CLASSES, X.shape[1]))
    biases = np.empty(N_CLASSES)
    duals = []
    for c in range(N_CLASSES):
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed & 0x7FFFFFFFFFFFFFFF, c]))
        y_pm = np.where(y == c, 1.0, -1.0)
        w_aug, alpha = _train_binary(
            Xa, y_pm, svm_cfg.c_penalty, svm_cfg.tolerance, svm_cfg.max_iterations, rng
        )
        weights[c] = w_aug[:-1]
        biases[c] = w_aug[-1]
        duals.append(alpha)
    return SvmModel(weights=weights, biases=biases, dual_coefs=tuple(duals))
