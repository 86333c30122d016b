"""The three classifiers behind a uniform train / predict / predict_proba
contract: linear SVM (dual coordinate descent), 2-layer neural network, and
gradient-boosted trees."""

from .common import (
    GbtConfig,
    MlpConfig,
    SvmConfig,
    TrainConfig,
    TrainingDataError,
    predict,
    predict_proba,
    softmax_rows,
)
from .gbt import GbtModel, train_gbt
from .mlp import MlpModel, mlp_grad_check, train_mlp
from .serialize import ModelFormatError, load_model, save_model
from .svm import SvmModel, train_svm

__all__ = [
    "CLASSIFIER_KINDS",
    "GbtConfig",
    "GbtModel",
    "MlpConfig",
    "MlpModel",
    "ModelFormatError",
    "SvmConfig",
    "SvmModel",
    "TrainConfig",
    "TrainingDataError",
    "load_model",
    "mlp_grad_check",
    "predict",
    "predict_proba",
    "save_model",
    "softmax_rows",
    "train",
    "train_gbt",
    "train_mlp",
    "train_svm",
]

CLASSIFIER_KINDS = ("svm", "mlp", "gbt")

_TRAINERS = {"svm": train_svm, "mlp": train_mlp, "gbt": train_gbt}


def train(kind: str, X, y, cfg: TrainConfig):
    """Train a classifier by kind name ("svm", "mlp" or "gbt")."""
    try:
        trainer = _TRAINERS[kind]
    except KeyError:
        raise ValueError(f"unknown classifier kind {kind!r}") from None
    return trainer(X, y, cfg)
