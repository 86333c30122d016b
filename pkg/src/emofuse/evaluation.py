"""Session-holdout 5-fold cross-validation over the fusion x classifier grid.

Fold i holds out session i entirely; the other four sessions train.  A
strategy's aggregate metrics come from pooling the five fold confusion
matrices (every utterance is tested exactly once), and the classifier
average is the arithmetic mean of the classifiers' aggregate accuracies.

In late mode the per-modality probability vectors are produced by MLP
probes trained inside each fold on that fold's training rows, unless the
dataset carries externally supplied probability sets, which then override
the probes.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .align import AlignedDataset
from .classifiers import TrainConfig, predict, predict_proba, train, train_mlp
from .dataset import CLASS_WORDS, Manifest, N_CLASSES, SESSIONS
from .embio import MODALITIES
from .fusion import FusionLevel, FusionStrategy, early_fuse, late_fuse

__all__ = [
    "EmptyFoldError",
    "FoldSpec",
    "session_folds",
    "confusion_matrix",
    "MetricsReport",
    "metrics",
    "FoldResult",
    "ClassifierCvResult",
    "CvReport",
    "run_cv",
    "unimodal_probe_cv",
]


class EmptyFoldError(ValueError):
    pass


@dataclass(frozen=True)
class FoldSpec:
    fold_index: int  # 1..5
    test_session: int
    train_sessions: tuple[int, ...]


def session_folds(manifest: Manifest) -> tuple[FoldSpec, ...]:
    """One fold per session; fold i tests on session i."""
    present = manifest.present_sessions()
    missing = [s for s in SESSIONS if s not in present]
    if missing:
        raise EmptyFoldError(
            f"sessions {missing} have no utterances; folds would be empty"
        )
    return tuple(
        FoldSpec(
            fold_index=s,
            test_session=s,
            train_sessions=tuple(t for t in SESSIONS if t != s),
        )
        for s in SESSIONS
    )


def confusion_matrix(y_true, y_pred) -> np.ndarray:
    """4x4 counts, rows = true class, columns = predicted class."""
    y_true = np.asarray(y_true, dtype=np.int64).ravel()
    y_pred = np.asarray(y_pred, dtype=np.int64).ravel()
    if y_true.shape != y_pred.shape:
        raise ValueError(f"length mismatch: {y_true.shape[0]} vs {y_pred.shape[0]}")
    for name, a in (("y_true", y_true), ("y_pred", y_pred)):
        if a.size and (a.min() < 0 or a.max() >= N_CLASSES):
            raise ValueError(f"{name} contains labels outside 0..{N_CLASSES - 1}")
    cm = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
    np.add.at(cm, (y_true, y_pred), 1)
    return cm


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    precision: tuple[float, ...]  # per class, canonical order
    recall: tuple[float, ...]
    f1: tuple[float, ...]
    support: tuple[int, ...]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "per_class": {
                CLASS_WORDS[c]: {
                    "precision": self.precision[c],
                    "recall": self.recall[c],
                    "f1": self.f1[c],
                    "support": self.support[c],
                }
                for c in range(N_CLASSES)
            },
            "macro": {
                "precision": self.macro_precision,
                "recall": self.macro_recall,
                "f1": self.macro_f1,
            },
            "weighted": {
                "precision": self.weighted_precision,
                "recall": self.weighted_recall,
                "f1": self.weighted_f1,
            },
        }


def metrics(cm: np.ndarray) -> MetricsReport:
    """Precision/recall/F1 per class plus macro and support-weighted averages.

    Zero-division conventions: precision is 0 when nothing was predicted as
    the class, recall is 0 when the class has no true rows, F1 is 0 when
    precision + recall is 0.  Scalar arithmetic throughout so results are
    reproducible digit-for-digit against a per-pair recount.
    """
    cm = np.asarray(cm)
    if cm.shape != (N_CLASSES, N_CLASSES):
        raise ValueError(f"confusion matrix must be 4x4, got {cm.shape}")
    total = int(cm.sum())
    if total == 0:
        raise ValueError("empty confusion matrix")
    precision, recall, f1, support = [], [], [], []
    correct = 0
    for c in range(N_CLASSES):
        tp = int(cm[c, c])
        colsum = int(cm[:, c].sum())
        rowsum = int(cm[c, :].sum())
        p = tp / colsum if colsum > 0 else 0.0
        r = tp / rowsum if rowsum > 0 else 0.0
        f = 2.0 * p * r / (p + r) if (p + r) > 0.0 else 0.0
        precision.append(p)
        recall.append(r)
        f1.append(f)
        support.append(rowsum)
        correct += tp
    accuracy = correct / total
    macro = lambda xs: sum(xs) / N_CLASSES  # noqa: E731
    weighted = lambda xs: sum(x * s for x, s in zip(xs, support)) / total  # noqa: E731
    return MetricsReport(
        accuracy=accuracy,
        precision=tuple(precision),
        recall=tuple(recall),
        f1=tuple(f1),
        support=tuple(support),
        macro_precision=macro(precision),
        macro_recall=macro(recall),
        macro_f1=macro(f1),
        weighted_precision=weighted(precision),
        weighted_recall=weighted(recall),
        weighted_f1=weighted(f1),
    )


@dataclass(frozen=True)
class FoldResult:
    fold: FoldSpec
    confusion: np.ndarray
    report: MetricsReport


@dataclass(frozen=True)
class ClassifierCvResult:
    kind: str
    folds: tuple[FoldResult, ...]
    pooled_confusion: np.ndarray
    aggregate: MetricsReport


@dataclass(frozen=True)
class CvReport:
    strategy: FusionStrategy
    train_config: TrainConfig
    zscore: bool
    results: dict[str, ClassifierCvResult]
    run_config: dict | None = field(default=None)

    @property
    def classifier_average_accuracy(self) -> float:
        accs = [r.aggregate.accuracy for r in self.results.values()]
        return sum(accs) / len(accs)

    def accuracy_of(self, kind: str) -> float:
        return self.results[kind].aggregate.accuracy


def _derive_seed(base: int, *parts: int) -> int:
    ss = np.random.SeedSequence([base & 0x7FFFFFFFFFFFFFFF, *parts])
    return int(ss.generate_state(1, np.uint64)[0])


def _zscore_fit(train: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mean = train.mean(axis=0)
    std = train.std(axis=0)
    std = np.where(std > 0, std, 1.0)
    return mean, std


def _probe_probs(
    dataset: AlignedDataset,
    modality: str,
    train_idx: np.ndarray,
    test_idx: np.ndarray,
    cfg: TrainConfig,
    fold_index: int,
    zscore: bool,
) -> tuple[np.ndarray, np.ndarray]:
    X = dataset.features[modality].astype(np.float64)
    X_train, X_test = X[train_idx], X[test_idx]
    if zscore:
        mean, std = _zscore_fit(X_train)
        X_train = (X_train - mean) / std
        X_test = (X_test - mean) / std
    probe_cfg = dataclasses.replace(
        cfg, seed=_derive_seed(cfg.seed, fold_index, MODALITIES.index(modality))
    )
    probe = train_mlp(X_train, dataset.labels[train_idx], probe_cfg)
    return predict_proba(probe, X_train), predict_proba(probe, X_test)


def _fold_design(
    dataset: AlignedDataset,
    strategy: FusionStrategy,
    cfg: TrainConfig,
    fold: FoldSpec,
    train_idx: np.ndarray,
    test_idx: np.ndarray,
    zscore: bool,
) -> tuple[np.ndarray, np.ndarray]:
    if strategy.level is FusionLevel.EARLY:
        mats = [dataset.features[m].astype(np.float64) for m in MODALITIES]
        fused_train = early_fuse(*(m[train_idx] for m in mats), strategy.operator).values
        fused_test = early_fuse(*(m[test_idx] for m in mats), strategy.operator).values
    else:
        if dataset.probs is not None:
            prob_pairs = [
                (dataset.probs[m][train_idx].astype(np.float64),
                 dataset.probs[m][test_idx].astype(np.float64))
                for m in MODALITIES
            ]
        else:
            prob_pairs = [
                _probe_probs(dataset, m, train_idx, test_idx, cfg, fold.fold_index, zscore)
                for m in MODALITIES
            ]
        fused_train = late_fuse(*(p[0] for p in prob_pairs), strategy.operator).values
        fused_test = late_fuse(*(p[1] for p in prob_pairs), strategy.operator).values
    if zscore:
        mean, std = _zscore_fit(fused_train)
        fused_train = (fused_train - mean) / std
        fused_test = (fused_test - mean) / std
    return fused_train, fused_test


def run_cv(
    dataset: AlignedDataset,
    strategy: FusionStrategy,
    cfg: TrainConfig,
    *,
    classifiers: tuple[str, ...] = ("svm", "mlp", "gbt"),
    zscore: bool = False,
) -> CvReport:
    """Evaluate one fusion strategy under session-holdout cross-validation.

    Per fold: build fused train/test design matrices per the strategy, train
    each requested classifier on the train rows, evaluate on the held-out
    session.  Fold confusion matrices are pooled into the aggregate.
    """
    folds = session_folds(dataset.manifest)
    sessions = dataset.sessions
    labels = dataset.labels
    fold_cms: dict[str, list[FoldResult]] = {k: [] for k in classifiers}
    for fold in folds:
        test_mask = sessions == fold.test_session
        train_idx = np.nonzero(~test_mask)[0]
        test_idx = np.nonzero(test_mask)[0]
        X_train, X_test = _fold_design(
            dataset, strategy, cfg, fold, train_idx, test_idx, zscore
        )
        y_train, y_test = labels[train_idx], labels[test_idx]
        for kind in classifiers:
            clf_cfg = dataclasses.replace(
                cfg, seed=_derive_seed(cfg.seed, fold.fold_index, 100 + classifiers.index(kind))
            )
            model = train(kind, X_train, y_train, clf_cfg)
            cm = confusion_matrix(y_test, predict(model, X_test))
            fold_cms[kind].append(FoldResult(fold=fold, confusion=cm, report=metrics(cm)))
    results: dict[str, ClassifierCvResult] = {}
    for kind in classifiers:
        pooled = np.sum([fr.confusion for fr in fold_cms[kind]], axis=0)
        results[kind] = ClassifierCvResult(
            kind=kind,
            folds=tuple(fold_cms[kind]),
            pooled_confusion=pooled,
            aggregate=metrics(pooled),
        )
    return CvReport(
        strategy=strategy, train_config=cfg, zscore=zscore, results=results
    )


def unimodal_probe_cv(
    dataset: AlignedDataset,
    modality: str,
    cfg: TrainConfig,
    *,
    zscore: bool = False,
) -> ClassifierCvResult:
    """Cross-validate a single modality's MLP probe (the late-fusion
    probability producer) on its own; the single-modality baseline that
    multimodal runs are compared against."""
    if modality not in MODALITIES:
        raise ValueError(f"unknown modality {modality!r}")
    folds = session_folds(dataset.manifest)
    sessions = dataset.sessions
    labels = dataset.labels
    fold_results = []
    for fold in folds:
        test_mask = sessions == fold.test_session
        train_idx = np.nonzero(~test_mask)[0]
        test_idx = np.nonzero(test_mask)[0]
        _, p_test = _probe_probs(
            dataset, modality, train_idx, test_idx, cfg, fold.fold_index, zscore
        )
        pred = np.argmax(p_test, axis=1)
        cm = confusion_matrix(labels[test_idx], pred)
        fold_results.append(FoldResult(fold=fold, confusion=cm, report=metrics(cm)))
    pooled = np.sum([fr.confusion for fr in fold_results], axis=0)
    return ClassifierCvResult(
        kind=f"probe-{modality}",
        folds=tuple(fold_results),
        pooled_confusion=pooled,
        aggregate=metrics(pooled),
    )
