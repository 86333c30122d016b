"""Report serialization: human-readable text, JSON, and CSV exports.

The engine emits plot *data* (CSV), never images.  The grid CSV mirrors the
early/late x concat/sum/product x three-classifier experiment layout: one
row per strategy with per-classifier aggregate accuracies plus their
average.  Stored values keep full precision; rounding to 2 decimals happens
only in the text rendering.
"""

from __future__ import annotations

import csv
import dataclasses
import json

import numpy as np

from .classifiers import GbtConfig, MlpConfig, SvmConfig, TrainConfig
from .dataset import CLASS_WORDS, Manifest, N_CLASSES
from .evaluation import (
    ClassifierCvResult,
    CvReport,
    FoldResult,
    FoldSpec,
    MetricsReport,
)
from .fusion import FusionStrategy
from .pca import PcaProjection

__all__ = [
    "report_to_dict",
    "report_from_dict",
    "save_report_json",
    "load_report_json",
    "render_report_text",
    "write_grid_csv",
    "write_confusion_csv",
    "write_pca_csv",
]

CLASSIFIER_TITLES = {"svm": "SVM", "mlp": "NN", "gbt": "XGBoost"}


def _metrics_to_dict(m: MetricsReport) -> dict:
    return m.to_dict()


def _metrics_from_dict(d: dict) -> MetricsReport:
    per = d["per_class"]
    return MetricsReport(
        accuracy=d["accuracy"],
        precision=tuple(per[w]["precision"] for w in CLASS_WORDS),
        recall=tuple(per[w]["recall"] for w in CLASS_WORDS),
        f1=tuple(per[w]["f1"] for w in CLASS_WORDS),
        support=tuple(per[w]["support"] for w in CLASS_WORDS),
        macro_precision=d["macro"]["precision"],
        macro_recall=d["macro"]["recall"],
        macro_f1=d["macro"]["f1"],
        weighted_precision=d["weighted"]["precision"],
        weighted_recall=d["weighted"]["recall"],
        weighted_f1=d["weighted"]["f1"],
    )


def report_to_dict(report: CvReport) -> dict:
    out = {
        "strategy": {
            "level": report.strategy.level.value,
            "operator": report.strategy.operator.value,
        },
        "zscore": report.zscore,
        "train_config": dataclasses.asdict(report.train_config),
        "classifier_average_accuracy": report.classifier_average_accuracy,
        "classifiers": {},
    }
    if report.run_config is not None:
        out["run_config"] = report.run_config
    for kind, result in report.results.items():
        out["classifiers"][kind] = {
            "aggregate": _metrics_to_dict(result.aggregate),
            "pooled_confusion": result.pooled_confusion.tolist(),
            "folds": [
                {
                    "fold_index": fr.fold.fold_index,
                    "test_session": fr.fold.test_session,
                    "train_sessions": list(fr.fold.train_sessions),
                    "confusion": fr.confusion.tolist(),
                    "metrics": _metrics_to_dict(fr.report),
                }
                for fr in result.folds
            ],
        }
    return out


def report_from_dict(d: dict) -> CvReport:
    tc = d["train_config"]
    train_config = TrainConfig(
        seed=tc["seed"],
        svm=SvmConfig(**tc["svm"]),
        mlp=MlpConfig(**tc["mlp"]),
        gbt=GbtConfig(**tc["gbt"]),
    )
    results: dict[str, ClassifierCvResult] = {}
    for kind, rd in d["classifiers"].items():
        folds = tuple(
            FoldResult(
                fold=FoldSpec(
                    fold_index=fd["fold_index"],
                    test_session=fd["test_session"],
                    train_sessions=tuple(fd["train_sessions"]),
                ),
                confusion=np.array(fd["confusion"], dtype=np.int64),
                report=_metrics_from_dict(fd["metrics"]),
            )
            for fd in rd["folds"]
        )
        results[kind] = ClassifierCvResult(
            kind=kind,
            folds=folds,
            pooled_confusion=np.array(rd["pooled_confusion"], dtype=np.int64),
            aggregate=_metrics_from_dict(rd["aggregate"]),
        )
    return CvReport(
        strategy=FusionStrategy.parse(d["strategy"]["level"], d["strategy"]["operator"]),
        train_config=train_config,
        zscore=d["zscore"],
        results=results,
        run_config=d.get("run_config"),
    )


def save_report_json(report: CvReport, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report_to_dict(report), fh, indent=2)
        fh.write("\n")


def load_report_json(path) -> CvReport:
    with open(path, "r", encoding="utf-8") as fh:
        return report_from_dict(json.load(fh))


def _format_confusion(cm: np.ndarray) -> list[str]:
    corner = "true\\pred"
    head = f"{corner:>10}" + "".join(f"{w:>9}" for w in CLASS_WORDS)
    lines = [head]
    for c in range(N_CLASSES):
        lines.append(
            f"{CLASS_WORDS[c]:>10}" + "".join(f"{int(v):>9}" for v in cm[c])
        )
    return lines


def render_report_text(report: CvReport) -> str:
    lines: list[str] = []
    lines.append("cross-validation report")
    lines.append(f"strategy: {report.strategy.name}")
    lines.append(f"zscore: {'on' if report.zscore else 'off'}")
    tc = report.train_config
    lines.append(f"seed: {tc.seed}")
    lines.append(
        f"svm: c_penalty={tc.svm.c_penalty} tolerance={tc.svm.tolerance} "
        f"max_iterations={tc.svm.max_iterations}"
    )
    lines.append(
        f"mlp: hidden_width={tc.mlp.hidden_width} learning_rate={tc.mlp.learning_rate} "
        f"epochs={tc.mlp.epochs} batch_size={tc.mlp.batch_size}"
    )
    lines.append(
        f"gbt: rounds={tc.gbt.rounds} max_depth={tc.gbt.max_depth} "
        f"shrinkage={tc.gbt.shrinkage}"
    )
    if report.run_config:
        lines.append("run config:")
        for key, value in sorted(report.run_config.items()):
            lines.append(f"  {key}: {value}")
    for kind, result in report.results.items():
        lines.append("")
        lines.append(f"classifier: {CLASSIFIER_TITLES.get(kind, kind)}")
        for fr in result.folds:
            n = int(fr.confusion.sum())
            lines.append(
                f"  fold {fr.fold.fold_index} (test session {fr.fold.test_session}, "
                f"n={n}): accuracy {fr.report.accuracy:.2f}"
            )
        lines.append("  pooled confusion (rows true, cols predicted):")
        lines.extend("    " + ln for ln in _format_confusion(result.pooled_confusion))
        agg = result.aggregate
        lines.append(f"  aggregate accuracy: {agg.accuracy:.2f}")
        lines.append(f"  {'class':>10}{'precision':>11}{'recall':>9}{'f1':>7}{'support':>9}")
        for c in range(N_CLASSES):
            lines.append(
                f"  {CLASS_WORDS[c]:>10}{agg.precision[c]:>11.2f}"
                f"{agg.recall[c]:>9.2f}{agg.f1[c]:>7.2f}{agg.support[c]:>9}"
            )
        lines.append(
            f"  macro:    precision {agg.macro_precision:.2f}  recall "
            f"{agg.macro_recall:.2f}  f1 {agg.macro_f1:.2f}"
        )
        lines.append(
            f"  weighted: precision {agg.weighted_precision:.2f}  recall "
            f"{agg.weighted_recall:.2f}  f1 {agg.weighted_f1:.2f}"
        )
    lines.append("")
    lines.append(
        f"classifier average accuracy: {report.classifier_average_accuracy:.2f}"
    )
    return "\n".join(lines) + "\n"


def write_grid_csv(reports: list[CvReport], path) -> None:
    """One row per strategy: level, operator, per-classifier aggregate
    accuracy, and the classifier average (full precision)."""
    kinds = None
    for r in reports:
        row_kinds = tuple(r.results.keys())
        if kinds is None:
            kinds = row_kinds
        elif row_kinds != kinds:
            raise ValueError("all reports in a grid must share classifier set")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["level", "operator", *kinds, "average"])
        for r in reports:
            writer.writerow(
                [
                    r.strategy.level.value,
                    r.strategy.operator.value,
                    *(repr(r.accuracy_of(k)) for k in kinds),
                    repr(r.classifier_average_accuracy),
                ]
            )


def write_confusion_csv(cm: np.ndarray, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["true\\pred", *CLASS_WORDS])
        for c in range(N_CLASSES):
            writer.writerow([CLASS_WORDS[c], *[int(v) for v in cm[c]]])


def write_pca_csv(
    projection: PcaProjection,
    ids: list[str],
    manifest: Manifest | None,
    coords_path,
    components_path=None,
) -> None:
    """Per-utterance projected coordinates (id, class, pc1..pck) plus an
    optional components file (component, eigenvalue, loadings)."""
    class_of = {}
    if manifest is not None:
        class_of = {r.utterance_id: r.emotion.word for r in manifest}
    k = projection.k
    with open(coords_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "class", *(f"pc{i + 1}" for i in range(k))])
        for i, utt_id in enumerate(ids):
            writer.writerow(
                [utt_id, class_of.get(utt_id, ""), *(repr(v) for v in projection.projected[i])]
            )
    if components_path is not None:
        d = projection.components.shape[1]
        with open(components_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["component", "eigenvalue", *(f"v{j}" for j in range(d))])
            for i in range(k):
                writer.writerow(
                    [
                        i + 1,
                        repr(float(projection.eigenvalues[i])),
                        *(repr(v) for v in projection.components[i]),
                    ]
                )
