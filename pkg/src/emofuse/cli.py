"""Command-line surface: gen, stats, fuse, cv, pca, report.

Every flag is long-form and may instead be supplied through a JSON config
file (--config, keys = flag names); explicit flags win over the file, which
wins over built-in defaults.  The output directory default comes from the
EMOFUSE_OUT environment variable.  Exit codes: 0 success, 2 validation
failure, 3 I/O failure, 4 computation failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from .align import align
from .classifiers import GbtConfig, MlpConfig, SvmConfig, TrainConfig
from .dataset import manifest_stats, read_manifest, write_manifest
from .embio import EmbeddingSet, read_embeddings, write_embeddings
from .evaluation import run_cv
from .fusion import ALL_STRATEGIES, FusionStrategy, early_fuse, late_fuse
from .pca import pca_project
from .reporting import (
    load_report_json,
    render_report_text,
    save_report_json,
    write_confusion_csv,
    write_grid_csv,
    write_pca_csv,
)
from .synthetic import SyntheticConfig, gen_synthetic

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_COMPUTE = 4

_CLASSIFIER_CHOICES = ("svm", "mlp", "gbt", "all")


def _out_default() -> str:
    return os.environ.get("EMOFUSE_OUT", ".")


def _triple(text: str) -> tuple[float, float, float]:
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated values, got {text!r}")
    return tuple(float(p) for p in parts)  # type: ignore[return-value]


def _load_config_file(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return {str(k).replace("-", "_"): v for k, v in data.items()}


def _merge(args: argparse.Namespace, defaults: dict) -> SimpleNamespace:
    """CLI flag > config file value > built-in default."""
    from_file = _load_config_file(args.config) if args.config else {}
    unknown = set(from_file) - set(defaults)
    if unknown:
        raise ValueError(f"unknown config file keys: {sorted(unknown)}")
    merged = {}
    for key, default in defaults.items():
        value = getattr(args, key, None)
        if value is None:
            value = from_file.get(key, default)
        merged[key] = value
    return SimpleNamespace(**merged)


def _require(ns: SimpleNamespace, *keys: str) -> None:
    missing = [k for k in keys if getattr(ns, k) is None]
    if missing:
        flags = ", ".join("--" + k.replace("_", "-") for k in missing)
        raise ValueError(f"missing required option(s): {flags}")


def _ensure_dir(path: str) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _train_config(ns: SimpleNamespace) -> TrainConfig:
    return TrainConfig(
        seed=int(ns.seed),
        svm=SvmConfig(
            c_penalty=float(ns.svm_c),
            tolerance=float(ns.svm_tol),
            max_iterations=int(ns.svm_max_iter),
        ),
        mlp=MlpConfig(
            hidden_width=int(ns.mlp_hidden),
            learning_rate=float(ns.mlp_lr),
            epochs=int(ns.mlp_epochs),
            batch_size=int(ns.mlp_batch),
        ),
        gbt=GbtConfig(
            rounds=int(ns.gbt_rounds),
            max_depth=int(ns.gbt_depth),
            shrinkage=float(ns.gbt_shrinkage),
        ),
    )


# --- gen -------------------------------------------------------------------

_GEN_DEFAULTS = dict(
    seed=0, n=5, dim=768, sep=6.0, noise="1,1,1", frac="0.5,0.5,0.5", out=None
)


def cmd_gen(args: argparse.Namespace) -> int:
    ns = _merge(args, _GEN_DEFAULTS)
    config = SyntheticConfig(
        seed=int(ns.seed),
        n_per_class_per_session=int(ns.n),
        dim=int(ns.dim),
        class_separation=float(ns.sep),
        modality_noise=_triple(ns.noise),
        modality_informative_fraction=_triple(ns.frac),
    )
    out = _ensure_dir(ns.out or _out_default())
    data = gen_synthetic(config)
    write_manifest(data.manifest, out / "manifest.csv")
    for modality in ("text", "speech", "video"):
        write_embeddings(getattr(data, modality), out / f"{modality}.emb")
    print(
        f"wrote {len(data.manifest)} utterances (dim {config.dim}) to {out}: "
        "manifest.csv, text.emb, speech.emb, video.emb"
    )
    return EXIT_OK


# --- stats -----------------------------------------------------------------

_STATS_DEFAULTS = dict(manifest=None, out=None)


def cmd_stats(args: argparse.Namespace) -> int:
    ns = _merge(args, _STATS_DEFAULTS)
    _require(ns, "manifest")
    manifest = read_manifest(ns.manifest)
    stats = manifest_stats(manifest)
    print(stats.format_table())
    if ns.out:
        import csv as _csv

        with open(ns.out, "w", encoding="utf-8", newline="") as fh:
            writer = _csv.writer(fh)
            writer.writerow(["session", "angry", "happy", "neutral", "sad", "total"])
            for s in range(1, 6):
                row = stats.counts[s - 1]
                writer.writerow([s, *[int(v) for v in row], int(row.sum())])
            writer.writerow(
                ["total", *[int(v) for v in stats.class_totals], stats.total]
            )
    return EXIT_OK


# --- fuse ------------------------------------------------------------------

_FUSE_DEFAULTS = dict(
    level=None, op=None, text=None, speech=None, video=None, manifest=None, out=None
)


def _gather(ids, embedding_set: EmbeddingSet, name: str) -> np.ndarray:
    from .align import ExtraRecordsError, MissingModalityError

    index = embedding_set.index()
    missing = [i for i in ids if i not in index]
    if missing:
        raise MissingModalityError(name, missing[0])
    extra = [i for i in embedding_set.ids if i not in set(ids)]
    if extra:
        raise ExtraRecordsError(name, extra)
    return embedding_set.vectors[[index[i] for i in ids]]


def cmd_fuse(args: argparse.Namespace) -> int:
    ns = _merge(args, _FUSE_DEFAULTS)
    _require(ns, "level", "op", "text", "speech", "video", "out")
    strategy = FusionStrategy.parse(ns.level, ns.op)
    probability = strategy.level.value == "late"
    sets = {
        m: read_embeddings(getattr(ns, m), modality=m, probability=probability)
        for m in ("text", "speech", "video")
    }
    if ns.manifest:
        ids = list(read_manifest(ns.manifest).ids)
    else:
        ids = list(sets["text"].ids)
    matrices = [_gather(ids, sets[m], m) for m in ("text", "speech", "video")]
    if probability:
        fused = late_fuse(*matrices, strategy.operator)
    else:
        fused = early_fuse(*matrices, strategy.operator)
    out_set = EmbeddingSet(
        modality="fused", ids=tuple(ids), vectors=fused.values.astype(np.float32)
    )
    write_embeddings(out_set, ns.out)
    print(f"wrote {len(ids)} fused vectors (dim {out_set.dim}, {strategy.name}) to {ns.out}")
    return EXIT_OK


# --- cv --------------------------------------------------------------------

_CV_DEFAULTS = dict(
    manifest=None,
    text=None,
    speech=None,
    video=None,
    text_prob=None,
    speech_prob=None,
    video_prob=None,
    level=None,
    op=None,
    grid=False,
    clf="all",
    seed=0,
    zscore=False,
    zero_fill=False,
    allow_extra=False,
    out=None,
    svm_c=1.0,
    svm_tol=1e-4,
    svm_max_iter=10_000,
    mlp_hidden=256,
    mlp_lr=1e-3,
    mlp_epochs=50,
    mlp_batch=32,
    gbt_rounds=100,
    gbt_depth=4,
    gbt_shrinkage=0.1,
)


def cmd_cv(args: argparse.Namespace) -> int:
    ns = _merge(args, _CV_DEFAULTS)
    _require(ns, "manifest", "text", "speech", "video")
    if not ns.grid:
        _require(ns, "level", "op")
    if ns.clf not in _CLASSIFIER_CHOICES:
        raise ValueError(f"--clf must be one of {_CLASSIFIER_CHOICES}")
    manifest = read_manifest(ns.manifest)
    feature_sets = {
        m: read_embeddings(getattr(ns, m), modality=m)
        for m in ("text", "speech", "video")
    }
    prob_sets = {}
    for m in ("text", "speech", "video"):
        path = getattr(ns, f"{m}_prob")
        if path is not None:
            prob_sets[f"{m}_prob"] = read_embeddings(path, modality=m, probability=True)
    dataset = align(
        manifest,
        feature_sets["text"],
        feature_sets["speech"],
        feature_sets["video"],
        zero_fill=bool(ns.zero_fill),
        allow_extra=bool(ns.allow_extra),
        **prob_sets,
    )
    for warning in dataset.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    cfg = _train_config(ns)
    classifiers = ("svm", "mlp", "gbt") if ns.clf == "all" else (ns.clf,)
    strategies = ALL_STRATEGIES if ns.grid else (FusionStrategy.parse(ns.level, ns.op),)
    out = _ensure_dir(ns.out or _out_default())
    run_config = {
        key: getattr(ns, key)
        for key in (
            "manifest", "text", "speech", "video", "text_prob", "speech_prob",
            "video_prob", "grid", "clf", "zscore", "zero_fill", "allow_extra",
        )
    }
    run_config["out"] = str(out)
    reports = []
    for strategy in strategies:
        report = run_cv(
            dataset, strategy, cfg, classifiers=classifiers, zscore=bool(ns.zscore)
        )
        report = dataclasses.replace(report, run_config=run_config)
        reports.append(report)
        name = strategy.name
        save_report_json(report, out / f"report_{name}.json")
        with open(out / f"report_{name}.txt", "w", encoding="utf-8") as fh:
            fh.write(render_report_text(report))
        for kind, result in report.results.items():
            write_confusion_csv(result.pooled_confusion, out / f"confusion_{name}_{kind}.csv")
        accs = "  ".join(
            f"{kind}={result.aggregate.accuracy:.4f}" for kind, result in report.results.items()
        )
        print(f"{name}: {accs}  average={report.classifier_average_accuracy:.4f}")
    if ns.grid:
        write_grid_csv(reports, out / "grid.csv")
        print(f"wrote grid.csv ({len(reports)} strategies x {len(classifiers)} classifiers)")
    return EXIT_OK


# --- pca -------------------------------------------------------------------

_PCA_DEFAULTS = dict(emb=None, manifest=None, k=2, out=None)


def cmd_pca(args: argparse.Namespace) -> int:
    ns = _merge(args, _PCA_DEFAULTS)
    _require(ns, "emb")
    embedding_set = read_embeddings(ns.emb)
    manifest = read_manifest(ns.manifest) if ns.manifest else None
    projection = pca_project(embedding_set.vectors.astype(np.float64), int(ns.k))
    out = _ensure_dir(ns.out or _out_default())
    write_pca_csv(
        projection,
        list(embedding_set.ids),
        manifest,
        out / "pca_coords.csv",
        out / "pca_components.csv",
    )
    variance = projection.eigenvalues.sum()
    print(
        f"projected {len(embedding_set)} vectors (dim {embedding_set.dim}) onto "
        f"{int(ns.k)} components; leading eigenvalue {projection.eigenvalues[0]:.4g}, "
        f"captured variance {variance:.4g}; wrote pca_coords.csv, pca_components.csv to {out}"
    )
    return EXIT_OK


# --- report ----------------------------------------------------------------

_REPORT_DEFAULTS = dict(report=None, out=None)


def cmd_report(args: argparse.Namespace) -> int:
    ns = _merge(args, _REPORT_DEFAULTS)
    _require(ns, "report")
    report = load_report_json(ns.report)
    out = _ensure_dir(ns.out or _out_default())
    name = report.strategy.name
    text = render_report_text(report)
    with open(out / f"report_{name}.txt", "w", encoding="utf-8") as fh:
        fh.write(text)
    for kind, result in report.results.items():
        write_confusion_csv(result.pooled_confusion, out / f"confusion_{name}_{kind}.csv")
    print(text, end="")
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emofuse",
        description="Multimodal fusion and classification engine "
        "(session-holdout cross-validation over early/late fusion grids).",
    )
    sub = parser.add_subparsers(dest="command")
    bool_action = argparse.BooleanOptionalAction

    p = sub.add_parser("gen", help="generate a seeded synthetic dataset")
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--n", type=int, help="utterances per class per session")
    p.add_argument("--dim", type=int)
    p.add_argument("--sep", type=float, help="distance scale between class means")
    p.add_argument("--noise", help="per-modality noise stds, e.g. 1,1,1.5")
    p.add_argument("--frac", help="per-modality informative fractions, e.g. 0.5,0.5,0.2")
    p.add_argument("--out", help="output directory (default $EMOFUSE_OUT or .)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="per-session x per-class manifest counts")
    p.add_argument("--config")
    p.add_argument("--manifest")
    p.add_argument("--out", help="also write the table to this CSV file")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("fuse", help="fuse three embedding files into one EMB1 file")
    p.add_argument("--config")
    p.add_argument("--level", help="early|late")
    p.add_argument("--op", help="concat|sum|product")
    p.add_argument("--text")
    p.add_argument("--speech")
    p.add_argument("--video")
    p.add_argument("--manifest", help="optional; fixes row order")
    p.add_argument("--out", help="output EMB1 file")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("cv", help="session-holdout 5-fold cross-validation")
    p.add_argument("--config")
    p.add_argument("--manifest")
    p.add_argument("--text")
    p.add_argument("--speech")
    p.add_argument("--video")
    p.add_argument("--text-prob")
    p.add_argument("--speech-prob")
    p.add_argument("--video-prob")
    p.add_argument("--level", help="early|late")
    p.add_argument("--op", help="concat|sum|product")
    p.add_argument("--grid", action=bool_action, help="run all six strategies")
    p.add_argument("--clf", help="svm|mlp|gbt|all")
    p.add_argument("--seed", type=int)
    p.add_argument("--zscore", action=bool_action, help="z-score features (fit on train folds)")
    p.add_argument("--zero-fill", action=bool_action, help="zero-fill missing modality vectors")
    p.add_argument("--allow-extra", action=bool_action, help="ignore records absent from manifest")
    p.add_argument("--out")
    p.add_argument("--svm-c", type=float)
    p.add_argument("--svm-tol", type=float)
    p.add_argument("--svm-max-iter", type=int)
    p.add_argument("--mlp-hidden", type=int)
    p.add_argument("--mlp-lr", type=float)
    p.add_argument("--mlp-epochs", type=int)
    p.add_argument("--mlp-batch", type=int)
    p.add_argument("--gbt-rounds", type=int)
    p.add_argument("--gbt-depth", type=int)
    p.add_argument("--gbt-shrinkage", type=float)
    p.set_defaults(func=cmd_cv)

    p = sub.add_parser("pca", help="project an embedding file to k components")
    p.add_argument("--config")
    p.add_argument("--emb", help="input EMB1 file (raw or fused)")
    p.add_argument("--manifest", help="optional; adds class labels to coordinates")
    p.add_argument("-k", "--k", type=int, dest="k")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pca)

    p = sub.add_parser("report", help="re-render a saved report JSON")
    p.add_argument("--config")
    p.add_argument("--report", help="report JSON produced by cv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # numerical / unexpected
        print(f"computation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
