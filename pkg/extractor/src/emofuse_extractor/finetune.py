"""Fine-tuning loop: pretrained checkpoint + 4-way classification head.

Training follows the configured schedule (AdamW with the configured
learning rate and weight decay, fixed batch sizes and epoch count); when
the split carries a validation session the best epoch by validation
accuracy is kept, otherwise the final epoch.  The saved checkpoint embeds a
metadata file echoing the FinetuneConfig plus the logged loss/accuracy
curves.  A failed run never leaves a partial checkpoint directory behind.
"""

from __future__ import annotations

import copy
import json
import shutil
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
import torch.nn.functional as F

from .configs import FinetuneConfig, config_to_json

__all__ = [
    "Split",
    "MODEL_SELECTION_SPLIT",
    "fold_split",
    "Example",
    "FinetuneOutcome",
    "finetune",
    "load_checkpoint",
    "load_metadata",
]

METADATA_FILE = "finetune_metadata.json"


@dataclass(frozen=True)
class Split:
    train_sessions: tuple[int, ...]
    val_session: int | None = None
    test_session: int | None = None


# Model-selection protocol: first three sessions train, the fourth
# validates, the fifth tests.
MODEL_SELECTION_SPLIT = Split(train_sessions=(1, 2, 3), val_session=4, test_session=5)


def fold_split(test_session: int) -> Split:
    """Per-session fold for the final models: train on the other four."""
    return Split(
        train_sessions=tuple(s for s in (1, 2, 3, 4, 5) if s != test_session),
        val_session=None,
        test_session=test_session,
    )


@dataclass(frozen=True)
class Example:
    utterance_id: str
    session: int
    label: int
    payload: object  # text str | waveform ndarray | frames ndarray


@dataclass(frozen=True)
class FinetuneOutcome:
    checkpoint_dir: str
    train_loss: tuple[float, ...]
    val_accuracy: tuple[float, ...]
    best_epoch: int  # 1-based
    test_accuracy: float | None


def _batches(indices: np.ndarray, batch_size: int):
    for start in range(0, len(indices), batch_size):
        yield indices[start : start + batch_size]


def _evaluate(model, preprocessor, examples, indices, batch_size: int) -> float:
    model.eval()
    correct = 0
    with torch.no_grad():
        for batch_idx in _batches(indices, batch_size):
            payloads = [examples[i].payload for i in batch_idx]
            labels = torch.tensor([examples[i].label for i in batch_idx])
            logits = model(**preprocessor(payloads, train=False)).logits
            correct += int((logits.argmax(dim=-1) == labels).sum())
    return correct / len(indices)


def _default_model(cfg: FinetuneConfig):
    from transformers import AutoModelForSequenceClassification

    return AutoModelForSequenceClassification.from_pretrained(
        cfg.checkpoint, num_labels=4
    )


def finetune(
    cfg: FinetuneConfig,
    examples: list[Example],
    preprocessor,
    out_dir,
    *,
    split: Split = MODEL_SELECTION_SPLIT,
    model=None,
    seed: int = 0,
) -> FinetuneOutcome:
    """Fine-tune on the split's train sessions and save the selected epoch.

    ``model`` defaults to the configured pretrained checkpoint with a fresh
    4-way head; tests inject small randomly initialized models.
    """
    out_dir = Path(out_dir)
    train_idx = np.array(
        [i for i, ex in enumerate(examples) if ex.session in split.train_sessions]
    )
    if train_idx.size == 0:
        raise ValueError(f"no examples in train sessions {split.train_sessions}")
    val_idx = np.array(
        [i for i, ex in enumerate(examples) if ex.session == split.val_session]
    )
    test_idx = np.array(
        [i for i, ex in enumerate(examples) if ex.session == split.test_session]
    )

    torch.manual_seed(seed)
    if model is None:
        model = _default_model(cfg)
    optimizer = torch.optim.AdamW(
        model.parameters(), lr=cfg.learning_rate, weight_decay=cfg.weight_decay
    )
    rng = np.random.default_rng(seed)

    train_loss: list[float] = []
    val_accuracy: list[float] = []
    best_state = None
    best_epoch = 0
    best_metric = -1.0
    for epoch in range(1, cfg.epochs + 1):
        model.train()
        order = rng.permutation(train_idx)
        epoch_losses = []
        for batch_idx in _batches(order, cfg.train_batch_size):
            payloads = [examples[i].payload for i in batch_idx]
            labels = torch.tensor([examples[i].label for i in batch_idx])
            logits = model(**preprocessor(payloads, train=True)).logits
            loss = F.cross_entropy(logits, labels)
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            epoch_losses.append(float(loss.detach()))
        train_loss.append(float(np.mean(epoch_losses)))
        if val_idx.size:
            acc = _evaluate(model, preprocessor, examples, val_idx, cfg.eval_batch_size)
            val_accuracy.append(acc)
            if acc > best_metric:
                best_metric = acc
                best_epoch = epoch
                best_state = copy.deepcopy(model.state_dict())
    if best_state is not None:
        model.load_state_dict(best_state)
    else:
        best_epoch = cfg.epochs

    test_accuracy = None
    if test_idx.size:
        test_accuracy = _evaluate(
            model, preprocessor, examples, test_idx, cfg.eval_batch_size
        )

    created = not out_dir.exists()
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        model.save_pretrained(out_dir)
        metadata = {
            "config": config_to_json(cfg),
            "split": {
                "train_sessions": list(split.train_sessions),
                "val_session": split.val_session,
                "test_session": split.test_session,
            },
            "seed": seed,
            "train_loss": train_loss,
            "val_accuracy": val_accuracy,
            "best_epoch": best_epoch,
            "test_accuracy": test_accuracy,
        }
        with open(out_dir / METADATA_FILE, "w", encoding="utf-8") as fh:
            json.dump(metadata, fh, indent=2)
            fh.write("\n")
    except BaseException:
        if created and out_dir.exists():
            shutil.rmtree(out_dir, ignore_errors=True)
        raise
    return FinetuneOutcome(
        checkpoint_dir=str(out_dir),
        train_loss=tuple(train_loss),
        val_accuracy=tuple(val_accuracy),
        best_epoch=best_epoch,
        test_accuracy=test_accuracy,
    )


def load_checkpoint(checkpoint_dir):
    from transformers import AutoModelForSequenceClassification

    return AutoModelForSequenceClassification.from_pretrained(checkpoint_dir)


def load_metadata(checkpoint_dir) -> dict:
    with open(Path(checkpoint_dir) / METADATA_FILE, "r", encoding="utf-8") as fh:
        return json.load(fh)
