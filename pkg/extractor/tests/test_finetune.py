import dataclasses

import pytest
import torch

from emofuse_extractor import (
    Example,
    MODEL_SELECTION_SPLIT,
    TextPreprocessor,
    build_manifest,
    default_config,
    finetune,
    fold_split,
    load_checkpoint,
    load_metadata,
)
from conftest import ToyTokenizer


def text_examples(corpus_root):
    result = build_manifest(corpus_root)
    return [
        Example(u.utterance_id, u.session, u.label, u.text)
        for u in result.utterances
    ]


def test_split_protocols():
    assert MODEL_SELECTION_SPLIT.train_sessions == (1, 2, 3)
    assert MODEL_SELECTION_SPLIT.val_session == 4
    assert MODEL_SELECTION_SPLIT.test_session == 5
    fold = fold_split(3)
    assert fold.test_session == 3
    assert set(fold.train_sessions) == {1, 2, 4, 5}
    assert fold.val_session is None


def test_smoke_one_epoch_produces_loadable_checkpoint(
    corpus_root, tiny_text_model, tmp_path
):
    examples = text_examples(corpus_root)
    assert len(examples) == 20  # the toy fixture
    cfg = dataclasses.replace(default_config("text"), epochs=1)
    preprocessor = TextPreprocessor(ToyTokenizer(), max_length=16)
    out_dir = tmp_path / "ckpt"
    outcome = finetune(
        cfg, examples, preprocessor, out_dir, model=tiny_text_model, seed=0
    )
    assert len(outcome.train_loss) == 1  # the logged loss curve
    assert len(outcome.val_accuracy) == 1
    assert outcome.test_accuracy is not None
    reloaded = load_checkpoint(out_dir)
    batch = preprocessor([examples[0].payload])
    reloaded.eval()
    with torch.no_grad():
        logits = reloaded(**batch).logits
    assert logits.shape == (1, 4)


def test_metadata_echoes_default_config(corpus_root, tiny_text_model, tmp_path):
    examples = text_examples(corpus_root)
    cfg = default_config("text")  # full published defaults, incl. 20 epochs
    preprocessor = TextPreprocessor(ToyTokenizer(), max_length=16)
    out_dir = tmp_path / "ckpt"
    outcome = finetune(
        cfg, examples, preprocessor, out_dir, model=tiny_text_model, seed=1
    )
    metadata = load_metadata(out_dir)
    echo = metadata["config"]
    assert echo["learning_rate"] == 2e-5
    assert echo["train_batch_size"] == 32
    assert echo["eval_batch_size"] == 32
    assert echo["weight_decay"] == 0.01
    assert echo["epochs"] == 20
    assert echo["checkpoint"] == "bert-base-uncased"
    assert metadata["train_loss"] == list(outcome.train_loss)
    assert len(metadata["train_loss"]) == 20
    assert metadata["best_epoch"] == outcome.best_epoch
    assert 1 <= metadata["best_epoch"] <= 20


def test_best_epoch_selected_by_validation_accuracy(
    corpus_root, tiny_text_model, tmp_path
):
    examples = text_examples(corpus_root)
    cfg = dataclasses.replace(default_config("text"), epochs=3)
    preprocessor = TextPreprocessor(ToyTokenizer(), max_length=16)
    outcome = finetune(
        cfg, examples, preprocessor, tmp_path / "ckpt", model=tiny_text_model, seed=2
    )
    best = outcome.best_epoch
    assert outcome.val_accuracy[best - 1] == max(outcome.val_accuracy)


def test_failed_run_leaves_no_partial_checkpoint(
    corpus_root, tiny_text_model, tmp_path
):
    examples = text_examples(corpus_root)
    cfg = dataclasses.replace(default_config("text"), epochs=1)

    class Poisoned(TextPreprocessor):
        def __call__(self, texts, train=False):
            raise ValueError("preprocessing exploded")

    out_dir = tmp_path / "ckpt"
    with pytest.raises(ValueError):
        finetune(
            cfg, examples, Poisoned(ToyTokenizer()), out_dir,
            model=tiny_text_model, seed=0,
        )
    assert not out_dir.exists()


def test_no_train_examples_rejected(corpus_root, tiny_text_model, tmp_path):
    examples = [e for e in text_examples(corpus_root) if e.session == 5]
    cfg = dataclasses.replace(default_config("text"), epochs=1)
    with pytest.raises(ValueError):
        finetune(
            cfg, examples, TextPreprocessor(ToyTokenizer()), tmp_path / "c",
            model=tiny_text_model,
        )
