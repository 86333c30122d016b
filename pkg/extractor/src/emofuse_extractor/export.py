"""Export fixed-dimension representations and class probabilities to EMB1.

Modality pooling over the final hidden layer: text uses the sequence
summary (first) token, speech and video average their final hidden states
because those architectures carry no summary token.  Probabilities are the
softmax of the classification head.  Utterances are processed one at a
time, so exports are padding-free and bit-deterministic for a fixed
checkpoint; utterances whose payload fails preprocessing are listed and
excluded, never silently zeroed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from .emb1 import write_emb1

__all__ = ["POOLING", "ExportResult", "export_embeddings"]

POOLING = {"text": "summary_token", "speech": "mean", "video": "mean"}


@dataclass(frozen=True)
class ExportResult:
    exported_ids: tuple[str, ...]
    excluded: tuple[tuple[str, str], ...]  # (utterance_id, reason)
    feature_dim: int


def export_embeddings(
    model,
    preprocessor,
    examples,
    modality: str,
    features_path,
    probs_path,
) -> ExportResult:
    """One feature vector and one 4-dim probability row per utterance."""
    if modality not in POOLING:
        raise ValueError(f"unknown modality {modality!r}")
    model.eval()
    ids: list[str] = []
    features: list[np.ndarray] = []
    probs: list[np.ndarray] = []
    excluded: list[tuple[str, str]] = []
    with torch.no_grad():
        for example in examples:
            try:
                inputs = preprocessor([example.payload], train=False)
            except (ValueError, TypeError) as exc:
                excluded.append((example.utterance_id, str(exc)))
                continue
            outputs = model(**inputs, output_hidden_states=True)
            hidden = outputs.hidden_states[-1][0]  # (seq, dim)
            if POOLING[modality] == "summary_token":
                pooled = hidden[0]
            else:
                pooled = hidden.mean(dim=0)
            ids.append(example.utterance_id)
            features.append(pooled.numpy().astype(np.float32))
            probs.append(
                torch.softmax(outputs.logits[0], dim=-1).numpy().astype(np.float32)
            )
    if not ids:
        raise ValueError("no utterance survived preprocessing; nothing to export")
    feature_matrix = np.stack(features)
    write_emb1(ids, feature_matrix, features_path)
    write_emb1(ids, np.stack(probs), probs_path)
    return ExportResult(
        exported_ids=tuple(ids),
        excluded=tuple(excluded),
        feature_dim=int(feature_matrix.shape[1]),
    )
