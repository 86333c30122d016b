"""Row alignment of per-modality embedding sets against a manifest."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import Manifest
from .embio import MODALITIES, EmbeddingSet

__all__ = ["AlignmentError", "MissingModalityError", "ExtraRecordsError",
           "AlignedDataset", "align"]


class AlignmentError(ValueError):
    pass


class MissingModalityError(AlignmentError):
    def __init__(self, modality: str, utterance_id: str):
        self.modality = modality
        self.utterance_id = utterance_id
        super().__init__(f"{modality} set is missing utterance {utterance_id!r}")


class ExtraRecordsError(AlignmentError):
    def __init__(self, modality: str, ids: list[str]):
        self.modality = modality
        self.extra_ids = ids
        shown = ", ".join(repr(i) for i in ids[:5])
        more = "" if len(ids) <= 5 else f" (+{len(ids) - 5} more)"
        super().__init__(f"{modality} set has records absent from manifest: {shown}{more}")


@dataclass(frozen=True)
class AlignedDataset:
    """Manifest plus per-modality feature matrices in manifest row order.

    ``features[m]`` is (n, d_m) float32 for modality m; ``probs`` optionally
    carries aligned (n, 4) probability matrices when probability sets were
    supplied.  Immutable; safe to share across folds.
    """

    manifest: Manifest
    features: dict[str, np.ndarray]
    probs: dict[str, np.ndarray] | None = None
    warnings: tuple[str, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.manifest)

    @property
    def labels(self) -> np.ndarray:
        return self.manifest.labels()

    @property
    def sessions(self) -> np.ndarray:
        return self.manifest.sessions()

    def modality_matrix(self, modality: str) -> np.ndarray:
        return self.features[modality]


def _align_one(
    manifest: Manifest,
    embedding_set: EmbeddingSet,
    modality: str,
    zero_fill: bool,
    allow_extra: bool,
    warnings: list[str],
) -> np.ndarray:
    index = embedding_set.index()
    if not allow_extra:
        manifest_ids = set(manifest.ids)
        extra = [i for i in embedding_set.ids if i not in manifest_ids]
        if extra:
            raise ExtraRecordsError(modality, extra)
    out = np.zeros((len(manifest), embedding_set.dim), dtype=np.float32)
    for row_i, utt_id in enumerate(manifest.ids):
        pos = index.get(utt_id)
        if pos is None:
            if not zero_fill:
                raise MissingModalityError(modality, utt_id)
            warnings.append(f"{modality}: {utt_id!r} missing, zero-filled")
        else:
            out[row_i] = embedding_set.vectors[pos]
    return out


def align(
    manifest: Manifest,
    text: EmbeddingSet,
    speech: EmbeddingSet,
    video: EmbeddingSet,
    *,
    text_prob: EmbeddingSet | None = None,
    speech_prob: EmbeddingSet | None = None,
    video_prob: EmbeddingSet | None = None,
    zero_fill: bool = False,
    allow_extra: bool = False,
) -> AlignedDataset:
    """Resolve every manifest id in all three sets, preserving manifest order.

    Strict by default: a missing id raises MissingModalityError naming the
    modality and id, and records not in the manifest raise ExtraRecordsError.
    With ``zero_fill`` a missing vector becomes a zero row and a warning is
    recorded instead.  Probability sets, when given, must cover all three
    modalities to be attached and are validated in probability mode.
    """
    warnings: list[str] = []
    feature_sets = dict(zip(MODALITIES, (text, speech, video)))
    features = {
        m: _align_one(manifest, s, m, zero_fill, allow_extra, warnings)
        for m, s in feature_sets.items()
    }

    prob_sets = dict(zip(MODALITIES, (text_prob, speech_prob, video_prob)))
    given = [m for m, s in prob_sets.items() if s is not None]
    probs: dict[str, np.ndarray] | None = None
    if given:
        missing = [m for m in MODALITIES if prob_sets[m] is None]
        if missing:
            raise AlignmentError(
                f"probability sets given for {given} but not {missing}; "
                "supply all three or none"
            )
        for s in prob_sets.values():
            s.validate_probabilities()
        probs = {
            m: _align_one(manifest, s, f"{m} probabilities", zero_fill, allow_extra, warnings)
            for m, s in prob_sets.items()
        }
    return AlignedDataset(
        manifest=manifest, features=features, probs=probs, warnings=tuple(warnings)
    )
