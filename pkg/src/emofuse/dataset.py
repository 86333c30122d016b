"""Dataset model: emotion classes, label policy, manifests and their CSV form.

The four-class label policy collapses an 11-label corpus down to angry,
happy, neutral and sad; the low-frequency excited label is folded into
happy.  Class codes are alphabetical and fixed so that confusion matrices
and probability vectors are comparable across runs.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterator, Mapping

import numpy as np

__all__ = [
    "EmotionClass",
    "N_CLASSES",
    "CLASS_WORDS",
    "DEFAULT_LABEL_TABLE",
    "label_map",
    "UtteranceMeta",
    "Manifest",
    "ManifestError",
    "ManifestStats",
    "manifest_stats",
    "read_manifest",
    "write_manifest",
    "SESSIONS",
]

SESSIONS = (1, 2, 3, 4, 5)


class EmotionClass(IntEnum):
    """Canonical class codes, alphabetical by class word."""

    ANGRY = 0
    HAPPY = 1
    NEUTRAL = 2
    SAD = 3

    @property
    def word(self) -> str:
        return CLASS_WORDS[self.value]


N_CLASSES = 4
CLASS_WORDS = ("angry", "happy", "neutral", "sad")
_WORD_TO_CLASS = {w: EmotionClass(i) for i, w in enumerate(CLASS_WORDS)}

# Whole lowercase words only.  Callers with dataset-specific label codes
# (e.g. three-letter abbreviations) pass their own table.
DEFAULT_LABEL_TABLE: Mapping[str, EmotionClass] = {
    "anger": EmotionClass.ANGRY,
    "angry": EmotionClass.ANGRY,
    "happiness": EmotionClass.HAPPY,
    "happy": EmotionClass.HAPPY,
    "excited": EmotionClass.HAPPY,
    "neutral": EmotionClass.NEUTRAL,
    "sadness": EmotionClass.SAD,
    "sad": EmotionClass.SAD,
}


def label_map(
    raw_label: str, table: Mapping[str, EmotionClass] | None = None
) -> EmotionClass | None:
    """Map a raw label word to its emotion class, or None if excluded.

    Matching is case-insensitive on the whole (stripped) word.  Total
    function: unknown labels return None rather than raising.
    """
    if table is None:
        table = DEFAULT_LABEL_TABLE
    return table.get(raw_label.strip().lower())


class ManifestError(ValueError):
    """Malformed manifest content (duplicate ids, bad session, bad class)."""


@dataclass(frozen=True)
class UtteranceMeta:
    """One labelled utterance: the unit of classification."""

    utterance_id: str
    session: int
    raw_label: str
    emotion: EmotionClass

    def __post_init__(self) -> None:
        if not self.utterance_id:
            raise ManifestError("utterance_id must be non-empty")
        if self.session not in SESSIONS:
            raise ManifestError(
                f"session must be in 1..5, got {self.session!r} "
                f"for {self.utterance_id!r}"
            )


@dataclass(frozen=True)
class Manifest:
    """Ordered utterance metadata; row order is the canonical row order."""

    rows: tuple[UtteranceMeta, ...]
    source: str | None = None

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for row in self.rows:
            if row.utterance_id in seen:
                raise ManifestError(f"duplicate utterance_id {row.utterance_id!r}")
            seen.add(row.utterance_id)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[UtteranceMeta]:
        return iter(self.rows)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(r.utterance_id for r in self.rows)

    def labels(self) -> np.ndarray:
        """Class codes per row, shape (n,), int64."""
        return np.array([r.emotion.value for r in self.rows], dtype=np.int64)

    def sessions(self) -> np.ndarray:
        """Session numbers per row, shape (n,), int64."""
        return np.array([r.session for r in self.rows], dtype=np.int64)

    def present_sessions(self) -> set[int]:
        return {r.session for r in self.rows}


@dataclass(frozen=True)
class ManifestStats:
    """Per-session x per-class count table (5 x 4) with totals."""

    counts: np.ndarray = field(repr=False)  # (5, 4) int64, row = session - 1

    @property
    def session_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def class_totals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def format_table(self) -> str:
        head = "session  " + "".join(f"{w:>9}" for w in CLASS_WORDS) + "    total"
        lines = [head]
        for s in SESSIONS:
            row = self.counts[s - 1]
            lines.append(
                f"{s:>7}  "
                + "".join(f"{int(c):>9}" for c in row)
                + f"{int(row.sum()):>9}"
            )
        lines.append(
            f"{'total':>7}  "
            + "".join(f"{int(c):>9}" for c in self.class_totals)
            + f"{self.total:>9}"
        )
        return "\n".join(lines)


def manifest_stats(manifest: Manifest) -> ManifestStats:
    """Count utterances per (session, class); cells sum to len(manifest)."""
    counts = np.zeros((len(SESSIONS), N_CLASSES), dtype=np.int64)
    for row in manifest:
        counts[row.session - 1, row.emotion.value] += 1
    return ManifestStats(counts=counts)


_CSV_HEADER = ["utterance_id", "session", "raw_label", "class"]


def write_manifest(manifest: Manifest, path) -> None:
    """Write the manifest as UTF-8 CSV with the fixed four-column header."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_CSV_HEADER)
        for row in manifest:
            writer.writerow(
                [row.utterance_id, row.session, row.raw_label, row.emotion.word]
            )


def read_manifest(
    path, table: Mapping[str, EmotionClass] | None = None
) -> Manifest:
    """Read a manifest CSV, validating sessions, classes and id uniqueness.

    When the raw label is known to the mapping table, the class column must
    agree with it.  Unknown raw labels (for example dataset-specific codes
    mapped by an override table at build time) are accepted as long as the
    class column holds a canonical class word.
    """
    rows: list[UtteranceMeta] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _CSV_HEADER:
            raise ManifestError(
                f"bad manifest header {header!r}, expected {_CSV_HEADER!r}"
            )
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) != 4:
                raise ManifestError(f"{path}:{lineno}: expected 4 columns, got {len(rec)}")
            utt_id, session_s, raw_label, class_word = rec
            try:
                session = int(session_s)
            except ValueError:
                raise ManifestError(
                    f"{path}:{lineno}: non-integer session {session_s!r}"
                ) from None
            emotion = _WORD_TO_CLASS.get(class_word.strip().lower())
            if emotion is None:
                raise ManifestError(
                    f"{path}:{lineno}: unknown class word {class_word!r}"
                )
            mapped = label_map(raw_label, table)
            if mapped is not None and mapped is not emotion:
                raise ManifestError(
                    f"{path}:{lineno}: raw_label {raw_label!r} maps to "
                    f"{mapped.word!r} but class column says {class_word!r}"
                )
            rows.append(UtteranceMeta(utt_id, session, raw_label, emotion))
    return Manifest(rows=tuple(rows), source=str(path))
