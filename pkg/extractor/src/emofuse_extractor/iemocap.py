"""IEMOCAP-style corpus parsing: manifests, cut lists, payload loading.

Expected layout under the dataset root::

    Session<N>/dialog/transcriptions/<dialog_id>.txt
    Session<N>/dialog/EmoEvaluation/<dialog_id>.txt
    Session<N>/sentences/wav/<dialog_id>/<utterance_id>.wav       (speech)
    Session<N>/sentences/frames/<dialog_id>/<utterance_id>.npy    (video)

Transcription lines carry the turn id, its timing and the text::

    Ses01F_impro01_F000 [006.2901-008.2357]: Excuse me.

Evaluation summary lines carry the label (other lines are ignored)::

    [6.2901 - 8.2357]\tSes01F_impro01_F000\tneu\t[2.5000, 2.5000, 2.5000]

The turn id is the primary key joining the two.  Video clips are never
decoded here: build_manifest emits a cut list (timing from the transcript)
for an external cutter, and the video fine-tune path consumes externally
decoded per-utterance frame arrays (.npy, frames x H x W x 3, uint8).
"""

from __future__ import annotations

import csv
import re
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .labels import CLASS_WORDS, map_label

__all__ = [
    "ParseError",
    "Utterance",
    "CutListEntry",
    "ExtractionResult",
    "build_manifest",
    "write_manifest_csv",
    "write_cut_list_csv",
    "load_waveform",
    "load_frames",
]

_TRANSCRIPT_RE = re.compile(
    r"^(?P<turn>\S+)\s+\[(?P<start>\d+(?:\.\d+)?)-(?P<end>\d+(?:\.\d+)?)\]:\s?(?P<text>.*)$"
)
_SESSION_RE = re.compile(r"^Session([1-5])$")


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Utterance:
    utterance_id: str
    dialog_id: str
    session: int
    raw_label: str
    label: int  # canonical class code 0..3
    start: float
    end: float
    text: str


@dataclass(frozen=True)
class CutListEntry:
    dialog_id: str
    utterance_id: str
    start: float
    end: float
    output_path: str  # MP4 target for the external cutter, audio stripped

    def __post_init__(self) -> None:
        if not 0.0 <= self.start < self.end:
            raise ParseError(
                f"bad cut timing for {self.utterance_id!r}: [{self.start}, {self.end}]"
            )


@dataclass(frozen=True)
class ExtractionResult:
    utterances: tuple[Utterance, ...]
    cut_list: tuple[CutListEntry, ...]
    skipped_turns: int  # unlabeled or outside the four classes


def _parse_transcription(path: Path) -> dict[str, tuple[float, float, str]]:
    turns: dict[str, tuple[float, float, str]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            match = _TRANSCRIPT_RE.match(line)
            if match is None:
                raise ParseError(f"{path}:{lineno}: malformed transcript line: {line!r}")
            turn = match.group("turn")
            start = float(match.group("start"))
            end = float(match.group("end"))
            if turn in turns:
                raise ParseError(f"{path}:{lineno}: duplicate turn {turn!r}")
            if not start < end:
                raise ParseError(
                    f"{path}:{lineno}: turn {turn!r} has start {start} >= end {end}"
                )
            turns[turn] = (start, end, match.group("text"))
    return turns


def _parse_evaluation(path: Path) -> dict[str, str]:
    """Labels from an EmoEvaluation file; only summary lines (starting with
    '[') are read, evaluator and header lines are skipped."""
    labels: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line.startswith("["):
                continue
            parts = line.split("\t")
            if len(parts) < 3:
                raise ParseError(f"{path}:{lineno}: malformed evaluation line: {line!r}")
            turn = parts[1].strip()
            if turn in labels:
                raise ParseError(f"{path}:{lineno}: duplicate evaluation for {turn!r}")
            labels[turn] = parts[2].strip()
    return labels


def build_manifest(
    dataset_root,
    sessions: tuple[int, ...] | None = None,
    cut_root: str = "cuts",
) -> ExtractionResult:
    """Walk the corpus, join transcripts with labels, apply the 4-class
    policy (excited folds into happy) and emit the cut list.

    Turns without a usable label are skipped and counted, never errored;
    a labeled turn missing from the transcript is an error (no timing)."""
    root = Path(dataset_root)
    session_dirs = []
    for entry in sorted(root.iterdir()):
        match = _SESSION_RE.match(entry.name)
        if match and entry.is_dir():
            session = int(match.group(1))
            if sessions is None or session in sessions:
                session_dirs.append((session, entry))
    if not session_dirs:
        raise ParseError(f"no Session directories found under {root}")

    utterances: list[Utterance] = []
    cut_list: list[CutListEntry] = []
    skipped = 0
    for session, session_dir in session_dirs:
        transcription_dir = session_dir / "dialog" / "transcriptions"
        evaluation_dir = session_dir / "dialog" / "EmoEvaluation"
        if not transcription_dir.is_dir():
            raise ParseError(f"missing transcriptions directory: {transcription_dir}")
        for transcript_path in sorted(transcription_dir.glob("*.txt")):
            dialog_id = transcript_path.stem
            evaluation_path = evaluation_dir / transcript_path.name
            if not evaluation_path.is_file():
                raise ParseError(f"missing evaluation file for dialog {dialog_id!r}")
            turns = _parse_transcription(transcript_path)
            labels = _parse_evaluation(evaluation_path)
            missing = sorted(set(labels) - set(turns))
            if missing:
                raise ParseError(
                    f"{evaluation_path}: labeled turns missing from transcript: {missing[:3]}"
                )
            for turn_id, (start, end, text) in turns.items():
                raw = labels.get(turn_id)
                mapped = map_label(raw) if raw is not None else None
                if mapped is None:
                    skipped += 1
                    continue
                utterances.append(
                    Utterance(
                        utterance_id=turn_id,
                        dialog_id=dialog_id,
                        session=session,
                        raw_label=raw,
                        label=mapped,
                        start=start,
                        end=end,
                        text=text,
                    )
                )
                cut_list.append(
                    CutListEntry(
                        dialog_id=dialog_id,
                        utterance_id=turn_id,
                        start=start,
                        end=end,
                        output_path=f"{cut_root}/{dialog_id}/{turn_id}.mp4",
                    )
                )
    return ExtractionResult(
        utterances=tuple(utterances), cut_list=tuple(cut_list), skipped_turns=skipped
    )


def write_manifest_csv(utterances, path) -> None:
    """The engine's manifest format: utterance_id,session,raw_label,class."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["utterance_id", "session", "raw_label", "class"])
        for utt in utterances:
            writer.writerow(
                [utt.utterance_id, utt.session, utt.raw_label, CLASS_WORDS[utt.label]]
            )


def write_cut_list_csv(cut_list, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dialog_id", "utterance_id", "start_s", "end_s", "output_path"])
        for entry in cut_list:
            writer.writerow(
                [entry.dialog_id, entry.utterance_id,
                 repr(entry.start), repr(entry.end), entry.output_path]
            )


def load_waveform(dataset_root, utt: Utterance, expected_rate: int = 16_000) -> np.ndarray:
    """Mono float32 waveform in [-1, 1] from the per-sentence wav file.
    The corpus is already at 16 kHz; other rates are an error, not resampled."""
    path = (
        Path(dataset_root)
        / f"Session{utt.session}" / "sentences" / "wav"
        / utt.dialog_id / f"{utt.utterance_id}.wav"
    )
    with wave.open(str(path), "rb") as wav:
        if wav.getframerate() != expected_rate:
            raise ValueError(
                f"{path}: sample rate {wav.getframerate()} != expected {expected_rate}"
            )
        if wav.getsampwidth() != 2:
            raise ValueError(f"{path}: only 16-bit PCM is supported")
        frames = wav.readframes(wav.getnframes())
        samples = np.frombuffer(frames, dtype="<i2").astype(np.float32) / 32768.0
        if wav.getnchannels() > 1:
            samples = samples.reshape(-1, wav.getnchannels()).mean(axis=1)
    return samples


def load_frames(dataset_root, utt: Utterance) -> np.ndarray:
    """Externally decoded clip frames: (T, H, W, 3) uint8 from a .npy file."""
    path = (
        Path(dataset_root)
        / f"Session{utt.session}" / "sentences" / "frames"
        / utt.dialog_id / f"{utt.utterance_id}.npy"
    )
    frames = np.load(path)
    if frames.ndim != 4 or frames.shape[-1] != 3:
        raise ValueError(f"{path}: expected (T, H, W, 3) frames, got {frames.shape}")
    return frames
