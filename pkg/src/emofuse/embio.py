"""EMB1 embedding file format: bit-exact storage of per-utterance vectors.

Layout (little-endian throughout)::

    magic  4 bytes   b"EMB1"
    version u8       1
    count  u32       number of records
    dim    u32       vector dimension shared by all records
    then per record:
        id_len u16
        id     id_len bytes, UTF-8
        vector dim x f32

The header is exactly 13 bytes, so an empty set serializes to 13 bytes.
Probability files reuse the layout with dim = 4 and are validated in
probability mode on read (nonnegative rows, each summing to 1 within 1e-5).
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "MODALITIES",
    "PROB_DIM",
    "PROB_SUM_TOL",
    "EmbeddingFormatError",
    "BadMagicError",
    "UnsupportedVersionError",
    "TruncatedFileError",
    "DuplicateIdError",
    "InvalidVectorError",
    "EmbeddingRecord",
    "EmbeddingSet",
    "read_embeddings",
    "write_embeddings",
]

MODALITIES = ("text", "speech", "video")
# "fused" tags engine-produced fusion outputs, which travel in the same format.
_VALID_TAGS = MODALITIES + ("fused",)
PROB_DIM = 4
PROB_SUM_TOL = 1e-5

_MAGIC = b"EMB1"
_VERSION = 1
_HEADER = struct.Struct("<4sBII")
_ID_LEN = struct.Struct("<H")


class EmbeddingFormatError(ValueError):
    """Base class for malformed embedding files or sets."""


class BadMagicError(EmbeddingFormatError):
    pass


class UnsupportedVersionError(EmbeddingFormatError):
    pass


class TruncatedFileError(EmbeddingFormatError):
    pass


class DuplicateIdError(EmbeddingFormatError):
    pass


class InvalidVectorError(EmbeddingFormatError):
    """Non-finite values, wrong dimension, or failed probability validation."""


@dataclass(frozen=True)
class EmbeddingRecord:
    utterance_id: str
    vector: np.ndarray  # (dim,) float32


@dataclass(frozen=True)
class EmbeddingSet:
    """Fixed-dimension float32 vectors keyed by utterance id.

    Stored columnar: ``ids`` in record order and ``vectors`` as one
    (n, dim) float32 array.  Immutable after construction.
    """

    modality: str
    ids: tuple[str, ...]
    vectors: np.ndarray

    def __post_init__(self) -> None:
        if self.modality not in _VALID_TAGS:
            raise InvalidVectorError(
                f"modality must be one of {_VALID_TAGS}, got {self.modality!r}"
            )
        v = np.asarray(self.vectors, dtype=np.float32)
        if v.ndim != 2:
            raise InvalidVectorError(f"vectors must be 2-D, got shape {v.shape}")
        object.__setattr__(self, "vectors", v)
        if len(self.ids) != v.shape[0]:
            raise InvalidVectorError(
                f"{len(self.ids)} ids but {v.shape[0]} vector rows"
            )
        if v.shape[1] == 0:
            raise InvalidVectorError("dim must be positive")
        if v.size and not np.isfinite(v).all():
            raise InvalidVectorError("vectors contain NaN or Inf")
        seen: set[str] = set()
        for utt_id in self.ids:
            if not utt_id:
                raise InvalidVectorError("empty utterance_id")
            if utt_id in seen:
                raise DuplicateIdError(f"duplicate utterance_id {utt_id!r}")
            seen.add(utt_id)

    @classmethod
    def from_records(
        cls, modality: str, dim: int, records: Iterable[EmbeddingRecord]
    ) -> "EmbeddingSet":
        recs = list(records)
        ids = tuple(r.utterance_id for r in recs)
        vectors = np.empty((len(recs), dim), dtype=np.float32)
        for i, r in enumerate(recs):
            vec = np.asarray(r.vector, dtype=np.float32)
            if vec.shape != (dim,):
                raise InvalidVectorError(
                    f"record {r.utterance_id!r} has shape {vec.shape}, expected ({dim},)"
                )
            vectors[i] = vec
        return cls(modality=modality, ids=ids, vectors=vectors)

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def __len__(self) -> int:
        return len(self.ids)

    def records(self) -> Iterator[EmbeddingRecord]:
        for utt_id, vec in zip(self.ids, self.vectors):
            yield EmbeddingRecord(utt_id, vec)

    def index(self) -> dict[str, int]:
        return {utt_id: i for i, utt_id in enumerate(self.ids)}

    def validate_probabilities(self) -> None:
        """Probability-mode checks: dim 4, nonnegative, rows sum to 1."""
        if self.dim != PROB_DIM:
            raise InvalidVectorError(
                f"probability sets must have dim {PROB_DIM}, got {self.dim}"
            )
        if len(self) == 0:
            return
        v = self.vectors.astype(np.float64)
        if (v < 0).any():
            bad = self.ids[int(np.argmax((v < 0).any(axis=1)))]
            raise InvalidVectorError(f"negative probability in record {bad!r}")
        sums = v.sum(axis=1)
        off = np.abs(sums - 1.0) > PROB_SUM_TOL
        if off.any():
            i = int(np.argmax(off))
            raise InvalidVectorError(
                f"record {self.ids[i]!r} probabilities sum to {sums[i]:.6f}, not 1"
            )


def write_embeddings(embedding_set: EmbeddingSet, path) -> None:
    """Write the EMB1 layout; byte output is deterministic for equal input."""
    buf = io.BytesIO()
    buf.write(_HEADER.pack(_MAGIC, _VERSION, len(embedding_set), embedding_set.dim))
    vectors = np.ascontiguousarray(embedding_set.vectors, dtype="<f4")
    for i, utt_id in enumerate(embedding_set.ids):
        id_bytes = utt_id.encode("utf-8")
        if len(id_bytes) > 0xFFFF:
            raise InvalidVectorError(f"utterance_id too long: {utt_id[:32]!r}...")
        buf.write(_ID_LEN.pack(len(id_bytes)))
        buf.write(id_bytes)
        buf.write(vectors[i].tobytes())
    with open(path, "wb") as fh:
        fh.write(buf.getvalue())


def _read_exact(fh, n: int, what: str) -> bytes:
    data = fh.read(n)
    if len(data) != n:
        raise TruncatedFileError(f"file ends inside {what} ({len(data)}/{n} bytes)")
    return data


def read_embeddings(
    path, *, modality: str | None = None, probability: bool = False
) -> EmbeddingSet:
    """Read an EMB1 file; inverse of write_embeddings, bit-exact.

    The format does not store a modality tag; pass ``modality`` explicitly,
    otherwise it is inferred from the file stem when that starts with a
    known modality name and defaults to "text".
    """
    if modality is None:
        stem = str(path).rsplit("/", 1)[-1].split(".")[0].lower()
        modality = next((m for m in MODALITIES if stem.startswith(m)), "text")
    with open(path, "rb") as fh:
        header = _read_exact(fh, _HEADER.size, "header")
        magic, version, count, dim = _HEADER.unpack(header)
        if magic != _MAGIC:
            raise BadMagicError(f"bad magic {magic!r}, expected {_MAGIC!r}")
        if version != _VERSION:
            raise UnsupportedVersionError(f"unsupported EMB1 version {version}")
        if dim == 0:
            raise InvalidVectorError("declared dim is 0")
        ids: list[str] = []
        vectors = np.empty((count, dim), dtype=np.float32)
        vec_bytes = 4 * dim
        for i in range(count):
            (id_len,) = _ID_LEN.unpack(_read_exact(fh, _ID_LEN.size, f"record {i} id length"))
            id_bytes = _read_exact(fh, id_len, f"record {i} id")
            raw = _read_exact(fh, vec_bytes, f"record {i} vector")
            ids.append(id_bytes.decode("utf-8"))
            vectors[i] = np.frombuffer(raw, dtype="<f4")
        trailing = fh.read(1)
        if trailing:
            raise EmbeddingFormatError("trailing bytes after declared records")
    embedding_set = EmbeddingSet(modality=modality, ids=tuple(ids), vectors=vectors)
    if probability:
        embedding_set.validate_probabilities()
    return embedding_set
