"""Writer for the engine's EMB1 embedding file format.

Layout (little-endian): magic b"EMB1", version u8 = 1, record count u32,
dim u32, then per record an id length u16, the UTF-8 id bytes, and dim
float32 values.  This is an independent implementation of the documented
format; the engine's reader is the validator of record.
"""

from __future__ import annotations

import struct

import numpy as np

__all__ = ["write_emb1"]

_MAGIC = b"EMB1"
_VERSION = 1
_HEADER = struct.Struct("<4sBII")
_ID_LEN = struct.Struct("<H")


def write_emb1(ids, vectors, path) -> None:
    """Write one vector per id; vectors is an (n, dim) array, stored f32."""
    vectors = np.ascontiguousarray(vectors, dtype="<f4")
    if vectors.ndim != 2:
        raise ValueError(f"vectors must be 2-D, got shape {vectors.shape}")
    if len(ids) != vectors.shape[0]:
        raise ValueError(f"{len(ids)} ids but {vectors.shape[0]} vectors")
    if not np.isfinite(vectors).all():
        raise ValueError("vectors contain NaN or Inf")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, _VERSION, vectors.shape[0], vectors.shape[1]))
        for utt_id, vec in zip(ids, vectors):
            raw = utt_id.encode("utf-8")
            fh.write(_ID_LEN.pack(len(raw)))
            fh.write(raw)
            fh.write(vec.tobytes())
