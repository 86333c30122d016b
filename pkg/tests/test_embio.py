import struct

import numpy as np
import pytest

from emofuse.embio import (
    BadMagicError,
    DuplicateIdError,
    EmbeddingFormatError,
    EmbeddingSet,
    InvalidVectorError,
    TruncatedFileError,
    UnsupportedVersionError,
    read_embeddings,
    write_embeddings,
)


def random_set(rng, modality="text", n=None, dim=None):
    n = rng.integers(0, 20) if n is None else n
    dim = int(rng.integers(1, 40)) if dim is None else dim
    ids = tuple(f"utt_{modality}_{i:03d}" for i in range(n))
    vectors = rng.normal(size=(n, dim)).astype(np.float32)
    return EmbeddingSet(modality=modality, ids=ids, vectors=vectors)


def assert_bit_identical(a: EmbeddingSet, b: EmbeddingSet):
    assert a.ids == b.ids
    assert a.dim == b.dim
    assert a.vectors.tobytes() == b.vectors.tobytes()


def test_round_trip_randomized(tmp_path):
    rng = np.random.default_rng(42)
    for i in range(25):
        s = random_set(rng)
        path = tmp_path / f"s{i}.emb"
        write_embeddings(s, path)
        assert_bit_identical(s, read_embeddings(path, modality="text"))


def test_round_trip_probability_sets(tmp_path):
    rng = np.random.default_rng(7)
    for i in range(10):
        n = int(rng.integers(0, 15))
        logits = rng.normal(size=(n, 4))
        probs = np.exp(logits) / np.exp(logits).sum(axis=1, keepdims=True)
        s = EmbeddingSet(
            modality="speech",
            ids=tuple(f"p{j}" for j in range(n)),
            vectors=probs.astype(np.float32),
        )
        path = tmp_path / f"p{i}.emb"
        write_embeddings(s, path)
        loaded = read_embeddings(path, modality="speech", probability=True)
        assert_bit_identical(s, loaded)


def test_empty_set_is_header_only(tmp_path):
    s = EmbeddingSet(modality="text", ids=(), vectors=np.empty((0, 768), np.float32))
    path = tmp_path / "empty.emb"
    write_embeddings(s, path)
    data = path.read_bytes()
    assert len(data) == 13  # 4 magic + 1 version + 4 count + 4 dim
    assert data[:4] == b"EMB1"
    loaded = read_embeddings(path, modality="text")
    assert len(loaded) == 0 and loaded.dim == 768


def test_hand_assembled_bytes(tmp_path):
    s = EmbeddingSet(
        modality="text", ids=("u1",), vectors=np.array([[1.0, 2.0]], np.float32)
    )
    path = tmp_path / "one.emb"
    write_embeddings(s, path)
    expected = (
        b"EMB1"
        + bytes([1])
        + (1).to_bytes(4, "little")
        + (2).to_bytes(4, "little")
        + (2).to_bytes(2, "little")
        + b"u1"
        + struct.pack("<2f", 1.0, 2.0)
    )
    assert path.read_bytes() == expected


def test_writes_are_deterministic(tmp_path):
    rng = np.random.default_rng(5)
    s = random_set(rng, n=7, dim=16)
    write_embeddings(s, tmp_path / "a.emb")
    write_embeddings(s, tmp_path / "b.emb")
    assert (tmp_path / "a.emb").read_bytes() == (tmp_path / "b.emb").read_bytes()


def test_bad_magic(tmp_path):
    path = tmp_path / "bad.emb"
    path.write_bytes(b"NOPE" + bytes(9))
    with pytest.raises(BadMagicError):
        read_embeddings(path)


def test_unsupported_version(tmp_path):
    path = tmp_path / "v9.emb"
    path.write_bytes(b"EMB1" + bytes([9]) + (0).to_bytes(4, "little") + (4).to_bytes(4, "little"))
    with pytest.raises(UnsupportedVersionError):
        read_embeddings(path)


def test_truncated_file(tmp_path):
    rng = np.random.default_rng(1)
    s = random_set(rng, n=4, dim=8)
    path = tmp_path / "t.emb"
    write_embeddings(s, path)
    data = bytearray(path.read_bytes())
    # Declare 5 records but keep only 4 on disk.
    data[5:9] = (5).to_bytes(4, "little")
    path.write_bytes(bytes(data))
    with pytest.raises(TruncatedFileError):
        read_embeddings(path)


def test_trailing_bytes_rejected(tmp_path):
    rng = np.random.default_rng(2)
    s = random_set(rng, n=2, dim=4)
    path = tmp_path / "x.emb"
    write_embeddings(s, path)
    path.write_bytes(path.read_bytes() + b"\x00")
    with pytest.raises(EmbeddingFormatError):
        read_embeddings(path)


def test_duplicate_id_in_file(tmp_path):
    record = (1).to_bytes(2, "little") + b"a" + struct.pack("<f", 0.5)
    payload = (
        b"EMB1" + bytes([1]) + (2).to_bytes(4, "little") + (1).to_bytes(4, "little")
        + record + record
    )
    path = tmp_path / "dup.emb"
    path.write_bytes(payload)
    with pytest.raises(DuplicateIdError):
        read_embeddings(path)


def test_probability_validation_rejects_bad_rows(tmp_path):
    s = EmbeddingSet(
        modality="text",
        ids=("u1",),
        vectors=np.array([[0.5, 0.5, 0.5, 0.5]], np.float32),
    )
    path = tmp_path / "p.emb"
    write_embeddings(s, path)
    read_embeddings(path, modality="text")  # fine in plain mode
    with pytest.raises(InvalidVectorError):
        read_embeddings(path, modality="text", probability=True)


def test_probability_validation_rejects_negative_and_wrong_dim():
    with pytest.raises(InvalidVectorError):
        EmbeddingSet(
            modality="text", ids=("u1",), vectors=np.array([[1.5, -0.5, 0.0, 0.0]], np.float32)
        ).validate_probabilities()
    with pytest.raises(InvalidVectorError):
        EmbeddingSet(
            modality="text", ids=("u1",), vectors=np.array([[1.0, 0.0]], np.float32)
        ).validate_probabilities()


def test_construction_rejects_nan_and_duplicates():
    with pytest.raises(InvalidVectorError):
        EmbeddingSet(modality="text", ids=("a",), vectors=np.array([[np.nan]], np.float32))
    with pytest.raises(DuplicateIdError):
        EmbeddingSet(
            modality="text", ids=("a", "a"), vectors=np.zeros((2, 3), np.float32)
        )


def test_modality_inferred_from_stem(tmp_path):
    rng = np.random.default_rng(3)
    s = random_set(rng, modality="speech", n=3, dim=4)
    path = tmp_path / "speech.emb"
    write_embeddings(s, path)
    assert read_embeddings(path).modality == "speech"
