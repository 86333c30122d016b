"""MDL1 model container: caches trained fold models on disk.

Layout (little-endian): magic b"MDL1" . version u8 = 1 . kind u8
(1 = svm, 2 = mlp, 3 = gbt) . kind-specific payload, with all shape fields
u32/i32 and all parameters f32:

    svm:  dim, n_classes, weights (n_classes x dim), biases (n_classes)
    mlp:  dim, hidden, n_classes, w1, b1, w2, b2
    gbt:  dim, n_classes, rounds, shrinkage f32, then rounds*n_classes trees,
          each: n_nodes u32, feature i32[], threshold f32[], left i32[],
          right i32[], value f32[]

Parameters are stored as f32, so a loaded model reproduces the original's
predictions to float32 precision (exact for float32-valued parameters).
"""

from __future__ import annotations

import io
import struct

import numpy as np

from ..dataset import N_CLASSES
from .gbt import GbtModel, TreeNodes
from .mlp import MlpModel
from .svm import SvmModel

__all__ = ["ModelFormatError", "save_model", "load_model"]

_MAGIC = b"MDL1"
_VERSION = 1
_KIND = {"svm": 1, "mlp": 2, "gbt": 3}
_HEADER = struct.Struct("<4sBB")


class ModelFormatError(ValueError):
    pass


def _write_array(buf: io.BytesIO, a: np.ndarray, dtype: str) -> None:
    buf.write(np.ascontiguousarray(a, dtype=dtype).tobytes())


def _read_array(fh, count: int, dtype: str) -> np.ndarray:
    nbytes = count * np.dtype(dtype).itemsize
    data = fh.read(nbytes)
    if len(data) != nbytes:
        raise ModelFormatError("truncated model file")
    return np.frombuffer(data, dtype=dtype).copy()


def _read_u32(fh) -> int:
    data = fh.read(4)
    if len(data) != 4:
        raise ModelFormatError("truncated model file")
    return struct.unpack("<I", data)[0]


def save_model(model, path) -> None:
    buf = io.BytesIO()
    if isinstance(model, SvmModel):
        buf.write(_HEADER.pack(_MAGIC, _VERSION, _KIND["svm"]))
        buf.write(struct.pack("<II", model.dim, N_CLASSES))
        _write_array(buf, model.weights, "<f4")
        _write_array(buf, model.biases, "<f4")
    elif isinstance(model, MlpModel):
        buf.write(_HEADER.pack(_MAGIC, _VERSION, _KIND["mlp"]))
        buf.write(struct.pack("<III", model.dim, model.hidden_width, N_CLASSES))
        for p in (model.w1, model.b1, model.w2, model.b2):
            _write_array(buf, p, "<f4")
    elif isinstance(model, GbtModel):
        buf.write(_HEADER.pack(_MAGIC, _VERSION, _KIND["gbt"]))
        buf.write(struct.pack("<III", model.dim, N_CLASSES, len(model.trees)))
        buf.write(struct.pack("<f", model.shrinkage))
        for round_trees in model.trees:
            for tree in round_trees:
                buf.write(struct.pack("<I", len(tree)))
                _write_array(buf, tree.feature, "<i4")
                _write_array(buf, tree.threshold, "<f4")
                _write_array(buf, tree.left, "<i4")
                _write_array(buf, tree.right, "<i4")
                _write_array(buf, tree.value, "<f4")
    else:
        raise ModelFormatError(f"cannot serialize {type(model).__name__}")
    with open(path, "wb") as fh:
        fh.write(buf.getvalue())


def load_model(path):
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise ModelFormatError("truncated model file")
        magic, version, kind = _HEADER.unpack(header)
        if magic != _MAGIC:
            raise ModelFormatError(f"bad magic {magic!r}, expected {_MAGIC!r}")
        if version != _VERSION:
            raise ModelFormatError(f"unsupported MDL1 version {version}")
        if kind == _KIND["svm"]:
            dim = _read_u32(fh)
            n_classes = _read_u32(fh)
            weights = _read_array(fh, n_classes * dim, "<f4").reshape(n_classes, dim)
            biases = _read_array(fh, n_classes, "<f4")
            return SvmModel(
                weights=weights.astype(np.float64), biases=biases.astype(np.float64)
            )
        if kind == _KIND["mlp"]:
            dim = _read_u32(fh)
            hidden = _read_u32(fh)
            n_classes = _read_u32(fh)
            w1 = _read_array(fh, dim * hidden, "<f4").reshape(dim, hidden)
            b1 = _read_array(fh, hidden, "<f4")
            w2 = _read_array(fh, hidden * n_classes, "<f4").reshape(hidden, n_classes)
            b2 = _read_array(fh, n_classes, "<f4")
            return MlpModel(
                w1=w1.astype(np.float64),
                b1=b1.astype(np.float64),
                w2=w2.astype(np.float64),
                b2=b2.astype(np.float64),
            )
        if kind == _KIND["gbt"]:
            dim = _read_u32(fh)
            n_classes = _read_u32(fh)
            rounds = _read_u32(fh)
            raw = fh.read(4)
            if len(raw) != 4:
                raise ModelFormatError("truncated model file")
            shrinkage = struct.unpack("<f", raw)[0]
            all_rounds = []
            for _ in range(rounds):
                round_trees = []
                for _ in range(n_classes):
                    n_nodes = _read_u32(fh)
                    feature = _read_array(fh, n_nodes, "<i4")
                    threshold = _read_array(fh, n_nodes, "<f4").astype(np.float64)
                    left = _read_array(fh, n_nodes, "<i4")
                    right = _read_array(fh, n_nodes, "<i4")
                    value = _read_array(fh, n_nodes, "<f4").astype(np.float64)
                    round_trees.append(
                        TreeNodes(feature, threshold, left, right, value)
                    )
                all_rounds.append(tuple(round_trees))
            return GbtModel(
                input_dim=dim,
                shrinkage=float(shrinkage),
                trees=tuple(all_rounds),
            )
        raise ModelFormatError(f"unknown model kind {kind}")
