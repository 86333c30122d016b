"""Early (feature-level) and late (decision-level) fusion operators.

Three modality inputs are combined by concatenation, elementwise sum, or
elementwise product.  Concatenation order is fixed as text, speech, video;
sum and product are permutation-invariant.  Late fusion consumes per-class
probability vectors and does not renormalize: the fused vector feeds a
downstream classifier as features.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .embio import PROB_DIM, PROB_SUM_TOL

__all__ = [
    "FusionLevel",
    "FusionOperator",
    "FusionStrategy",
    "ALL_STRATEGIES",
    "FusedVector",
    "FusionError",
    "early_fuse",
    "late_fuse",
]

MODALITY_ORDER = ("text", "speech", "video")


class FusionLevel(str, Enum):
    EARLY = "early"
    LATE = "late"


class FusionOperator(str, Enum):
    CONCAT = "concat"
    SUM = "sum"
    PRODUCT = "product"


class FusionError(ValueError):
    pass


@dataclass(frozen=True)
class FusionStrategy:
    level: FusionLevel
    operator: FusionOperator

    @classmethod
    def parse(cls, level: str, operator: str) -> "FusionStrategy":
        try:
            return cls(FusionLevel(level.lower()), FusionOperator(operator.lower()))
        except ValueError:
            raise FusionError(
                f"unknown fusion strategy {level!r}/{operator!r}; expected "
                "early|late x concat|sum|product"
            ) from None

    @property
    def name(self) -> str:
        return f"{self.level.value}-{self.operator.value}"


# All six combinations of the experiment grid, in report row order.
ALL_STRATEGIES = tuple(
    FusionStrategy(level, op) for level in FusionLevel for op in FusionOperator
)


@dataclass(frozen=True)
class FusedVector:
    values: np.ndarray
    strategy: FusionStrategy
    modalities: tuple[str, ...] = MODALITY_ORDER


def _as_float_rows(name: str, a) -> np.ndarray:
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim not in (1, 2):
        raise FusionError(f"{name} input must be 1-D or 2-D, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise FusionError(f"{name} input contains NaN or Inf")
    return arr


def _combine(inputs: list[np.ndarray], op: FusionOperator) -> np.ndarray:
    if op is FusionOperator.CONCAT:
        return np.concatenate(inputs, axis=-1)
    dims = {a.shape[-1] for a in inputs}
    if len(dims) != 1:
        raise FusionError(
            f"{op.value} fusion requires equal dims, got "
            f"{[a.shape[-1] for a in inputs]}"
        )
    # Reduce in elementwise value-sorted order: float addition/multiplication
    # are not associative, so a fixed positional order would make the result
    # depend on which argument carried which modality.  Sorting first makes
    # sum and product bitwise invariant under modality permutation.
    ordered = np.sort(np.stack(inputs, axis=0), axis=0)
    if op is FusionOperator.SUM:
        return ordered[0] + ordered[1] + ordered[2]
    return ordered[0] * ordered[1] * ordered[2]


def early_fuse(text_vec, speech_vec, video_vec, op: FusionOperator) -> FusedVector:
    """Fuse representation vectors (or row-aligned matrices) of the three
    modalities in the fixed order text, speech, video."""
    op = FusionOperator(op)
    inputs = [
        _as_float_rows(m, v)
        for m, v in zip(MODALITY_ORDER, (text_vec, speech_vec, video_vec))
    ]
    shapes = {a.ndim for a in inputs}
    if len(shapes) != 1:
        raise FusionError("all inputs must have the same number of dimensions")
    values = _combine(inputs, op)
    return FusedVector(values, FusionStrategy(FusionLevel.EARLY, op))


def _check_probability_rows(name: str, arr: np.ndarray) -> None:
    rows = np.atleast_2d(arr)
    if rows.shape[-1] != PROB_DIM:
        raise FusionError(
            f"{name} probabilities must have dim {PROB_DIM}, got {rows.shape[-1]}"
        )
    if (rows < 0).any():
        raise FusionError(f"{name} probabilities contain negative values")
    sums = rows.sum(axis=-1)
    if np.abs(sums - 1.0).max() > PROB_SUM_TOL:
        worst = float(sums[np.abs(sums - 1.0).argmax()])
        raise FusionError(f"{name} probability rows must sum to 1, got {worst:.6f}")


def late_fuse(text_prob, speech_prob, video_prob, op: FusionOperator) -> FusedVector:
    """Fuse per-modality class-probability vectors (or row-aligned matrices).

    Inputs are validated as probability vectors; the sum/product result is
    the raw combination, deliberately not renormalized.
    """
    op = FusionOperator(op)
    inputs = [
        _as_float_rows(m, v)
        for m, v in zip(MODALITY_ORDER, (text_prob, speech_prob, video_prob))
    ]
    for name, arr in zip(MODALITY_ORDER, inputs):
        _check_probability_rows(name, arr)
    shapes = {a.ndim for a in inputs}
    if len(shapes) != 1:
        raise FusionError("all inputs must have the same number of dimensions")
    values = _combine(inputs, op)
    return FusedVector(values, FusionStrategy(FusionLevel.LATE, op))
