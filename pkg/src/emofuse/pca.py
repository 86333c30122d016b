"""PCA by eigendecomposition of the sample covariance matrix.

Used to project 768-dim (or fused) representations down to 2-D plot
coordinates.  Components are rows, orthonormal, ordered by descending
eigenvalue, with the sign convention that each component's
largest-magnitude entry is positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["PcaProjection", "pca_project"]


@dataclass(frozen=True)
class PcaProjection:
    components: np.ndarray  # (k, d), orthonormal rows
    eigenvalues: np.ndarray  # (k,), nonnegative, descending
    mean: np.ndarray  # (d,)
    projected: np.ndarray  # (n, k), zero mean per component

    @property
    def k(self) -> int:
        return int(self.components.shape[0])


def pca_project(X, k: int) -> PcaProjection:
    """Top-k principal components of X (rows = observations).

    Requires 1 <= k <= min(n - 1, d).  Degenerate inputs (identical rows)
    yield zero eigenvalues with still-orthonormal components.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"X must be 2-D, got shape {X.shape}")
    n, d = X.shape
    if n < 2:
        raise ValueError("PCA needs at least 2 rows")
    if not np.isfinite(X).all():
        raise ValueError("X contains NaN or Inf")
    limit = min(n - 1, d)
    if not 1 <= k <= limit:
        raise ValueError(f"k must be in 1..{limit} for n={n}, d={d}; got {k}")
    mean = X.mean(axis=0)
    centered = X - mean
    cov = centered.T @ centered / (n - 1)
    eigenvalues, eigenvectors = np.linalg.eigh(cov)  # ascending
    order = np.argsort(eigenvalues)[::-1][:k]
    eigenvalues = np.maximum(eigenvalues[order], 0.0)
    components = eigenvectors[:, order].T
    for row in components:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    projected = centered @ components.T
    return PcaProjection(
        components=components,
        eigenvalues=eigenvalues,
        mean=mean,
        projected=projected,
    )
