"""Weight matrices for the weighted covariance and its sample estimator.

A Weight is carried as an explicit factor L with L L^T = W. Accumulating
the covariance through Y = X L instead of forming X W X^T cuts the cost to
O(n p q s + n p^2 s), and for the cluster-averaging weight L is sparse with
one nonzero per row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ArgumentError
from .partition import Partition, membership_matrix
from .preprocess import check_dataset


@dataclass(frozen=True)
class Weight:
    """PSD weight W = factor @ factor.T with a human-readable tag."""

    dim: int
    factor: np.ndarray
    tag: str

    def __post_init__(self):
        object.__setattr__(self, "factor", np.asarray(self.factor, dtype=np.float64))
        if self.factor.shape[0] != self.dim:
            raise ArgumentError("factor row count must equal the weight dimension")
        self.factor.setflags(write=False)

    @property
    def matrix(self) -> np.ndarray:
        return self.factor @ self.factor.T

    def scaled(self, t: float) -> "Weight":
        """Weight tW (factor scaled by sqrt(t))."""
        if t <= 0:
            raise ArgumentError("scale must be positive")
        return Weight(self.dim, np.sqrt(t) * self.factor, f"{self.tag}*{t:g}")


def identity_weight(q: int) -> Weight:
    """W = I_q / q, the naive weight."""
    if q < 1:
        raise ArgumentError("dimension must be >= 1")
    return Weight(q, np.eye(q) / np.sqrt(q), "identity")


def optimal_weight(bhat: np.ndarray | Partition) -> Weight:
    """W = Bhat (Bhat^T Bhat)^-2 Bhat^T / s for an estimated membership Bhat.

    Equivalent to averaging the columns within each estimated cluster before
    forming the covariance; reduces to identity_weight(q) when Bhat = I_q.
    """
    if isinstance(bhat, Partition):
        bhat = membership_matrix(bhat)
    bhat = np.asarray(bhat, dtype=np.float64)
    if bhat.ndim != 2:
        raise ArgumentError("membership matrix must be 2-d")
    sizes = bhat.sum(axis=0)
    if np.any(sizes < 1):
        raise ArgumentError("membership matrix has an empty cluster column")
    if not np.all(bhat.sum(axis=1) == 1):
        raise ArgumentError("membership matrix must have exactly one 1 per row")
    s = bhat.shape[1]
    factor = bhat / (sizes[None, :] * np.sqrt(s))
    return Weight(bhat.shape[0], factor, f"optimal(s={s})")


def sample_weighted_covariance(
    data,
    weight: Weight,
    mode: str = "rows",
    subset=None,
) -> np.ndarray:
    """(1/|S|) sum_i Y_i Y_i^T with Y_i = X_i L (rows) or X_i^T L (columns).

    Equals (1/|S|) sum X W X^T (resp. X^T W X); symmetrized after
    accumulation so downstream COD sees an exactly symmetric matrix.
    """
    arr = check_dataset(data)
    n, p, q = arr.shape
    if mode == "rows":
        if weight.dim != q:
            raise ArgumentError(f"weight dim {weight.dim} != q={q}")
        stack = arr
    elif mode == "columns":
        if weight.dim != p:
            raise ArgumentError(f"weight dim {weight.dim} != p={p}")
        stack = arr.transpose(0, 2, 1)
    else:
        raise ArgumentError("mode must be 'rows' or 'columns'")
    if subset is not None:
        subset = np.asarray(subset, dtype=np.int64)
        if subset.size == 0:
            raise ArgumentError("subset must be non-empty")
        stack = stack[subset]
    y = stack @ weight.factor
    sigma = np.einsum("nij,nkj->ik", y, y) / stack.shape[0]
    return (sigma + sigma.T) / 2.0
