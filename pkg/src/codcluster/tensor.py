"""Mode-k matricization and identity-weight clustering of 3-way tensors.

Unfolding follows the standard convention: the mode-k fibers become
columns, with earlier non-k modes varying fastest in the column index.
Each mode is clustered independently from its unfolded covariance
(1/n) sum X_(k) W X_(k)^T with W the uniform identity weight.
"""

from __future__ import annotations

import numpy as np

from .cod import agglomerate, cod_matrix
from .exceptions import ArgumentError
from .partition import Partition
from .pipelines import StopRule
from .weights import identity_weight


def matricize(x: np.ndarray, mode: int) -> np.ndarray:
    """Mode-k unfolding of a 3-way tensor (mode in {1, 2, 3})."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 3:
        raise ArgumentError("input must be a 3-way tensor")
    if mode not in (1, 2, 3):
        raise ArgumentError("mode must be 1, 2, or 3")
    k = mode - 1
    return np.moveaxis(x, k, 0).reshape(x.shape[k], -1, order="F")


def fold(mat: np.ndarray, mode: int, shape: tuple[int, int, int]) -> np.ndarray:
    """Inverse of matricize for the given original tensor shape."""
    mat = np.asarray(mat, dtype=np.float64)
    if mode not in (1, 2, 3):
        raise ArgumentError("mode must be 1, 2, or 3")
    k = mode - 1
    rest = tuple(s for i, s in enumerate(shape) if i != k)
    moved = mat.reshape((shape[k], *rest), order="F")
    return np.moveaxis(moved, 0, k)


def mode_covariance(data: np.ndarray, mode: int) -> np.ndarray:
    """(1/n) sum_i X_(mode) W X_(mode)^T with W = I / (product of the other
    two dimensions)."""
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 4:
        raise ArgumentError("expected an (n, J, P, Q) stack of tensors")
    if not np.all(np.isfinite(data)):
        raise ArgumentError("dataset contains non-finite entries")
    n = data.shape[0]
    unfolded = np.stack([matricize(data[i], mode) for i in range(n)])
    weight = identity_weight(unfolded.shape[2])
    y = unfolded @ weight.factor
    sigma = np.einsum("nij,nkj->ik", y, y) / n
    return (sigma + sigma.T) / 2.0


def cluster_tensor_identity(
    data: np.ndarray, stops: tuple[StopRule, StopRule, StopRule]
) -> tuple[Partition, Partition, Partition]:
    """Cluster each tensor mode from its unfolded identity-weight covariance."""
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 4:
        raise ArgumentError("expected an (n, J, P, Q) stack of tensors")
    if len(stops) != 3:
        raise ArgumentError("one stop rule per mode required")
    if any(d < 3 for d in data.shape[1:]):
        raise ArgumentError("each mode dimension must be >= 3")
    parts = []
    for mode, stop in zip((1, 2, 3), stops):
        tree = agglomerate(cod_matrix(mode_covariance(data, mode)))
        if stop.kind == "k":
            parts.append(tree.cut_k(int(stop.value)))
        elif stop.kind == "threshold":
            parts.append(tree.cut_threshold(float(stop.value)))
        else:
            raise ArgumentError("tensor clustering supports threshold or k cuts")
    return tuple(parts)
