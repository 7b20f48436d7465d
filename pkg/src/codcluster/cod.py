"""Covariance-difference dissimilarity and complete-linkage agglomeration.

The dissimilarity between rows a and b of a covariance matrix is
COD(a, b) = max_{c != a,b} |Sigma_ac - Sigma_bc|: two rows in the same
latent cluster have identical covariance with every third row, so their
COD vanishes at the population level regardless of the diagonal. Between
sets it extends by complete linkage (max over cross pairs), which makes
merge heights monotone and a threshold cut well defined.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ArgumentError
from .partition import Partition, partition_from_labels


def cod_matrix(sigma: np.ndarray) -> np.ndarray:
    """Pairwise COD for all row pairs of a symmetric covariance matrix."""
    sigma = np.asarray(sigma, dtype=np.float64)
    p = sigma.shape[0]
    if sigma.ndim != 2 or sigma.shape[1] != p:
        raise ArgumentError("covariance must be a square matrix")
    if np.abs(sigma - sigma.T).max() > 1e-8:
        raise ArgumentError("covariance must be symmetric")
    if p < 3:
        raise ArgumentError("COD needs p >= 3 so that some c != a,b exists")
    out = np.zeros((p, p))
    for a in range(p):
        diff = np.abs(sigma[a][None, :] - sigma)  # (b, c) -> |S_ac - S_bc|
        diff[:, a] = -np.inf
        np.fill_diagonal(diff, -np.inf)  # drop c == b
        out[a] = diff.max(axis=1)
    out[np.arange(p), np.arange(p)] = 0.0
    return np.maximum(out, out.T)


def mcod(sigma: np.ndarray, truth: Partition) -> float:
    """Minimum COD over pairs lying in different clusters of `truth`."""
    d = cod_matrix(sigma)
    if truth.n_clusters < 2:
        raise ArgumentError("MCOD is undefined for a single cluster")
    if len(truth) != d.shape[0]:
        raise ArgumentError("partition length must match the matrix size")
    cross = truth.labels[:, None] != truth.labels[None, :]
    return float(d[cross].min())


@dataclass(frozen=True)
class Dendrogram:
    """Full merge history of a complete-linkage agglomeration.

    merges[t] = (i, j, height): at step t the clusters currently labelled i
    and j (original-index representatives: the smallest member index) merge
    at the given height. Heights are non-decreasing, so cutting at any
    threshold yields a valid partition.
    """

    m: int
    merges: tuple[tuple[int, int, float], ...]

    def heights(self) -> np.ndarray:
        return np.array([h for _, _, h in self.merges])

    def cut_threshold(self, alpha: float) -> Partition:
        """Apply every merge with height <= alpha."""
        parent = list(range(self.m))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, h in self.merges:
            if h <= alpha:
                parent[find(j)] = find(i)
        return partition_from_labels([find(x) for x in range(self.m)])

    def cut_k(self, k: int) -> Partition:
        """Stop after m - k merges, leaving exactly k clusters."""
        if not 1 <= k <= self.m:
            raise ArgumentError(f"k must be in [1, {self.m}]")
        parent = list(range(self.m))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, _ in self.merges[: self.m - k]:
            parent[find(j)] = find(i)
        return partition_from_labels([find(x) for x in range(self.m)])


def agglomerate(d: np.ndarray) -> Dendrogram:
    """Complete-linkage agglomeration of a symmetric dissimilarity matrix.

    Ties are broken deterministically by the lexicographically smallest
    (min representative, max representative) pair. Complete linkage lets
    the merged row be updated as an elementwise max, so the whole run is
    O(m^3) worst case with O(m^2) vectorized steps.
    """
    d = np.asarray(d, dtype=np.float64)
    m = d.shape[0]
    if d.ndim != 2 or d.shape[1] != m:
        raise ArgumentError("dissimilarity must be a square matrix")
    if not np.allclose(d, d.T):
        raise ArgumentError("dissimilarity must be symmetric")
    work = d.copy()
    np.fill_diagonal(work, np.inf)
    active = list(range(m))  # representatives, always sorted
    merges: list[tuple[int, int, float]] = []
    while len(active) > 1:
        sub = work[np.ix_(active, active)]
        flat = int(np.argmin(sub))
        ai, aj = divmod(flat, len(active))
        if ai > aj:
            ai, aj = aj, ai
        i, j = active[ai], active[aj]
        h = float(sub[ai, aj])
        merges.append((i, j, h))
        # complete linkage: new cluster's distance is the max of the two rows
        work[i, :] = np.maximum(work[i, :], work[j, :])
        work[:, i] = work[i, :]
        work[i, i] = np.inf
        active.remove(j)
    return Dendrogram(m, tuple(merges))


def cluster_covariance(sigma: np.ndarray, alpha: float) -> Partition:
    """COD dissimilarity + complete-linkage tree + threshold cut at alpha."""
    return agglomerate(cod_matrix(sigma)).cut_threshold(alpha)
