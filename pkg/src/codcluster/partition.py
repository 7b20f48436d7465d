"""Hard partitions of index sets and their binary membership-matrix view.

Partitions are always stored in canonical form: clusters are numbered by
first appearance, so labels[0] == 0 and every new cluster id is one larger
than the largest id seen so far. This makes outputs deterministic and two
partitions comparable with plain equality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ArgumentError


@dataclass(frozen=True)
class Partition:
    """Canonical hard partition of m indices into K clusters."""

    labels: np.ndarray
    n_clusters: int

    def __post_init__(self):
        object.__setattr__(self, "labels", np.asarray(self.labels, dtype=np.int64))
        self.labels.setflags(write=False)

    def __len__(self) -> int:
        return self.labels.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n_clusters == other.n_clusters and np.array_equal(
            self.labels, other.labels
        )

    def clusters(self) -> list[np.ndarray]:
        """Member indices of each cluster, ordered by cluster id."""
        return [np.flatnonzero(self.labels == k) for k in range(self.n_clusters)]

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_clusters)


def canonical_labels(labels) -> np.ndarray:
    """Relabel arbitrary integer ids by order of first appearance."""
    labels = np.asarray(labels, dtype=np.int64)
    _, first = np.unique(labels, return_index=True)
    order = labels[np.sort(first)]
    remap = {int(old): new for new, old in enumerate(order)}
    return np.array([remap[int(v)] for v in labels], dtype=np.int64)


def partition_from_labels(labels) -> Partition:
    """Build a canonical Partition from an arbitrary integer label vector."""
    labels = np.asarray(labels, dtype=np.int64)
    if labels.ndim != 1 or labels.size == 0:
        raise ArgumentError("labels must be a non-empty 1-d integer vector")
    canon = canonical_labels(labels)
    return Partition(canon, int(canon.max()) + 1)


def membership_matrix(part: Partition) -> np.ndarray:
    """m x K binary matrix with one 1 per row at the cluster id."""
    m = len(part)
    mat = np.zeros((m, part.n_clusters), dtype=np.int64)
    mat[np.arange(m), part.labels] = 1
    return mat


def partition_from_membership(mat) -> Partition:
    """Inverse of membership_matrix (validates the one-hot structure)."""
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.size == 0:
        raise ArgumentError("membership matrix must be 2-d and non-empty")
    if not np.all((mat == 0) | (mat == 1)):
        raise ArgumentError("membership matrix must be binary")
    if not np.all(mat.sum(axis=1) == 1):
        raise ArgumentError("each row must belong to exactly one cluster")
    if not np.all(mat.sum(axis=0) >= 1):
        raise ArgumentError("every cluster column must be non-empty")
    return partition_from_labels(np.argmax(mat, axis=1))


def restrict_partition(part: Partition, indices) -> Partition:
    """Partition induced on a subset of indices (re-canonicalized)."""
    return partition_from_labels(part.labels[np.asarray(indices)])


def concat_partitions(parts: list[Partition]) -> Partition:
    """Concatenate partitions of disjoint blocks with globally unique labels."""
    labels = []
    offset = 0
    for p in parts:
        labels.append(p.labels + offset)
        offset += p.n_clusters
    return partition_from_labels(np.concatenate(labels))
