"""Canonical partitions and membership-matrix conversions."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codcluster import (
    ArgumentError,
    Partition,
    canonical_labels,
    concat_partitions,
    membership_matrix,
    partition_from_labels,
    partition_from_membership,
    restrict_partition,
)


def test_canonical_labels_first_appearance_order():
    assert canonical_labels([5, 5, 2, 5, 9, 2]).tolist() == [0, 0, 1, 0, 2, 1]
    assert canonical_labels([0, 1, 2]).tolist() == [0, 1, 2]
    assert canonical_labels([3, 3, 3]).tolist() == [0, 0, 0]


def test_partition_from_labels_counts_clusters():
    part = partition_from_labels([7, 7, 1, 3])
    assert part.n_clusters == 3
    assert part.labels.tolist() == [0, 0, 1, 2]
    assert len(part) == 4
    assert part.sizes().tolist() == [2, 1, 1]
    assert [c.tolist() for c in part.clusters()] == [[0, 1], [2], [3]]


def test_partition_from_labels_rejects_bad_input():
    with pytest.raises(ArgumentError):
        partition_from_labels([])
    with pytest.raises(ArgumentError):
        partition_from_labels([[0, 1], [1, 0]])


def test_partition_equality_is_label_equality():
    a = partition_from_labels([0, 0, 1])
    b = partition_from_labels([4, 4, 2])
    c = partition_from_labels([0, 1, 1])
    assert a == b
    assert a != c


def test_partition_labels_are_read_only():
    part = partition_from_labels([0, 1, 1])
    with pytest.raises(ValueError):
        part.labels[0] = 2


def test_membership_matrix_one_hot():
    part = partition_from_labels([0, 1, 0, 2])
    mat = membership_matrix(part)
    assert mat.tolist() == [[1, 0, 0], [0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert partition_from_membership(mat) == part


def test_partition_from_membership_validates():
    with pytest.raises(ArgumentError):
        partition_from_membership(np.zeros((3, 2)))  # empty rows
    with pytest.raises(ArgumentError):
        partition_from_membership([[1, 1], [1, 0]])  # two clusters for one row
    with pytest.raises(ArgumentError):
        partition_from_membership([[1, 0], [1, 0], [2, 0]])  # non-binary
    with pytest.raises(ArgumentError):
        partition_from_membership([[1, 0], [1, 0]])  # empty cluster column


def test_restrict_partition_recanonicalizes():
    part = partition_from_labels([0, 0, 1, 2, 2])
    sub = restrict_partition(part, [3, 4, 2])
    assert sub.labels.tolist() == [0, 0, 1]
    assert sub.n_clusters == 2


def test_concat_partitions_keeps_blocks_disjoint():
    a = partition_from_labels([0, 0, 1])
    b = partition_from_labels([0, 1])
    out = concat_partitions([a, b])
    assert out.labels.tolist() == [0, 0, 1, 2, 3]
    assert out.n_clusters == 4


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(min_value=-5, max_value=5), min_size=1, max_size=12))
def test_canonical_labels_idempotent_and_structure_preserving(raw):
    canon = canonical_labels(raw)
    assert canonical_labels(canon).tolist() == canon.tolist()
    assert canon[0] == 0
    # same-cluster relation preserved
    raw_arr = np.asarray(raw)
    assert np.array_equal(
        raw_arr[:, None] == raw_arr[None, :], canon[:, None] == canon[None, :]
    )


def test_partition_direct_construction_matches_factory():
    part = Partition(np.array([0, 1, 1, 2]), 3)
    assert part == partition_from_labels([0, 1, 1, 2])
