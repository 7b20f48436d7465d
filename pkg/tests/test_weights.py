"""Weight matrices and the factored sample weighted covariance."""

import numpy as np
import pytest

from codcluster import (
    ArgumentError,
    Weight,
    identity_weight,
    optimal_weight,
    partition_from_labels,
    sample_weighted_covariance,
)


def test_identity_weight_is_scaled_identity():
    w = identity_weight(4)
    assert np.allclose(w.matrix, np.eye(4) / 4.0)
    assert w.tag == "identity"
    with pytest.raises(ArgumentError):
        identity_weight(0)


def test_averaging_weight_two_balanced_clusters():
    # two clusters of two columns: W = B (B^T B)^-2 B^T / s has constant
    # 1/(size^2 * s) = 1/8 within each block and 0 across
    b = np.array([[1, 0], [1, 0], [0, 1], [0, 1]])
    w = optimal_weight(b)
    expect = np.zeros((4, 4))
    expect[:2, :2] = 1 / 8
    expect[2:, 2:] = 1 / 8
    assert np.allclose(w.matrix, expect)


def test_averaging_weight_single_cluster_is_global_mean():
    w = optimal_weight(np.ones((3, 1)))
    assert np.allclose(w.matrix, np.full((3, 3), 1 / 9))


def test_averaging_weight_with_all_singletons_equals_identity():
    q = 5
    w = optimal_weight(np.eye(q))
    assert np.allclose(w.matrix, identity_weight(q).matrix)


def test_averaging_weight_accepts_partition_input():
    part = partition_from_labels([0, 0, 1, 1])
    b = np.array([[1, 0], [1, 0], [0, 1], [0, 1]])
    assert np.allclose(optimal_weight(part).matrix, optimal_weight(b).matrix)


def test_averaging_weight_matches_closed_form_on_random_partitions():
    rng = np.random.default_rng(0)
    for _ in range(20):
        q = int(rng.integers(3, 12))
        part = partition_from_labels(rng.integers(0, 4, size=q))
        b = np.zeros((q, part.n_clusters))
        b[np.arange(q), part.labels] = 1.0
        s = part.n_clusters
        direct = b @ np.linalg.matrix_power(b.T @ b, -2) @ b.T / s
        assert np.allclose(optimal_weight(b).matrix, direct, atol=1e-12)


def test_averaging_weight_validates_membership():
    with pytest.raises(ArgumentError):
        optimal_weight(np.array([[1, 0], [0, 0]]))  # row with no cluster
    with pytest.raises(ArgumentError):
        optimal_weight(np.array([[1, 0], [1, 0]]))  # empty cluster column
    with pytest.raises(ArgumentError):
        optimal_weight(np.ones(4))


def test_scaled_weight_multiplies_matrix():
    w = identity_weight(3)
    assert np.allclose(w.scaled(7.0).matrix, 7.0 * w.matrix)
    with pytest.raises(ArgumentError):
        w.scaled(0.0)


def _direct_wcov(arr, w, mode, subset=None):
    """Reference loop: (1/|S|) sum X W X^T (rows) or X^T W X (columns)."""
    idx = range(arr.shape[0]) if subset is None else subset
    acc = None
    for i in idx:
        x = arr[i] if mode == "rows" else arr[i].T
        term = x @ w @ x.T
        acc = term if acc is None else acc + term
    return acc / len(list(idx))


@pytest.mark.parametrize("mode", ["rows", "columns"])
def test_factored_covariance_matches_direct_loop(mode):
    rng = np.random.default_rng(1)
    arr = rng.normal(size=(6, 5, 7))
    dim = 7 if mode == "rows" else 5
    weights = [
        identity_weight(dim),
        optimal_weight(partition_from_labels(rng.integers(0, 3, size=dim))),
        Weight(dim, rng.normal(size=(dim, 4)), "random"),
    ]
    for w in weights:
        got = sample_weighted_covariance(arr, w, mode)
        ref = _direct_wcov(arr, w.matrix, mode)
        assert np.abs(got - ref).max() < 1e-12
        assert np.array_equal(got, got.T)


def test_factored_covariance_respects_subset():
    rng = np.random.default_rng(2)
    arr = rng.normal(size=(8, 4, 6))
    w = identity_weight(6)
    sub = np.array([1, 3, 6])
    got = sample_weighted_covariance(arr, w, "rows", subset=sub)
    ref = _direct_wcov(arr, w.matrix, "rows", subset=sub.tolist())
    assert np.abs(got - ref).max() < 1e-12


def test_factored_covariance_validates_arguments():
    arr = np.random.default_rng(3).normal(size=(4, 3, 5))
    with pytest.raises(ArgumentError):
        sample_weighted_covariance(arr, identity_weight(4), "rows")  # dim != q
    with pytest.raises(ArgumentError):
        sample_weighted_covariance(arr, identity_weight(5), "diag")
    with pytest.raises(ArgumentError):
        sample_weighted_covariance(arr, identity_weight(5), "rows", subset=[])
