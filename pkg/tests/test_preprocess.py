"""Dataset validation and per-feature standardization."""

import numpy as np
import pytest

from codcluster import ArgumentError, DegenerateFeatureError, check_dataset, standardize


def test_check_dataset_accepts_and_casts():
    arr = check_dataset([[[1, 2], [3, 4]], [[5, 6], [7, 8]]])
    assert arr.shape == (2, 2, 2)
    assert arr.dtype == np.float64


def test_check_dataset_rejects_bad_shapes_and_values():
    with pytest.raises(ArgumentError):
        check_dataset(np.zeros((4, 5)))
    with pytest.raises(ArgumentError):
        check_dataset(np.zeros((3, 1, 4)))  # p < 2
    bad = np.zeros((2, 3, 3))
    bad[1, 2, 0] = np.nan
    with pytest.raises(ArgumentError):
        check_dataset(bad)
    bad[1, 2, 0] = np.inf
    with pytest.raises(ArgumentError):
        check_dataset(bad)


def test_standardize_gives_zero_mean_unit_variance():
    rng = np.random.default_rng(0)
    arr = rng.normal(2.0, 3.0, size=(20, 4, 5))
    out = standardize(arr)
    assert np.allclose(out.mean(axis=0), 0.0, atol=1e-12)
    assert np.allclose(out.std(axis=0, ddof=1), 1.0, atol=1e-12)
    out0 = standardize(arr, ddof=0)
    assert np.allclose(out0.std(axis=0, ddof=0), 1.0, atol=1e-12)


def test_standardize_rejects_constant_feature_with_location():
    arr = np.random.default_rng(1).normal(size=(5, 3, 3))
    arr[:, 1, 2] = 7.0
    with pytest.raises(DegenerateFeatureError) as err:
        standardize(arr)
    assert (err.value.i, err.value.j) == (1, 2)


def test_standardize_needs_two_samples_and_valid_ddof():
    with pytest.raises(ArgumentError):
        standardize(np.zeros((1, 3, 3)))
    with pytest.raises(ArgumentError):
        standardize(np.random.default_rng(2).normal(size=(4, 3, 3)), ddof=2)
