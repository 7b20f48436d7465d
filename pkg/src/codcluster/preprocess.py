"""Dataset validation and per-feature standardization."""

from __future__ import annotations

import numpy as np

from .exceptions import ArgumentError, DegenerateFeatureError


def check_dataset(data, min_rows: int = 2, min_cols: int = 1) -> np.ndarray:
    """Validate an (n, p, q) stack of sample matrices and return it as float64."""
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 3:
        raise ArgumentError(f"expected an (n, p, q) array, got shape {arr.shape}")
    n, p, q = arr.shape
    if n < 1 or p < min_rows or q < min_cols:
        raise ArgumentError(f"dataset too small: n={n}, p={p}, q={q}")
    if not np.all(np.isfinite(arr)):
        raise ArgumentError("dataset contains non-finite entries")
    return arr


def standardize(data, ddof: int = 1) -> np.ndarray:
    """Center and scale each feature (i, j) across samples to mean 0, variance 1.

    ddof=1 uses the unbiased n-1 divisor (default), ddof=0 uses n.
    """
    arr = check_dataset(data)
    n = arr.shape[0]
    if n < 2:
        raise ArgumentError("standardization needs at least two samples")
    if ddof not in (0, 1):
        raise ArgumentError("ddof must be 0 or 1")
    mean = arr.mean(axis=0)
    sd = arr.std(axis=0, ddof=ddof)
    zero = np.argwhere(sd == 0.0)
    if zero.size:
        i, j = (int(v) for v in zero[0])
        raise DegenerateFeatureError(i, j)
    return (arr - mean) / sd
