"""Estimator-style front end (scikit-learn conventions).

Thin wrappers over the functional pipelines: hyperparameters in
__init__, computation in fit, learned attributes with trailing
underscores, get_params/set_params inherited from BaseEstimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .exceptions import ArgumentError
from .pipelines import (
    MeanLayerSpec,
    PipelineOptions,
    StopRule,
    cluster_naive,
    cluster_nested,
    cluster_one_step,
    cluster_two_step,
)
from .tensor import cluster_tensor_identity


def _stop_rule(alpha, k, tune) -> StopRule:
    chosen = sum(x is not None and x is not False for x in (alpha, k, tune))
    if chosen != 1:
        raise ArgumentError("specify exactly one of alpha, k, tune per axis")
    if alpha is not None:
        return StopRule("threshold", float(alpha))
    if k is not None:
        return StopRule("k", int(k))
    return StopRule("tuned")


class CODCluster(BaseEstimator):
    """Row/column clustering of (n, p, q) matrix data.

    Parameters mirror the CLI: method selects the pipeline, each axis gets
    exactly one stop rule (alpha threshold, target k, or tune=True).

    Attributes after fit: row_labels_, col_labels_ (None when the method
    does not produce that axis), result_ (full trace).
    """

    def __init__(
        self,
        method="two-step",
        axis="both",
        row_alpha=None,
        row_k=None,
        row_tune=False,
        col_alpha=None,
        col_k=None,
        col_tune=False,
        standardize=True,
        split=False,
        seed=0,
    ):
        self.method = method
        self.axis = axis
        self.row_alpha = row_alpha
        self.row_k = row_k
        self.row_tune = row_tune
        self.col_alpha = col_alpha
        self.col_k = col_k
        self.col_tune = col_tune
        self.standardize = standardize
        self.split = split
        self.seed = seed

    def _options(self) -> PipelineOptions:
        row_stop = None
        col_stop = None
        if self.axis in ("rows", "both") or self.method != "naive":
            row_stop = _stop_rule(self.row_alpha, self.row_k, self.row_tune or None)
        if self.axis in ("columns", "both") or self.method != "naive":
            col_stop = _stop_rule(self.col_alpha, self.col_k, self.col_tune or None)
        return PipelineOptions(
            row_stop=row_stop or col_stop,
            col_stop=col_stop,
            standardize=self.standardize,
            split=self.split,
            seed=self.seed,
        )

    def fit(self, X, y=None):
        X = np.asarray(X, dtype=np.float64)
        opts = self._options()
        if self.method == "naive":
            if self.axis == "both":
                rows = cluster_naive(X, "rows", opts)
                cols = cluster_naive(X, "columns", opts)
                row_part, col_part = rows.row_partition, cols.col_partition
                trace = rows.trace + cols.trace
                self.result_ = (rows, cols)
            else:
                res = cluster_naive(X, self.axis, opts)
                row_part, col_part, trace = res.row_partition, res.col_partition, res.trace
                self.result_ = res
        elif self.method == "one-step":
            res = cluster_one_step(X, opts)
            row_part, col_part, trace = res.row_partition, res.col_partition, res.trace
            self.result_ = res
        elif self.method == "two-step":
            res = cluster_two_step(X, opts)
            row_part, col_part, trace = res.row_partition, res.col_partition, res.trace
            self.result_ = res
        else:
            raise ArgumentError(f"unknown method {self.method!r}")
        self.row_partition_ = row_part
        self.col_partition_ = col_part
        self.row_labels_ = None if row_part is None else row_part.labels.copy()
        self.col_labels_ = None if col_part is None else col_part.labels.copy()
        self.trace_ = trace
        return self


class NestedCODCluster(BaseEstimator):
    """Mean-layer blocks first, then two-step covariance clustering within
    each block."""

    def __init__(
        self,
        mean_row_alpha=None,
        mean_row_k=None,
        mean_col_alpha=None,
        mean_col_k=None,
        row_alpha=None,
        row_k=None,
        row_tune=False,
        col_alpha=None,
        col_k=None,
        col_tune=False,
        standardize=True,
        split=False,
        seed=0,
    ):
        self.mean_row_alpha = mean_row_alpha
        self.mean_row_k = mean_row_k
        self.mean_col_alpha = mean_col_alpha
        self.mean_col_k = mean_col_k
        self.row_alpha = row_alpha
        self.row_k = row_k
        self.row_tune = row_tune
        self.col_alpha = col_alpha
        self.col_k = col_k
        self.col_tune = col_tune
        self.standardize = standardize
        self.split = split
        self.seed = seed

    def fit(self, X, y=None):
        mean_layer = MeanLayerSpec(
            row_stop=_stop_rule(self.mean_row_alpha, self.mean_row_k, None),
            col_stop=_stop_rule(self.mean_col_alpha, self.mean_col_k, None),
        )
        opts = PipelineOptions(
            row_stop=_stop_rule(self.row_alpha, self.row_k, self.row_tune or None),
            col_stop=_stop_rule(self.col_alpha, self.col_k, self.col_tune or None),
            standardize=self.standardize,
            split=self.split,
            seed=self.seed,
        )
        res = cluster_nested(np.asarray(X, dtype=np.float64), mean_layer, opts)
        self.result_ = res
        self.first_row_labels_ = res.first_rows.labels.copy()
        self.first_col_labels_ = res.first_cols.labels.copy()
        self.row_labels_ = res.rows.labels.copy()
        self.col_labels_ = res.cols.labels.copy()
        return self


class TensorCODCluster(BaseEstimator):
    """Per-mode clustering of (n, J, P, Q) tensor data with the uniform
    identity weight."""

    def __init__(self, alphas=None, ks=None):
        self.alphas = alphas
        self.ks = ks

    def fit(self, X, y=None):
        if (self.alphas is None) == (self.ks is None):
            raise ArgumentError("specify exactly one of alphas or ks (3 values)")
        if self.alphas is not None:
            stops = tuple(StopRule("threshold", float(a)) for a in self.alphas)
        else:
            stops = tuple(StopRule("k", int(k)) for k in self.ks)
        if len(stops) != 3:
            raise ArgumentError("need one stop rule per mode")
        parts = cluster_tensor_identity(np.asarray(X, dtype=np.float64), stops)
        self.partitions_ = parts
        self.labels_ = tuple(p.labels.copy() for p in parts)
        return self
