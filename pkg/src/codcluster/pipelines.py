"""End-to-end clustering drivers.

Four pipelines share one step primitive (weighted covariance -> pairwise
dissimilarity -> complete-linkage tree -> cut):

- naive: one pass per axis with the uniform identity weight.
- one-step: rows with the identity weight, then columns with the
  cluster-averaging weight built from the estimated row clusters.
- two-step: one-step plus a final row pass re-weighted by the estimated
  column clusters.
- nested: a mean-layer pre-clustering, then two-step inside each block.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .cod import agglomerate, cod_matrix
from .exceptions import ArgumentError
from .partition import (
    Partition,
    membership_matrix,
    partition_from_labels,
)
from .preprocess import check_dataset, standardize
from .rng import stream
from .tuning import TuneReport, select_alpha, split_folds
from .weights import Weight, identity_weight, optimal_weight, sample_weighted_covariance

__all__ = [
    "StopRule",
    "PipelineOptions",
    "StepTrace",
    "ClusterResult",
    "MeanLayerSpec",
    "NestedResult",
    "split_folds",
    "cluster_naive",
    "cluster_one_step",
    "cluster_two_step",
    "cluster_nested",
]


@dataclass(frozen=True)
class StopRule:
    """Where to cut the tree: fixed threshold, target K, or tuned threshold.

    Tuned cuts average the cross-validation loss over `splits` random
    splits, with `fraction` of the tuning samples feeding each split's
    tree; the defaults trade tuning cost for stability at small n.
    """

    kind: str  # "threshold" | "k" | "tuned"
    value: float | int | None = None
    grid: np.ndarray | None = None  # optional explicit grid for "tuned"
    splits: int = 5
    fraction: float = 0.7

    def __post_init__(self):
        if self.kind not in ("threshold", "k", "tuned"):
            raise ArgumentError(f"unknown stop rule {self.kind!r}")
        if self.kind == "threshold" and (
            self.value is None or not np.isfinite(self.value)
        ):
            raise ArgumentError("threshold must be finite")
        if self.kind == "k" and (self.value is None or int(self.value) < 1):
            raise ArgumentError("target cluster count must be >= 1")


@dataclass(frozen=True)
class PipelineOptions:
    """Shared pipeline settings; splitting is off by default because it is
    unstable at small sample sizes."""

    row_stop: StopRule
    col_stop: StopRule | None = None
    standardize: bool = True
    split: bool = False
    seed: int = 0


@dataclass(frozen=True)
class StepTrace:
    """Record of one clustering step, in execution order."""

    name: str
    mode: str
    weight_tag: str
    stop: str  # "alpha=..." or "k=..."
    n_clusters: int
    degenerate: bool  # all-singletons or single-cluster outcome
    heights: np.ndarray
    tuning: TuneReport | None = None


@dataclass(frozen=True)
class ClusterResult:
    row_partition: Partition | None
    col_partition: Partition | None
    trace: tuple[StepTrace, ...]
    folds: tuple[np.ndarray, ...] | None = None


def _prepare(data, opts: PipelineOptions) -> np.ndarray:
    arr = check_dataset(data)
    return standardize(arr) if opts.standardize else arr


def _run_step(
    arr: np.ndarray,
    name: str,
    mode: str,
    weight: Weight,
    stop: StopRule,
    subset,
    tune_subset,
    seed: int,
) -> tuple[Partition, StepTrace]:
    sigma = sample_weighted_covariance(arr, weight, mode, subset=subset)
    tree = agglomerate(cod_matrix(sigma))
    report = None
    if stop.kind == "k":
        part = tree.cut_k(int(stop.value))
        label = f"k={int(stop.value)}"
    else:
        if stop.kind == "tuned":
            sub_arr = arr if tune_subset is None else arr[tune_subset]
            report = select_alpha(
                sub_arr,
                weight,
                mode,
                grid=stop.grid,
                seed=seed,
                n_splits=stop.splits,
                tree_fraction=stop.fraction,
            )
            alpha = report.alpha
        else:
            alpha = float(stop.value)
        part = tree.cut_threshold(alpha)
        label = f"alpha={alpha:.6g}"
    m = len(part)
    trace = StepTrace(
        name=name,
        mode=mode,
        weight_tag=weight.tag,
        stop=label,
        n_clusters=part.n_clusters,
        degenerate=part.n_clusters in (1, m),
        heights=tree.heights(),
        tuning=report,
    )
    return part, trace


def cluster_naive(data, axis: str, opts: PipelineOptions) -> ClusterResult:
    """Single-axis clustering with the uniform identity weight."""
    arr = _prepare(data, opts)
    n, p, q = arr.shape
    if axis == "rows":
        weight, mode = identity_weight(q), "rows"
    elif axis == "columns":
        weight, mode = identity_weight(p), "columns"
    else:
        raise ArgumentError("axis must be 'rows' or 'columns'")
    stop = opts.row_stop if axis == "rows" else (opts.col_stop or opts.row_stop)
    part, trace = _run_step(arr, "naive", mode, weight, stop, None, None, opts.seed)
    if axis == "rows":
        return ClusterResult(part, None, (trace,))
    return ClusterResult(None, part, (trace,))


def _folds(arr: np.ndarray, opts: PipelineOptions):
    """Sample-splitting folds for the iterative pipelines.

    Three folds: the first is the tuning data, the second feeds the row
    covariances, and the third the column covariance, so no step's
    covariance shares samples with the data that chose its threshold or
    the opposite axis's estimate.
    """
    if not opts.split:
        return None
    n = arr.shape[0]
    if n < 3:
        raise ArgumentError("splitting needs at least 3 samples")
    perm = stream(opts.seed, "pipeline-split").permutation(n)
    return tuple(np.sort(f) for f in np.array_split(perm, 3))


def cluster_one_step(data, opts: PipelineOptions) -> ClusterResult:
    """Rows with the identity weight, then columns re-weighted by the
    estimated row clusters. With splitting on, each step's covariance and
    its tuning data come from disjoint folds."""
    if opts.col_stop is None:
        raise ArgumentError("one-step clustering needs a column stop rule")
    arr = _prepare(data, opts)
    n, p, q = arr.shape
    folds = _folds(arr, opts)
    tune_f, row_f, col_f = folds if folds else (None, None, None)
    row_part, t1 = _run_step(
        arr, "rows", "rows", identity_weight(q), opts.row_stop, row_f, tune_f, opts.seed
    )
    col_weight = optimal_weight(membership_matrix(row_part))
    col_part, t2 = _run_step(
        arr, "columns", "columns", col_weight, opts.col_stop, col_f, row_f, opts.seed + 1
    )
    return ClusterResult(row_part, col_part, (t1, t2), folds)


def cluster_two_step(data, opts: PipelineOptions) -> ClusterResult:
    """One-step, then a final row pass with the column-cluster averaging
    weight; the result pairs the refined rows with the one-step columns."""
    first = cluster_one_step(data, opts)
    arr = _prepare(data, opts)
    tune_f, row_f, _ = first.folds if first.folds else (None, None, None)
    row_weight = optimal_weight(membership_matrix(first.col_partition))
    row_part, t3 = _run_step(
        arr, "rows-refined", "rows", row_weight, opts.row_stop, row_f, tune_f, opts.seed + 2
    )
    return ClusterResult(
        row_part,
        first.col_partition,
        first.trace + (t3,),
        first.folds,
    )


@dataclass(frozen=True)
class MeanLayerSpec:
    """First-layer clustering on the sample-mean matrix: complete linkage
    under the max-absolute-difference distance on rows/columns, cut at a
    threshold or a target count."""

    row_stop: StopRule
    col_stop: StopRule

    def __post_init__(self):
        for rule in (self.row_stop, self.col_stop):
            if rule.kind == "tuned":
                raise ArgumentError("mean layer supports threshold or k cuts only")


def _mean_layer_partition(mean: np.ndarray, stop: StopRule) -> Partition:
    m = mean.shape[0]
    d = np.abs(mean[:, None, :] - mean[None, :, :]).max(axis=2)
    tree = agglomerate(d)
    if stop.kind == "k":
        return tree.cut_k(int(stop.value))
    return tree.cut_threshold(float(stop.value))


@dataclass(frozen=True)
class NestedResult:
    first_rows: Partition
    first_cols: Partition
    rows: Partition  # second layer, refines first_rows
    cols: Partition  # second layer, refines first_cols
    passthrough_row_blocks: tuple[int, ...]  # first-layer blocks too small to split
    passthrough_col_blocks: tuple[int, ...]
    traces: tuple[StepTrace, ...]


def cluster_nested(data, mean_layer: MeanLayerSpec, opts: PipelineOptions) -> NestedResult:
    """Mean-layer blocks first, then two-step covariance clustering within
    each block; blocks with fewer than 3 members pass through unchanged."""
    if opts.col_stop is None:
        raise ArgumentError("nested clustering needs a column stop rule")
    arr = _prepare(data, opts)
    n, p, q = arr.shape
    mean = arr.mean(axis=0)
    first_rows = _mean_layer_partition(mean, mean_layer.row_stop)
    first_cols = _mean_layer_partition(mean.T, mean_layer.col_stop)

    traces: list[StepTrace] = []

    def refine(first: Partition, axis: str, dim: int):
        labels = np.zeros(dim, dtype=np.int64)
        offset = 0
        passthrough = []
        for block_id, members in enumerate(first.clusters()):
            if members.size < 3:
                labels[members] = offset
                offset += 1
                passthrough.append(block_id)
                continue
            sub = arr[:, members, :] if axis == "rows" else arr[:, :, members]
            res = cluster_two_step(sub, replace(opts, standardize=False))
            part = res.row_partition if axis == "rows" else res.col_partition
            traces.extend(res.trace)
            labels[members] = part.labels + offset
            offset += part.n_clusters
        return partition_from_labels(labels), tuple(passthrough)

    rows, row_pass = refine(first_rows, "rows", p)
    cols, col_pass = refine(first_cols, "columns", q)
    return NestedResult(
        first_rows, first_cols, rows, cols, row_pass, col_pass, tuple(traces)
    )
