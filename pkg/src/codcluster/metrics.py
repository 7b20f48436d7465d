"""Clustering accuracy metrics: adjusted Rand index and pairwise SN/SP."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import comb

from .exceptions import ArgumentError
from .partition import Partition


def _contingency(truth: Partition, est: Partition) -> np.ndarray:
    table = np.zeros((truth.n_clusters, est.n_clusters), dtype=np.int64)
    np.add.at(table, (truth.labels, est.labels), 1)
    return table


def adjusted_rand_index(truth: Partition, est: Partition) -> float:
    """Chance-corrected Rand index from the contingency table.

    When both partitions are trivial the correction term equals the raw
    index and the formula is 0/0; we return 1.0 if the partitions are equal
    and 0.0 otherwise (see ari_degenerate to detect this case).
    """
    if len(truth) != len(est):
        raise ArgumentError("partitions must have equal length")
    m = len(truth)
    table = _contingency(truth, est)
    sum_ij = comb(table, 2).sum()
    sum_a = comb(truth.sizes(), 2).sum()
    sum_b = comb(est.sizes(), 2).sum()
    total = comb(m, 2)
    expected = sum_a * sum_b / total
    denom = 0.5 * (sum_a + sum_b) - expected
    if denom == 0.0:
        return 1.0 if truth == est else 0.0
    return float((sum_ij - expected) / denom)


def ari_degenerate(truth: Partition, est: Partition) -> bool:
    """True when the ARI denominator is zero (both partitions trivial)."""
    if len(truth) != len(est):
        raise ArgumentError("partitions must have equal length")
    m = len(truth)
    sum_a = comb(truth.sizes(), 2).sum()
    sum_b = comb(est.sizes(), 2).sum()
    return 0.5 * (sum_a + sum_b) - sum_a * sum_b / comb(m, 2) == 0.0


@dataclass(frozen=True)
class PairwiseReport:
    sensitivity: float
    specificity: float
    sensitivity_defined: bool
    specificity_defined: bool


def sensitivity_specificity(truth: Partition, est: Partition) -> PairwiseReport:
    """Pairwise sensitivity TP/(TP+FN) and specificity TN/(TN+FP).

    An undefined ratio (zero denominator) is reported as 1.0 with the
    corresponding *_defined flag set to False, so batch tables stay numeric.
    """
    if len(truth) != len(est):
        raise ArgumentError("partitions must have equal length")
    m = len(truth)
    if m < 2:
        raise ArgumentError("need at least two indices to form pairs")
    same_truth = truth.labels[:, None] == truth.labels[None, :]
    same_est = est.labels[:, None] == est.labels[None, :]
    iu = np.triu_indices(m, k=1)
    st, se = same_truth[iu], same_est[iu]
    tp = int(np.sum(st & se))
    fn = int(np.sum(st & ~se))
    tn = int(np.sum(~st & ~se))
    fp = int(np.sum(~st & se))
    sn_def = tp + fn > 0
    sp_def = tn + fp > 0
    sn = tp / (tp + fn) if sn_def else 1.0
    sp = tn / (tn + fp) if sp_def else 1.0
    return PairwiseReport(sn, sp, sn_def, sp_def)
