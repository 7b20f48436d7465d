"""Adjusted Rand index and pairwise sensitivity/specificity."""

import numpy as np
import pytest
from sklearn.metrics import adjusted_rand_score

from codcluster import (
    ArgumentError,
    adjusted_rand_index,
    ari_degenerate,
    partition_from_labels,
    sensitivity_specificity,
)


def pair_counts(truth, est):
    """TP/FN/TN/FP over all unordered index pairs."""
    t, e = truth.labels, est.labels
    m = len(t)
    tp = fn = tn = fp = 0
    for i in range(m):
        for j in range(i + 1, m):
            same_t, same_e = t[i] == t[j], e[i] == e[j]
            tp += same_t and same_e
            fn += same_t and not same_e
            tn += not same_t and not same_e
            fp += not same_t and same_e
    return tp, fn, tn, fp


def ari_from_pairs(truth, est):
    """Independent ARI formula: 2(TP*TN - FN*FP) / ((TP+FN)(FN+TN) + (TP+FP)(FP+TN))."""
    tp, fn, tn, fp = pair_counts(truth, est)
    denom = (tp + fn) * (fn + tn) + (tp + fp) * (fp + tn)
    if denom == 0:
        return None
    return 2.0 * (tp * tn - fn * fp) / denom


def test_identical_partitions_score_one():
    part = partition_from_labels([0, 0, 1, 2, 2])
    assert adjusted_rand_index(part, part) == 1.0


def test_label_permutation_is_ignored():
    a = partition_from_labels([0, 0, 1, 1])
    b = partition_from_labels([1, 1, 0, 0])
    assert adjusted_rand_index(a, b) == 1.0


def test_ari_can_be_negative():
    a = partition_from_labels([0, 0, 1, 1])
    b = partition_from_labels([0, 1, 0, 1])
    assert adjusted_rand_index(a, b) < 0.0


def test_ari_matches_pairwise_formula_on_random_partitions():
    rng = np.random.default_rng(0)
    for _ in range(200):
        m = int(rng.integers(2, 12))
        a = partition_from_labels(rng.integers(0, 4, size=m))
        b = partition_from_labels(rng.integers(0, 4, size=m))
        ref = ari_from_pairs(a, b)
        if ref is None:
            assert ari_degenerate(a, b)
            continue
        assert adjusted_rand_index(a, b) == pytest.approx(ref, abs=1e-12)


def test_ari_matches_sklearn_on_random_partitions():
    rng = np.random.default_rng(1)
    for _ in range(200):
        m = int(rng.integers(2, 15))
        la = rng.integers(0, 5, size=m)
        lb = rng.integers(0, 5, size=m)
        a, b = partition_from_labels(la), partition_from_labels(lb)
        if ari_degenerate(a, b):
            continue
        assert adjusted_rand_index(a, b) == pytest.approx(
            adjusted_rand_score(la, lb), abs=1e-10
        )


def test_degenerate_cases_use_equality_convention():
    singletons = partition_from_labels([0, 1, 2])
    one = partition_from_labels([0, 0, 0])
    assert ari_degenerate(singletons, singletons)
    assert ari_degenerate(one, one)
    assert adjusted_rand_index(singletons, singletons) == 1.0
    assert adjusted_rand_index(one, one) == 1.0
    # opposite trivial partitions have a nonzero denominator and score 0
    assert not ari_degenerate(singletons, one)
    assert adjusted_rand_index(singletons, one) == 0.0
    # only one trivial: not degenerate
    mixed = partition_from_labels([0, 0, 1])
    assert not ari_degenerate(mixed, one)


def test_length_mismatch_raises():
    a = partition_from_labels([0, 1])
    b = partition_from_labels([0, 1, 2])
    with pytest.raises(ArgumentError):
        adjusted_rand_index(a, b)
    with pytest.raises(ArgumentError):
        sensitivity_specificity(a, b)


def test_sensitivity_specificity_hand_example():
    truth = partition_from_labels([0, 0, 0, 1, 1])
    est = partition_from_labels([0, 0, 1, 1, 1])
    # pairs same in truth: (0,1),(0,2),(1,2),(3,4) -> TP for (0,1),(3,4); FN (0,2),(1,2)
    # different in truth: 6 pairs; est joins (2,3),(2,4) -> FP=2, TN=4
    rep = sensitivity_specificity(truth, est)
    assert rep.sensitivity == pytest.approx(2 / 4)
    assert rep.specificity == pytest.approx(4 / 6)
    assert rep.sensitivity_defined and rep.specificity_defined


def test_sensitivity_specificity_matches_bruteforce():
    rng = np.random.default_rng(2)
    for _ in range(100):
        m = int(rng.integers(2, 10))
        a = partition_from_labels(rng.integers(0, 3, size=m))
        b = partition_from_labels(rng.integers(0, 3, size=m))
        tp, fn, tn, fp = pair_counts(a, b)
        rep = sensitivity_specificity(a, b)
        if tp + fn:
            assert rep.sensitivity == pytest.approx(tp / (tp + fn))
        if tn + fp:
            assert rep.specificity == pytest.approx(tn / (tn + fp))


def test_undefined_ratios_flagged_and_reported_as_one():
    singletons = partition_from_labels([0, 1, 2])
    one = partition_from_labels([0, 0, 0])
    rep = sensitivity_specificity(singletons, singletons)
    assert not rep.sensitivity_defined and rep.sensitivity == 1.0
    assert rep.specificity_defined and rep.specificity == 1.0
    rep = sensitivity_specificity(one, one)
    assert rep.sensitivity_defined and rep.sensitivity == 1.0
    assert not rep.specificity_defined and rep.specificity == 1.0
    with pytest.raises(ArgumentError):
        sensitivity_specificity(partition_from_labels([0]), partition_from_labels([0]))
