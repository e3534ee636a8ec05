import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modeseek import ClusterSizeDist, adjusted_rand_index, cvm_distance, evaluate, many_to_one_accuracy

TRUTH = [0] * 5 + [1] * 5 + [2] * 5


def test_single_cluster_scores():
    pred = [0] * 15
    assert many_to_one_accuracy(pred, TRUTH) == pytest.approx(1 / 3)
    assert adjusted_rand_index(pred, TRUTH) == 0.0


def test_perfect_and_oversplit():
    assert many_to_one_accuracy(TRUTH, TRUTH) == 1.0
    assert adjusted_rand_index(TRUTH, TRUTH) == 1.0
    # splitting every class keeps many-to-one accuracy at 1
    split = [i for i in range(15)]
    assert many_to_one_accuracy(split, TRUTH) == 1.0


def test_accuracy_tie_goes_to_smallest_label():
    # cluster 0 is half class 3, half class 1; either mapping scores the same
    assert many_to_one_accuracy([0, 0, 0, 0], [3, 3, 1, 1]) == 0.5


def test_ari_anticorrelated():
    assert adjusted_rand_index([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(-0.5, abs=1e-15)


def test_ari_trivial_partitions():
    assert adjusted_rand_index([0, 1, 2], [5, 6, 7]) == 1.0
    assert adjusted_rand_index([0, 0], [1, 1]) == 1.0
    with pytest.raises(ValueError):
        adjusted_rand_index([0], [0])
    with pytest.raises(ValueError):
        adjusted_rand_index([0, 1], [0, 1, 1])


def _ari_pairs(pred, truth):
    """Direct pair-counting ARI."""
    n = len(pred)
    a = b = c = d = 0
    for i, j in itertools.combinations(range(n), 2):
        sp, st_ = pred[i] == pred[j], truth[i] == truth[j]
        a += sp and st_
        b += sp and not st_
        c += st_ and not sp
        d += not sp and not st_
    tot = comb(n, 2)
    exp = (a + b) * (a + c) / tot
    mx = ((a + b) + (a + c)) / 2
    return 1.0 if mx == exp else (a - exp) / (mx - exp)


def _acc_brute(pred, truth):
    """Try every mapping from clusters to classes."""
    pk, tk = sorted(set(pred)), sorted(set(truth))
    best = 0
    for m in itertools.product(tk, repeat=len(pk)):
        mp = dict(zip(pk, m))
        best = max(best, sum(mp[p] == t for p, t in zip(pred, truth)))
    return best / len(pred)


labels = st.lists(st.integers(0, 3), min_size=2, max_size=12)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_against_brute_force(data):
    pred = data.draw(labels)
    truth = data.draw(st.lists(st.integers(0, 2), min_size=len(pred), max_size=len(pred)))
    assert adjusted_rand_index(pred, truth) == pytest.approx(_ari_pairs(pred, truth), abs=1e-12)
    assert many_to_one_accuracy(pred, truth) == pytest.approx(_acc_brute(pred, truth), abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_ari_symmetric_and_relabel_invariant(data):
    pred = data.draw(labels)
    truth = data.draw(st.lists(st.integers(0, 2), min_size=len(pred), max_size=len(pred)))
    ari = adjusted_rand_index(pred, truth)
    assert ari == pytest.approx(adjusted_rand_index(truth, pred), abs=1e-12)
    assert ari <= 1 + 1e-12
    relabeled = [7 - p for p in pred]
    assert ari == pytest.approx(adjusted_rand_index(relabeled, truth), abs=1e-12)


def test_cvm_examples():
    one = ClusterSizeDist((1.0,))
    assert cvm_distance(one, ClusterSizeDist((0.5, 0.5))) == pytest.approx(0.5, abs=1e-15)
    assert cvm_distance(one, one) == 0.0
    assert cvm_distance(one, ClusterSizeDist.from_sizes([50, 50, 50])) == pytest.approx(2 / 3, abs=1e-12)


def _cvm_riemann(p, q, m=200_000):
    u = (np.arange(m) + 0.5) / m
    fp = (np.asarray(p.masses)[None, :] <= u[:, None]).mean(axis=1)
    fq = (np.asarray(q.masses)[None, :] <= u[:, None]).mean(axis=1)
    return float(np.mean((fp - fq) ** 2))


sizes = st.lists(st.integers(1, 30), min_size=1, max_size=6)


@settings(max_examples=40, deadline=None)
@given(sizes, sizes)
def test_cvm_matches_riemann_sum(a, b):
    p, q = ClusterSizeDist.from_sizes(a), ClusterSizeDist.from_sizes(b)
    d = cvm_distance(p, q)
    assert d == pytest.approx(_cvm_riemann(p, q), abs=2e-4)
    assert d == pytest.approx(cvm_distance(q, p), abs=1e-15)
    assert 0 <= d <= 1
    # order of clusters is irrelevant
    assert d == pytest.approx(cvm_distance(ClusterSizeDist.from_sizes(a[::-1]), q), abs=1e-15)


def test_size_dist_validation():
    with pytest.raises(ValueError):
        ClusterSizeDist(())
    with pytest.raises(ValueError):
        ClusterSizeDist((0.5, 0.6))
    with pytest.raises(ValueError):
        ClusterSizeDist((0.0, 1.0))
    assert ClusterSizeDist.from_labels([3, 3, 9, 9]).masses == (0.5, 0.5)


def test_evaluate_report():
    rep = evaluate([0, 0, 1, 1, 1], [1, 1, 2, 2, 1])
    d = rep.to_dict()
    assert d["accuracy"] == 0.8
    assert d["contingency"] == [[2, 0], [1, 2]]
    assert d["pred_labels"] == [0, 1] and d["truth_labels"] == [1, 2]
    assert d["cvm"] == cvm_distance(ClusterSizeDist((0.4, 0.6)), ClusterSizeDist((0.6, 0.4)))
