"""Clustering scores: many-to-one accuracy, ARI and a CvM distance on cluster sizes.

The CvM distance compares step CDFs built on normalized cluster sizes. Each
cluster is one atom of weight 1/K regardless of its size, and the integral
over [0, 1] is computed exactly at the breakpoints.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np


@dataclass(frozen=True)
class ClusterSizeDist:
    masses: tuple[float, ...]

    def __post_init__(self):
        m = tuple(float(v) for v in self.masses)
        if not m:
            raise ValueError("empty distribution")
        if any(not 0 < v <= 1 for v in m):
            raise ValueError("masses must lie in (0, 1]")
        if abs(sum(m) - 1.0) > 1e-12:
            raise ValueError(f"masses sum to {sum(m)}, not 1")
        object.__setattr__(self, "masses", m)

    @classmethod
    def from_labels(cls, labels) -> "ClusterSizeDist":
        _, counts = np.unique(np.asarray(labels), return_counts=True)
        return cls.from_sizes(counts)

    @classmethod
    def from_sizes(cls, sizes) -> "ClusterSizeDist":
        sizes = [int(s) for s in sizes]
        n = sum(sizes)
        masses = [s / n for s in sizes]
        # absorb rounding so the sum is exactly representable as 1
        masses[-1] = 1.0 - sum(masses[:-1])
        return cls(tuple(masses))


@dataclass
class EvalReport:
    ari: float
    accuracy: float
    cvm: float
    contingency: np.ndarray
    pred_labels: list
    truth_labels: list

    def to_dict(self) -> dict:
        return {
            "ari": self.ari,
            "accuracy": self.accuracy,
            "cvm": self.cvm,
            "pred_labels": [_jsonable(v) for v in self.pred_labels],
            "truth_labels": [_jsonable(v) for v in self.truth_labels],
            "contingency": self.contingency.tolist(),
        }


def _jsonable(v):
    return v.item() if hasattr(v, "item") else v


def contingency_table(pred, truth):
    pred, truth = np.asarray(pred), np.asarray(truth)
    if pred.shape != truth.shape:
        raise ValueError(f"length mismatch: {pred.size} predicted vs {truth.size} true labels")
    p_lab, p_idx = np.unique(pred, return_inverse=True)
    t_lab, t_idx = np.unique(truth, return_inverse=True)
    table = np.zeros((len(p_lab), len(t_lab)), dtype=np.int64)
    np.add.at(table, (p_idx, t_idx), 1)
    return table, list(p_lab), list(t_lab)


def many_to_one_accuracy(pred, truth) -> float:
    """Map each predicted cluster to its majority true class and score the result.

    Ties go to the smallest true class label.
    """
    table, _, _ = contingency_table(pred, truth)
    n = table.sum()
    if n == 0:
        raise ValueError("need at least one label")
    # argmax returns the first maximum, i.e. the smallest class label
    hits = table[np.arange(len(table)), table.argmax(axis=1)]
    return float(hits.sum() / n)


def adjusted_rand_index(pred, truth) -> float:
    table, _, _ = contingency_table(pred, truth)
    n = int(table.sum())
    if n < 2:
        raise ValueError("ARI needs at least two points")
    sum_ij = sum(comb(int(v), 2) for v in table.ravel())
    sum_a = sum(comb(int(v), 2) for v in table.sum(axis=1))
    sum_b = sum(comb(int(v), 2) for v in table.sum(axis=0))
    expected = sum_a * sum_b / comb(n, 2)
    max_index = (sum_a + sum_b) / 2
    if max_index == expected:
        # both partitions trivial (all singletons or one block) and identical in kind
        return 1.0
    return float((sum_ij - expected) / (max_index - expected))


def cvm_distance(p: ClusterSizeDist, q: ClusterSizeDist) -> float:
    """Exact integral over [0, 1] of (F_p(u) - F_q(u))**2 for the atom step CDFs."""
    a = np.sort(np.asarray(p.masses))
    b = np.sort(np.asarray(q.masses))
    cuts = np.unique(np.concatenate([[0.0, 1.0], a, b]))
    left = cuts[:-1]
    # right-continuous: F(u) counts atoms <= u, constant on [left, next cut)
    fa = np.searchsorted(a, left, side="right") / len(a)
    fb = np.searchsorted(b, left, side="right") / len(b)
    return float(np.sum((fa - fb) ** 2 * np.diff(cuts)))


def evaluate(pred, truth) -> EvalReport:
    table, p_lab, t_lab = contingency_table(pred, truth)
    cvm = cvm_distance(ClusterSizeDist.from_labels(pred), ClusterSizeDist.from_labels(truth))
    return EvalReport(
        ari=adjusted_rand_index(pred, truth),
        accuracy=many_to_one_accuracy(pred, truth),
        cvm=cvm,
        contingency=table,
        pred_labels=p_lab,
        truth_labels=t_lab,
    )
