"""Bandwidth threshold for guaranteed mean-shift convergence.

With q = 4 ||x_max||^2 / h^2, the Hessian of the KDE is nonsingular at every
stationary point whenever phi(q) = -2 q k''(q) / k'(q) < 1. ``solve_h0``
locates the crossing phi(q0) = 1 and turns it into h0 = 2 ||x_max|| / sqrt(q0).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .profiles import DomainError, KernelProfile

GRID_LO, GRID_HI, GRID_N = 1e-9, 1e9, 181
NEAR_ONE = 1e-12
ROOT_TOL = 1e-10


class Classification(str, enum.Enum):
    FINITE_ROOT = "FiniteRoot"
    ALWAYS_HOLDS = "ConditionAlwaysHolds"
    NEVER_HOLDS = "ConditionNeverHolds"
    INDETERMINATE = "Indeterminate"


@dataclass
class BandwidthReport:
    classification: Classification
    xmax_norm: float
    q0: float | None = None
    h0: float | None = None
    phi_samples: list[tuple[float, float]] = field(default_factory=list)

    def certifies(self, h: float) -> bool:
        """Whether bandwidth ``h`` satisfies the sufficient condition."""
        if self.classification is Classification.ALWAYS_HOLDS:
            return h > 0
        if self.classification is Classification.FINITE_ROOT:
            return h > self.h0
        return False

    def to_dict(self) -> dict:
        return {
            "classification": self.classification.value,
            "q0": self.q0,
            "h0": self.h0,
            "xmax_norm": self.xmax_norm,
            "phi_samples": [[q, p] for q, p in self.phi_samples],
        }


def phi(profile: KernelProfile, q):
    """-2 q k''(q) / k'(q) for q > 0."""
    scalar = np.ndim(q) == 0
    arr = np.asarray(q, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("phi requires q > 0")
    out = 2.0 * arr * profile.k2_over_g(arr)
    return float(out) if scalar else out


def _brackets(s: np.ndarray) -> tuple[list[tuple[int, int]], bool]:
    """Index pairs whose phi - 1 values strictly change sign, plus a tangency flag."""
    near = np.abs(s) <= NEAR_ONE
    pairs = set()
    tangent = False
    for i in range(len(s) - 1):
        if not (near[i] or near[i + 1]) and s[i] * s[i + 1] < 0:
            pairs.add((i, i + 1))
    for i in np.flatnonzero(near):
        lo, hi = i, i
        while lo > 0 and near[lo]:
            lo -= 1
        while hi < len(s) - 1 and near[hi]:
            hi += 1
        if near[lo] or near[hi] or s[lo] * s[hi] > 0:
            tangent = True
        else:
            pairs.add((lo, hi))
    return sorted(pairs), tangent


def solve_h0(profile: KernelProfile, xmax_norm: float) -> BandwidthReport:
    """Classify phi(q) = 1 over a log grid and refine a bracketed root."""
    if xmax_norm < 0:
        raise ValueError("xmax_norm must be nonnegative")
    grid = np.logspace(math.log10(GRID_LO), math.log10(GRID_HI), GRID_N)
    vals = phi(profile, grid)
    samples = [(float(q), float(p)) for q, p in zip(grid, vals)]
    report = BandwidthReport(Classification.INDETERMINATE, float(xmax_norm), phi_samples=samples)

    s = vals - 1.0
    pairs, tangent = _brackets(s)
    if pairs:
        lo, hi = pairs[0]
        # the certified region q < q0 needs phi < 1 below the crossing
        if s[lo] > 0:
            return report
        q0 = _refine(profile, grid[lo], grid[hi])
        if not (phi(profile, q0 / 2) < 1 < phi(profile, 2 * q0)):
            return report
        report.classification = Classification.FINITE_ROOT
        report.q0 = q0
        report.h0 = 2.0 * xmax_norm / math.sqrt(q0)
        return report
    if tangent:
        return report
    if np.all(s < 0):
        report.classification = Classification.ALWAYS_HOLDS
    elif np.all(s > 0):
        report.classification = Classification.NEVER_HOLDS
    return report


def _refine(profile: KernelProfile, qa: float, qb: float) -> float:
    f = lambda t: phi(profile, math.exp(t)) - 1.0
    t = brentq(f, math.log(qa), math.log(qb), xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    q0 = math.exp(t)
    resid = abs(phi(profile, q0) - 1.0)
    if resid > ROOT_TOL:
        # log-space tolerance was too coarse for a steep phi; polish in q directly
        q0 = brentq(lambda q: phi(profile, q) - 1.0, qa, qb, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=1000)
    return q0


def q_of_h(xmax_norm: float, h: float) -> float:
    return 4.0 * xmax_norm**2 / h**2
