"""Closed-form limits of the first mean-shift iterate as h -> infinity.

Finite g(0) flattens all weights, so the first iterate tends to the global
sample mean. A power-law singularity g(r) ~ C r**-beta keeps the weights
uneven: the limit is the mean over j != i weighted by ||x_i - x_j||**-p with
p = 2 beta. Completely monotone profiles satisfy r g(r) <= k(0)/e, which caps
beta at 1 and p at 2.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .density import as_points
from .profiles import KernelProfile


class HypothesisViolation(ValueError):
    pass


class LimitKind(str, enum.Enum):
    GLOBAL_MEAN = "GlobalMean"
    POWER_LAW_LOCAL_MEAN = "PowerLawLocalMean"


@dataclass
class LimitPrediction:
    kind: LimitKind
    point: np.ndarray
    p: float | None = None

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "p": self.p, "point": self.point.tolist()}


def predict_first_iterate_limit(points, profile: KernelProfile, seed_index: int) -> LimitPrediction:
    pts = as_points(points)
    beta = profile.powerlaw_exponent()
    if beta is None:
        return LimitPrediction(LimitKind.GLOBAL_MEAN, pts.mean(axis=0))

    p = 2.0 * beta
    if not 0 < p <= 2:
        raise HypothesisViolation(f"distance exponent p={p} outside (0, 2]")
    others = np.delete(pts, seed_index, axis=0)
    if len(others) == 0:
        raise HypothesisViolation("need at least one point besides the seed")
    dist = np.linalg.norm(others - pts[seed_index], axis=1)
    if np.any(dist == 0):
        raise HypothesisViolation(f"seed {seed_index} is duplicated in the data")
    w = dist**-p
    return LimitPrediction(LimitKind.POWER_LAW_LOCAL_MEAN, w @ others / w.sum(), p)


def cm_exponent_bound_check(profile: KernelProfile, grid) -> tuple[bool, float]:
    """Check r g(r) <= k(0)/e on ``grid``; returns (ok, max of r g(r) e / k(0))."""
    r = np.asarray(grid, dtype=float)
    if np.any(r <= 0):
        raise ValueError("grid values must be positive")
    rg = r * profile.g(r)
    ok = bool(np.all(rg <= profile.k0 / math.e + 1e-12))
    return ok, float(np.max(rg * math.e / profile.k0))


def standard_grid() -> np.ndarray:
    """60 log-spaced points on [1e-6, 1e3]."""
    return np.logspace(-6, 3, 60)
