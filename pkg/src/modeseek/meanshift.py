"""Mean-shift fixed-point iteration, seeded at every data point, and mode merging."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .density import EPS_Q, as_points
from .profiles import KernelProfile


class DegenerateStepError(RuntimeError):
    """No data point carries positive weight for the current iterate."""


@dataclass(frozen=True)
class MeanShiftConfig:
    """Iteration settings.

    ``exclude_self=None`` picks the profile's natural convention: the seed's
    own point is dropped from every sum when g is singular at 0 and kept
    otherwise. ``knn`` restricts each step to the k nearest points of the
    current iterate, recomputed every step.
    """

    h: float
    conv_tol: float = 1e-8
    max_iter: int = 10000
    exclude_self: bool | None = None
    eps_q: float = EPS_Q
    merge_tol: float = 0.05
    knn: int | None = None

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("h must be positive")
        if not self.conv_tol > 0:
            raise ValueError("conv_tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if not self.eps_q > 0:
            raise ValueError("eps_q must be positive")
        if self.merge_tol < 0:
            raise ValueError("merge_tol must be nonnegative")
        if self.knn is not None and self.knn < 1:
            raise ValueError("knn must be positive")

    def excludes_self(self, profile: KernelProfile) -> bool:
        return profile.singular if self.exclude_self is None else self.exclude_self

    def to_dict(self, profile: KernelProfile | None = None) -> dict:
        out = {
            "h": self.h,
            "conv_tol": self.conv_tol,
            "max_iter": self.max_iter,
            "exclude_self": self.exclude_self if profile is None else self.excludes_self(profile),
            "eps_q": self.eps_q,
            "merge_tol": self.merge_tol,
            "knn": self.knn,
        }
        return out


@dataclass
class RunResult:
    endpoints: np.ndarray
    iterations: np.ndarray
    converged: np.ndarray
    merged_modes: np.ndarray
    assignment: np.ndarray
    cluster_sizes: list[int]
    trajectories: list[np.ndarray] | None = field(default=None, repr=False)

    @property
    def K(self) -> int:
        return len(self.cluster_sizes)

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "sizes": [int(s) for s in self.cluster_sizes],
            "assignment": [int(a) for a in self.assignment],
            "iterations": [int(i) for i in self.iterations],
            "converged": [bool(c) for c in self.converged],
            "merged_modes": self.merged_modes.tolist(),
        }


def xmax_norm(points) -> float:
    return float(np.max(np.linalg.norm(as_points(points), axis=1)))


def ms_step(points, profile: KernelProfile, config: MeanShiftConfig, y, seed_index: int | None = None) -> np.ndarray:
    """One update y -> sum_i x_i g(q_i) / sum_i g(q_i)."""
    pts = as_points(points)
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if seed_index is not None and config.excludes_self(profile):
        pts = np.delete(pts, seed_index, axis=0)
    if pts.shape[0] == 0:
        raise DegenerateStepError("every point was excluded")
    diff = pts - y
    q = np.einsum("ij,ij->i", diff, diff) / config.h**2
    if config.knn is not None and config.knn < len(q):
        near = np.argpartition(q, config.knn - 1)[: config.knn]
        pts, q = pts[near], q[near]
    w = profile.g(np.maximum(q, config.eps_q))
    total = w.sum()
    if not (total > 0 and np.isfinite(total)):
        raise DegenerateStepError("weights vanish or overflow at the current iterate")
    return w @ pts / total


def _iterate(pts, profile, config, seed_index, record):
    y = pts[seed_index].copy()
    traj = [y.copy()] if record else None
    for it in range(1, config.max_iter + 1):
        try:
            y_new = ms_step(pts, profile, config, y, seed_index)
        except DegenerateStepError:
            return y, it - 1, False, traj, True
        step = np.linalg.norm(y_new - y)
        y = y_new
        if record:
            traj.append(y.copy())
        if step <= config.conv_tol:
            return y, it, True, traj, False
    return y, config.max_iter, False, traj, False


def run_from_seed(points, profile: KernelProfile, config: MeanShiftConfig, seed_index: int):
    """Iterate from ``points[seed_index]``; returns (endpoint, iterations, converged)."""
    pts = as_points(points)
    y, it, ok, _, degenerate = _iterate(pts, profile, config, seed_index, False)
    if degenerate:
        raise DegenerateStepError(f"seed {seed_index}: degenerate step after {it} iterations")
    return y, it, ok


def merge_modes(endpoints, merge_tol: float):
    """Greedy first-fit merge in seed order.

    Each endpoint joins the first existing mode within ``merge_tol`` of its
    current representative (the running mean of its members) or opens a new
    mode. Returns (modes, assignment, sizes).
    """
    endpoints = np.asarray(endpoints, dtype=float)
    modes: list[np.ndarray] = []
    sizes: list[int] = []
    assignment = np.empty(len(endpoints), dtype=int)
    for i, e in enumerate(endpoints):
        for j, m in enumerate(modes):
            if np.linalg.norm(e - m) <= merge_tol:
                sizes[j] += 1
                modes[j] = m + (e - m) / sizes[j]
                assignment[i] = j
                break
        else:
            modes.append(e.copy())
            sizes.append(1)
            assignment[i] = len(modes) - 1
    return np.array(modes).reshape(len(modes), endpoints.shape[1]), assignment, sizes


def default_threads() -> int:
    env = os.environ.get("MODESEEK_THREADS")
    return max(1, int(env)) if env else 1


def run_all(
    points,
    profile: KernelProfile,
    config: MeanShiftConfig,
    trajectories: bool = False,
    threads: int | None = None,
) -> RunResult:
    """Run the iteration from every data point, then merge endpoints.

    Seeds may run on several threads; results are gathered in seed order so
    the merge, and therefore the output, does not depend on scheduling.
    """
    pts = as_points(points)
    n = pts.shape[0]
    if config.knn is not None and config.knn > n:
        raise ValueError(f"knn={config.knn} exceeds n={n}")
    threads = default_threads() if threads is None else max(1, threads)

    job = lambda i: _iterate(pts, profile, config, i, trajectories)
    if threads == 1:
        out = [job(i) for i in range(n)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            out = list(pool.map(job, range(n)))

    endpoints = np.array([o[0] for o in out])
    modes, assignment, sizes = merge_modes(endpoints, config.merge_tol)
    return RunResult(
        endpoints=endpoints,
        iterations=np.array([o[1] for o in out]),
        converged=np.array([o[2] for o in out]),
        merged_modes=modes,
        assignment=assignment,
        cluster_sizes=sizes,
        trajectories=[o[3] for o in out] if trajectories else None,
    )
