from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .data import GrayImage, image_features
from .meanshift import MeanShiftConfig, RunResult, run_all, xmax_norm
from .profiles import KernelProfile


@dataclass
class Segmentation:
    mask: np.ndarray
    result: RunResult
    config: MeanShiftConfig
    median_nn: float
    mode_intensity: np.ndarray
    threshold: float


def median_nn_distance(points) -> float:
    tree = cKDTree(points)
    dist, _ = tree.query(points, k=2)
    return float(np.median(dist[:, 1]))


def segment(
    img: GrayImage,
    profile: KernelProfile,
    h_mult: float = 10.0,
    knn: int = 300,
    dark_quantile: float = 0.35,
    merge_nn_mult: float = 4.0,
    conv_tol: float = 1e-8,
    max_iter: int = 10000,
    threads: int | None = None,
) -> Segmentation:
    """Mean-shift segmentation of a grayscale image into a dark-foreground mask.

    Pixels become (row, col, intensity) feature points. Bandwidth is
    ``h_mult * max ||x_i||`` and endpoints merge within ``merge_nn_mult`` times
    the median nearest-neighbour distance. Each merged mode gets the mean raw
    intensity of its pixels; modes darker than the ``dark_quantile`` quantile
    of those means form the mask (quantile 1 selects every mode).
    """
    if not 0 <= dark_quantile <= 1:
        raise ValueError("dark_quantile must lie in [0, 1]")
    feats = image_features(img)
    pts = feats.points
    n = pts.shape[0]
    med = median_nn_distance(pts) if n > 1 else 0.0
    h = h_mult * xmax_norm(pts)
    if not h > 0:
        raise ValueError("degenerate image: all feature points at the origin")
    config = MeanShiftConfig(
        h=h,
        conv_tol=conv_tol,
        max_iter=max_iter,
        exclude_self=True,
        merge_tol=merge_nn_mult * med,
        knn=min(knn, n),
    )
    res = run_all(pts, profile, config, threads=threads)

    intensity = img.pixels.ravel().astype(float)
    sums = np.bincount(res.assignment, weights=intensity, minlength=res.K)
    mode_int = sums / np.asarray(res.cluster_sizes)
    thr = float(np.quantile(mode_int, dark_quantile))
    dark_modes = mode_int < thr if dark_quantile < 1 else np.ones(res.K, dtype=bool)
    mask = dark_modes[res.assignment].reshape(img.height, img.width)
    return Segmentation(mask, res, config, med, mode_int, thr)
