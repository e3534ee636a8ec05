"""Datasets: synthetic generator, CSV and PGM I/O, z-scoring, PCA(2), image features."""
from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .linalg import jacobi_eigh
from .rng import SplitMix64


@dataclass(frozen=True)
class Dataset:
    points: np.ndarray
    labels: np.ndarray | None = None
    names: tuple[str, ...] | None = None
    provenance: str = ""

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("a dataset needs at least one point")
        if not np.all(np.isfinite(pts)):
            raise ValueError("coordinates must be finite")
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=int)
            if labels.shape != (pts.shape[0],):
                raise ValueError("labels must have one entry per point")
            object.__setattr__(self, "labels", labels)
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != pts.shape[1]:
                raise ValueError("names must have one entry per column")
            object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


def gen_two_gaussians(n: int = 300, separation: float = 5.0, sigma: float = 0.35, rng_seed: int = 0) -> Dataset:
    """Two isotropic Gaussian blobs centred at (-separation/2, 0) and (+separation/2, 0).

    The first n/2 points (label 0) come from the left blob, the rest (label 1)
    from the right one. Each point consumes one Box-Muller pair from a
    SplitMix64 stream seeded with ``rng_seed``.
    """
    if n < 2 or n % 2:
        raise ValueError(f"n must be a positive even integer, got {n}")
    rng = SplitMix64(rng_seed)
    half = n // 2
    pts = np.empty((n, 2))
    for i in range(n):
        cx = -separation / 2 if i < half else separation / 2
        z0, z1 = rng.normal_pair()
        pts[i] = (cx + sigma * z0, sigma * z1)
    labels = np.repeat([0, 1], half)
    prov = f"two_gaussians n={n} separation={separation} sigma={sigma} seed={rng_seed} rng=splitmix64+box-muller"
    return Dataset(pts, labels, ("x", "y"), prov)


def zscore(dataset: Dataset) -> Dataset:
    """Column-wise standardisation with the population standard deviation."""
    x = dataset.points
    mean = x.mean(axis=0)
    sd = x.std(axis=0)
    for j, s in enumerate(sd):
        if not s > 0 or np.ptp(x[:, j]) == 0:
            name = dataset.names[j] if dataset.names else str(j)
            raise ValueError(f"column {name!r} is constant; cannot z-score")
    prov = (dataset.provenance + "; " if dataset.provenance else "") + "zscore"
    return replace(dataset, points=(x - mean) / sd, provenance=prov)


def pca_components(points, n_components: int = 2):
    """Top principal axes via Jacobi; returns (components, variances, mean).

    Rows of ``components`` are unit axes, each flipped so that its largest
    magnitude loading is positive.
    """
    x = np.asarray(points, dtype=float)
    n, d = x.shape
    if d < n_components or n < 3:
        raise ValueError("PCA needs d >= 2 columns and n >= 3 rows")
    mean = x.mean(axis=0)
    xc = x - mean
    cov = xc.T @ xc / (n - 1)
    w, v = jacobi_eigh(cov)
    order = np.argsort(w, kind="stable")[::-1][:n_components]
    w, v = w[order], v[:, order].T
    if w[-1] <= 1e-12 * max(w[0], 1e-300):
        raise ValueError("covariance has rank < 2")
    for row in v:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1
    return v, w, mean


def pca2(dataset: Dataset) -> Dataset:
    comps, _, mean = pca_components(dataset.points, 2)
    proj = (dataset.points - mean) @ comps.T
    prov = (dataset.provenance + "; " if dataset.provenance else "") + "pca2"
    return Dataset(proj, dataset.labels, ("PC1", "PC2"), prov)


# -- CSV -----------------------------------------------------------------------

def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def load_csv(path, label_column: bool = False) -> Dataset:
    """Read a comma-separated numeric table.

    A first row that is not fully numeric is taken as a header. With
    ``label_column`` the last column holds integer class labels.
    """
    text = Path(path).read_text() if str(path) != "-" else None
    if text is None:
        raise ValueError("reading from stdin is not supported")
    rows = []
    names = None
    width = None
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        cells = [c.strip() for c in row]
        if names is None and not rows and not all(_is_number(c) for c in cells):
            names = cells
            width = len(cells)
            continue
        if width is None:
            width = len(cells)
        if len(cells) != width:
            raise ValueError(f"{path}:{lineno}: expected {width} fields, found {len(cells)}")
        try:
            rows.append([float(c) for c in cells])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: non-numeric field in {cells!r}") from None
    if not rows:
        raise ValueError(f"{path}: no data rows")
    arr = np.array(rows)
    labels = None
    if label_column:
        raw = arr[:, -1]
        if np.any(raw != np.round(raw)):
            raise ValueError(f"{path}: label column holds non-integer values")
        labels = raw.astype(int)
        arr = arr[:, :-1]
        names = names[:-1] if names else None
    return Dataset(arr, labels, tuple(names) if names else None, f"csv {path}")


def dump_csv(dataset: Dataset) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    names = list(dataset.names) if dataset.names else [f"x{j}" for j in range(dataset.d)]
    if dataset.labels is not None:
        names.append("label")
    w.writerow(names)
    for i, row in enumerate(dataset.points):
        # + 0.0 turns -0.0 into 0.0
        cells = [format(float(v) + 0.0, ".17g") for v in row]
        if dataset.labels is not None:
            cells.append(str(int(dataset.labels[i])))
        w.writerow(cells)
    return buf.getvalue()


def write_csv(dataset: Dataset, path) -> None:
    Path(path).write_text(dump_csv(dataset))


# -- PGM images -----------------------------------------------------------------

@dataclass(frozen=True)
class GrayImage:
    width: int
    height: int
    pixels: np.ndarray = field(repr=False)

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.size != self.width * self.height:
            raise ValueError("pixel count does not match width * height")
        if px.size and (px.min() < 0 or px.max() > 255):
            raise ValueError("intensities must lie in [0, 255]")
        object.__setattr__(self, "pixels", px.reshape(self.height, self.width).astype(np.uint8))

    @classmethod
    def from_array(cls, arr) -> "GrayImage":
        arr = np.asarray(arr)
        return cls(arr.shape[1], arr.shape[0], arr)


def _pgm_tokens(data: bytes, count: int):
    """Yield ``count`` header tokens and the offset just past the last one."""
    tokens, pos = [], 0
    while len(tokens) < count:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise ValueError("truncated PGM header")
        tokens.append(data[start:pos].decode("ascii"))
    return tokens, pos


def load_pgm(path) -> GrayImage:
    data = Path(path).read_bytes()
    (magic, w, h, maxval), pos = _pgm_tokens(data, 4)
    if magic not in ("P2", "P5"):
        raise ValueError(f"{path}: not a P2/P5 PGM (magic {magic!r})")
    w, h, maxval = int(w), int(h), int(maxval)
    if not 0 < maxval <= 255:
        raise ValueError(f"{path}: maxval {maxval} unsupported (must be <= 255)")
    if magic == "P5":
        raster = data[pos + 1 : pos + 1 + w * h]
        if len(raster) != w * h:
            raise ValueError(f"{path}: expected {w * h} bytes of raster, found {len(raster)}")
        px = np.frombuffer(raster, dtype=np.uint8)
    else:
        vals, _ = _pgm_tokens(data[pos:], w * h)
        px = np.array([int(v) for v in vals])
    if px.size and px.max() > maxval:
        raise ValueError(f"{path}: pixel value exceeds maxval {maxval}")
    return GrayImage(w, h, px)


def write_pgm(image, path) -> None:
    """Write a P5 PGM. Boolean masks become {0, 255}."""
    arr = image.pixels if isinstance(image, GrayImage) else np.asarray(image)
    if arr.dtype == bool:
        arr = np.where(arr, 255, 0)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d array")
    arr = arr.astype(np.uint8)
    h, w = arr.shape
    Path(path).write_bytes(f"P5\n{w} {h}\n255\n".encode("ascii") + arr.tobytes())


def image_features(img: GrayImage) -> Dataset:
    """One point per pixel: (row/height, col/width, intensity/255), z-scored.

    A constant intensity column is dropped with a warning. A constant spatial
    column (single-row or single-column image) is centred but left unscaled.
    """
    rows, cols = np.indices((img.height, img.width))
    feats = np.column_stack(
        [rows.ravel() / img.height, cols.ravel() / img.width, img.pixels.ravel() / 255.0]
    )
    names = ["row", "col", "intensity"]
    mean = feats.mean(axis=0)
    sd = feats.std(axis=0)
    const = np.ptp(feats, axis=0) == 0
    sd[const] = 0.0
    if const[2]:
        warnings.warn("uniform image: intensity column is constant and was dropped", stacklevel=2)
        feats, mean, sd, names = feats[:, :2], mean[:2], sd[:2], names[:2]
    sd = np.where(sd > 0, sd, 1.0)
    prov = f"image_features {img.width}x{img.height}: (row/h, col/w, I/255) z-scored"
    return Dataset((feats - mean) / sd, None, tuple(names), prov)
