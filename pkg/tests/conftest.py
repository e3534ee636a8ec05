import os
import sys
from pathlib import Path

import numpy as np
import pytest

from modeseek import KernelProfile

FAMILIES = {
    "gaussian": KernelProfile.gaussian(),
    "laplace": KernelProfile.laplace(1.0),
    "stretched": KernelProfile.stretched(1.0, 0.7),
    "cauchy": KernelProfile.cauchy(P=1.2),
}


@pytest.fixture(params=list(FAMILIES), ids=list(FAMILIES))
def profile(request):
    return FAMILIES[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def iris_csv(tmp_dir: Path) -> Path | None:
    """User-supplied Iris CSV (features + integer label column), else scikit-learn's copy."""
    env = os.environ.get("MODESEEK_IRIS_CSV")
    if env:
        return Path(env)
    try:
        from sklearn.datasets import load_iris
    except ImportError:
        return None
    iris = load_iris()
    path = tmp_dir / "iris.csv"
    lines = ["sepal_length,sepal_width,petal_length,petal_width,label"]
    for row, lab in zip(iris.data, iris.target):
        lines.append(",".join(repr(float(v)) for v in row) + f",{int(lab)}")
    path.write_text("\n".join(lines) + "\n")
    return path


def disk_image(size: int = 24, radius: float = 7.0, noise: float = 0.0, seed: int = 5):
    """Dark disk on a light field, optionally with Gaussian noise, plus its true mask."""
    r = np.random.default_rng(seed)
    yy, xx = np.indices((size, size))
    c = (size - 1) / 2
    mask = (yy - c) ** 2 + (xx - c) ** 2 <= radius**2
    img = np.where(mask, 50.0, 200.0) + r.normal(0, noise, (size, size))
    return np.clip(np.round(img), 0, 255).astype(np.uint8), mask


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.format_line(num, *mod.RESULTS[num]))
