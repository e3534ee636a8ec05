import math

import numpy as np
import pytest
from scipy.optimize import brentq

from modeseek import KernelProfile, hessian_rank_diagnostic, kde, kde_gradient, kde_hessian

GAUSS = KernelProfile.gaussian()


def naive_kde(points, profile, h, x):
    total = 0.0
    for p in points:
        total += profile.k(float(np.sum((x - p) ** 2)) / h**2)
    return total


def fd_gradient(f, x, step):
    out = np.empty_like(x)
    for j in range(len(x)):
        e = np.zeros_like(x)
        e[j] = step
        out[j] = (f(x + e) - f(x - e)) / (2 * step)
    return out


def random_instance(rng, n=6, d=3):
    pts = rng.normal(size=(n, d))
    x = rng.normal(size=d) * 1.5
    h = rng.uniform(0.8, 3.0)
    return pts, x, h


def test_kde_single_point():
    assert kde([[0.3, -1.0]], GAUSS, 0.7, [0.3, -1.0]) == 1.0


def test_kde_pair():
    d, h = 1.7, 0.9
    pts = [[0.0, 0.0], [d, 0.0]]
    assert kde(pts, GAUSS, h, pts[1]) == pytest.approx(1 + math.exp(-(d**2) / (2 * h**2)), rel=1e-15)


def test_kde_matches_naive_sum(profile, rng):
    for _ in range(10):
        pts, x, h = random_instance(rng, n=5)
        assert kde(pts, profile, h, x) == pytest.approx(naive_kde(pts, profile, h, x), rel=1e-13)


def test_kde_empty():
    with pytest.raises(ValueError):
        kde(np.empty((0, 2)), GAUSS, 1.0, [0.0, 0.0])


def test_gradient_symmetric_pair_vanishes(profile):
    assert np.allclose(kde_gradient([[-1.3], [1.3]], profile, 0.8, [0.0]), 0.0, atol=1e-15)


def test_gradient_single_point_closed_form():
    h = 1.4
    x1 = np.array([0.5, -0.2])
    delta = np.array([0.3, 0.4])
    grad = kde_gradient([x1], GAUSS, h, x1 + delta)
    expected = -(delta / h**2) * math.exp(-(delta @ delta) / (2 * h**2))
    assert np.allclose(grad, expected, rtol=1e-14)
    assert grad @ delta < 0


def test_gradient_matches_finite_difference(profile, rng):
    for _ in range(10):
        pts, x, h = random_instance(rng)
        grad = kde_gradient(pts, profile, h, x)
        step = 1e-6 * (1 + np.linalg.norm(x))
        fd = fd_gradient(lambda y: kde(pts, profile, h, y), x, step)
        assert np.linalg.norm(fd - grad) <= 1e-5 * np.linalg.norm(grad)


def test_hessian_single_point_gaussian():
    h = 0.6
    ev = kde_hessian([[1.0, 2.0, 3.0]], GAUSS, h, [1.0, 2.0, 3.0])
    assert ev.C == pytest.approx(1.0, rel=1e-11)
    assert np.allclose(ev.A, 0.0)
    assert np.allclose(ev.hessian, -np.eye(3) / h**2, rtol=1e-11)


def test_hessian_symmetric_pair_axis_is_eigenvector(profile):
    axis = np.array([3.0, 4.0]) / 5.0
    pts = np.array([axis, -axis]) * 0.9
    ev = kde_hessian(pts, profile, 1.1, [0.0, 0.0])
    hv = ev.hessian @ axis
    assert np.allclose(hv, (axis @ hv) * axis, atol=1e-13)


def test_hessian_matches_finite_difference(profile, rng):
    for _ in range(10):
        pts, x, h = random_instance(rng)
        ev = kde_hessian(pts, profile, h, x)
        step = 1e-6 * (1 + np.linalg.norm(x))
        cols = [
            (kde_gradient(pts, profile, h, x + step * e) - kde_gradient(pts, profile, h, x - step * e)) / (2 * step)
            for e in np.eye(len(x))
        ]
        fd = np.column_stack(cols)
        assert np.linalg.norm(fd - ev.hessian) <= 1e-4 * np.linalg.norm(ev.hessian)


def test_hessian_decomposition_identity(profile, rng):
    for _ in range(100):
        n, d = rng.integers(1, 12), rng.integers(1, 5)
        pts = rng.normal(size=(n, d)) * rng.uniform(0.1, 5)
        x = rng.normal(size=d)
        h = rng.uniform(0.1, 10)
        ev = kde_hessian(pts, profile, h, x)
        split = -(ev.C / h**2) * np.eye(d) + ev.A / h**4
        assert np.allclose(ev.hessian, split, rtol=1e-12, atol=1e-12 * np.abs(split).max())
        assert ev.C > 0
        assert np.allclose(ev.A, ev.A.T)
        assert np.linalg.eigvalsh(ev.A).min() >= -1e-12 * max(1.0, np.abs(ev.A).max())


def test_singular_profile_skips_coincident_term():
    lap = KernelProfile.laplace(1.0)
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    ev = kde_hessian(pts, lap, 2.0, pts[0])
    only_other = kde_hessian(pts[1:], lap, 2.0, pts[0])
    assert np.allclose(ev.hessian, only_other.hessian)
    assert np.all(np.isfinite(ev.hessian))


def test_diagnostic_single_point():
    h = 0.8
    diag = hessian_rank_diagnostic([[0.2, 0.1]], GAUSS, h, [0.2, 0.1])
    assert diag.min_abs_eigenvalue == pytest.approx(1 / h**2, rel=1e-11)
    assert diag.certificate
    assert diag.in_hull and diag.within_xmax


def test_diagnostic_saddle_fails_certificate_but_nonsingular():
    # equilateral triangle on the unit circle, narrow bandwidth: three separate bumps
    ang = np.array([90.0, 210.0, 330.0]) * math.pi / 180
    pts = np.column_stack([np.cos(ang), np.sin(ang)])
    h = 0.5
    # by mirror symmetry the saddle between vertices 1 and 2 lies on the negative y-axis
    dy = lambda t: kde_gradient(pts, GAUSS, h, [0.0, -t])[1]
    t_star = brentq(dy, 0.3, 0.7, xtol=1e-15)
    xstar = np.array([0.0, -t_star])
    diag = hessian_rank_diagnostic(pts, GAUSS, h, xstar)
    assert diag.grad_norm < 1e-10
    assert not diag.certificate
    assert diag.eigenvalues[0] < 0 < diag.eigenvalues[1]
    assert diag.min_abs_eigenvalue > 1e-3


def test_diagnostic_flags_out_of_hull():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    diag = hessian_rank_diagnostic(pts, GAUSS, 3.0, [0.6, 0.6])
    assert not diag.in_hull
    assert diag.within_xmax
    diag = hessian_rank_diagnostic(pts, GAUSS, 3.0, [5.0, 5.0])
    assert not diag.within_xmax
