"""Kernel density estimate, gradient and Hessian (normalising constant taken as 1).

The Hessian is assembled through the split

    H(x) = -(C(x) / h^2) I + A(x) / h^4,
    C(x) = -2 sum_i k'(q_i),   A(x) = 4 sum_i (x - x_i)(x - x_i)^T k''(q_i),

with q_i = ||x - x_i||^2 / h^2. At a stationary point H is nonsingular as
soon as lambda_max(A / h^2) < C.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .linalg import jacobi_eigh
from .profiles import KernelProfile

EPS_Q = 1e-12


def as_points(points) -> np.ndarray:
    pts = getattr(points, "points", points)
    pts = np.asarray(pts, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[0] == 0:
        raise ValueError("empty dataset")
    return pts


def _terms(points, profile: KernelProfile, h: float, x, eps_q: float):
    pts = as_points(points)
    if not h > 0:
        raise ValueError("bandwidth must be positive")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    diff = x - pts
    q = np.einsum("ij,ij->i", diff, diff) / h**2
    if profile.singular:
        keep = q > 0
        diff, q = diff[keep], q[keep]
    return diff, np.maximum(q, eps_q)


def kde(points, profile: KernelProfile, h: float, x) -> float:
    pts = as_points(points)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    diff = x - pts
    q = np.einsum("ij,ij->i", diff, diff) / h**2
    return float(np.sum(profile.k(q)))


def kde_gradient(points, profile: KernelProfile, h: float, x, eps_q: float = EPS_Q) -> np.ndarray:
    diff, q = _terms(points, profile, h, x, eps_q)
    # k' = -g
    return -2.0 / h**2 * (profile.g(q) @ diff)


@dataclass
class DensityEval:
    f: float
    grad: np.ndarray
    hessian: np.ndarray
    C: float
    A: np.ndarray


def kde_hessian(points, profile: KernelProfile, h: float, x, eps_q: float = EPS_Q) -> DensityEval:
    diff, q = _terms(points, profile, h, x, eps_q)
    d = diff.shape[1] if diff.size else np.atleast_1d(x).size
    g = profile.g(q)
    k2 = profile.k2(q)
    C = 2.0 * float(np.sum(g))
    A = 4.0 * (diff * k2[:, None]).T @ diff
    # term-by-term assembly; the C/A split is checked against it in tests
    hess = 2.0 / h**2 * (-np.sum(g) * np.eye(d) + 2.0 / h**2 * (diff * k2[:, None]).T @ diff)
    hess = (hess + hess.T) / 2
    grad = -2.0 / h**2 * (g @ diff)
    return DensityEval(kde(points, profile, h, x), grad, hess, C, (A + A.T) / 2)


@dataclass
class HessianDiagnostic:
    eigenvalues: np.ndarray
    min_abs_eigenvalue: float
    lambda_max_A: float
    C: float
    certificate: bool
    grad_norm: float
    in_hull: bool
    within_xmax: bool

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "min_abs_eigenvalue": self.min_abs_eigenvalue,
            "lambda_max_A_over_h2": self.lambda_max_A,
            "C": self.C,
            "certificate": self.certificate,
            "grad_norm": self.grad_norm,
            "in_hull": self.in_hull,
            "within_xmax": self.within_xmax,
        }


def in_convex_hull(points, x) -> bool:
    pts = as_points(points)
    n = pts.shape[0]
    a_eq = np.vstack([pts.T, np.ones((1, n))])
    b_eq = np.append(np.asarray(x, dtype=float), 1.0)
    res = linprog(np.zeros(n), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return res.status == 0


def hessian_rank_diagnostic(points, profile: KernelProfile, h: float, xstar, eps_q: float = EPS_Q) -> HessianDiagnostic:
    """Spectral full-rank check of the KDE Hessian at a candidate mode.

    The certificate lambda_max(A/h^2) < C is sufficient, not necessary, for
    the Hessian to be nonsingular. The bound behind the bandwidth threshold
    assumes ``xstar`` lies in the convex hull of the data; ``in_hull`` and
    ``within_xmax`` flag queries outside that setting.
    """
    pts = as_points(points)
    ev = kde_hessian(pts, profile, h, xstar, eps_q)
    w, _ = jacobi_eigh(ev.hessian)
    wa, _ = jacobi_eigh(ev.A / h**2)
    lam_a = float(wa[-1])
    xmax = float(np.max(np.linalg.norm(pts, axis=1)))
    return HessianDiagnostic(
        eigenvalues=w,
        min_abs_eigenvalue=float(np.min(np.abs(w))),
        lambda_max_A=lam_a,
        C=ev.C,
        certificate=lam_a < ev.C,
        grad_norm=float(np.linalg.norm(ev.grad)),
        in_hull=in_convex_hull(pts, xstar),
        within_xmax=float(np.linalg.norm(xstar)) <= xmax * (1 + 1e-12),
    )
