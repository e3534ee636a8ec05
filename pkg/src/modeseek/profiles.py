"""Radial kernel profiles k(q) with closed-form first and second derivatives.

A profile generates the kernel K(x, y) = k(||x - y||^2 / h^2). All four
families here are completely monotone, so k > 0, k' < 0 and k'' > 0 on
(0, inf). The mean-shift weight is g = -k'.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class DomainError(ValueError):
    """Raised when a profile is evaluated outside its domain."""


class Family(str, enum.Enum):
    GAUSSIAN = "gaussian"
    LAPLACE = "laplace"
    STRETCHED = "stretched"
    CAUCHY = "cauchy"


def _as_array(q, strict: bool, what: str) -> np.ndarray:
    arr = np.asarray(q, dtype=float)
    bad = (arr <= 0) if strict else (arr < 0)
    if np.any(bad) or np.any(np.isnan(arr)):
        bound = "q > 0" if strict else "q >= 0"
        raise DomainError(f"{what} requires {bound}")
    return arr


def _out(arr: np.ndarray, scalar: bool):
    return float(arr) if scalar else arr


@dataclass(frozen=True)
class KernelProfile:
    """Immutable kernel profile.

    ``lam`` is the scale of the Laplace and stretched-exponential families,
    ``alpha`` the exponent of the stretched and Cauchy-type families. For
    Cauchy-type profiles ``P = 2 (1 - alpha)`` is exposed as well, since it is
    the usual way to name a member of that family.
    """

    family: Family
    lam: float = 1.0
    alpha: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if self.family in (Family.STRETCHED, Family.CAUCHY):
            if not 0 < self.alpha <= 1:
                raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")

    # -- constructors -----------------------------------------------------
    @classmethod
    def gaussian(cls) -> "KernelProfile":
        return cls(Family.GAUSSIAN)

    @classmethod
    def laplace(cls, lam: float = 1.0) -> "KernelProfile":
        return cls(Family.LAPLACE, lam=lam)

    @classmethod
    def stretched(cls, lam: float, alpha: float) -> "KernelProfile":
        return cls(Family.STRETCHED, lam=lam, alpha=alpha)

    @classmethod
    def cauchy(cls, P: float | None = None, alpha: float | None = None) -> "KernelProfile":
        """Cauchy-type profile 1 / (1 + q**alpha), from either ``P`` or ``alpha``."""
        if (P is None) == (alpha is None):
            raise ValueError("give exactly one of P or alpha")
        if P is not None:
            if not 0 < P < 2:
                raise ValueError(f"P must lie in (0, 2), got {P}")
            alpha = 1.0 - P / 2.0
        return cls(Family.CAUCHY, alpha=alpha)

    # -- metadata ---------------------------------------------------------
    @property
    def P(self) -> float | None:
        if self.family is Family.CAUCHY:
            return 2.0 * (1.0 - self.alpha)
        return None

    @property
    def k0(self) -> float:
        return 1.0

    @property
    def singular(self) -> bool:
        """True when g = -k' blows up at q = 0."""
        return self.powerlaw_exponent() is not None

    def powerlaw_exponent(self) -> float | None:
        """beta with g(r) ~ C r**-beta as r -> 0+, or None when g(0) is finite."""
        if self.family is Family.LAPLACE:
            return 0.5
        if self.family in (Family.STRETCHED, Family.CAUCHY) and self.alpha < 1:
            return 1.0 - self.alpha
        return None

    def __str__(self) -> str:
        if self.family is Family.GAUSSIAN:
            return "gaussian"
        if self.family is Family.LAPLACE:
            return f"laplace:{self.lam:g}"
        if self.family is Family.STRETCHED:
            return f"stretched:{self.lam:g},{self.alpha:g}"
        return f"cauchy:{self.P:g}"

    # -- evaluation -------------------------------------------------------
    def k(self, q):
        scalar = np.ndim(q) == 0
        q = _as_array(q, strict=False, what="k")
        f = self.family
        with np.errstate(over="ignore", under="ignore"):
            if f is Family.GAUSSIAN:
                out = np.exp(-q / 2)
            elif f is Family.LAPLACE:
                out = np.exp(-self.lam * np.sqrt(q))
            elif f is Family.STRETCHED:
                out = np.exp(-self.lam * q**self.alpha)
            else:
                out = 1.0 / (1.0 + q**self.alpha)
        return _out(out, scalar)

    def g(self, q):
        """Derivative weight g(q) = -k'(q), q > 0."""
        scalar = np.ndim(q) == 0
        q = _as_array(q, strict=True, what="g")
        f, lam, a = self.family, self.lam, self.alpha
        with np.errstate(over="ignore", under="ignore"):
            if f is Family.GAUSSIAN:
                out = 0.5 * np.exp(-q / 2)
            elif f is Family.LAPLACE:
                s = np.sqrt(q)
                out = lam / (2 * s) * np.exp(-lam * s)
            elif f is Family.STRETCHED:
                qa = q**a
                out = lam * a * qa / q * np.exp(-lam * qa)
            else:
                qa = q**a
                out = a * qa / q / (1 + qa) ** 2
        return _out(out, scalar)

    def dk(self, q):
        """First derivative k'(q) = -g(q)."""
        return -self.g(q)

    def k2(self, q):
        """Second derivative k''(q), q > 0."""
        scalar = np.ndim(q) == 0
        q = _as_array(q, strict=True, what="k''")
        f, lam, a = self.family, self.lam, self.alpha
        with np.errstate(over="ignore", under="ignore"):
            if f is Family.GAUSSIAN:
                out = 0.25 * np.exp(-q / 2)
            elif f is Family.LAPLACE:
                s = np.sqrt(q)
                out = lam / 4 * (1 / (q * s) + lam / q) * np.exp(-lam * s)
            elif f is Family.STRETCHED:
                qa = q**a
                out = lam * a * qa / q**2 * ((1 - a) + lam * a * qa) * np.exp(-lam * qa)
            else:
                qa = q**a
                out = a * qa / q**2 * ((1 - a) + (1 + a) * qa) / (1 + qa) ** 3
        return _out(out, scalar)

    def k2_over_g(self, q):
        """k''(q) / g(q) with the exponential factors cancelled, q > 0."""
        scalar = np.ndim(q) == 0
        q = _as_array(q, strict=True, what="k''/g")
        f, lam, a = self.family, self.lam, self.alpha
        if f is Family.GAUSSIAN:
            out = np.full_like(q, 0.5)
        elif f is Family.LAPLACE:
            out = (1 + lam * np.sqrt(q)) / (2 * q)
        elif f is Family.STRETCHED:
            out = ((1 - a) + lam * a * q**a) / q
        else:
            qa = q**a
            out = ((1 - a) + (1 + a) * qa) / (q * (1 + qa))
        return _out(out, scalar)


def eval_k(profile: KernelProfile, q):
    return profile.k(q)


def eval_g(profile: KernelProfile, q):
    return profile.g(q)


def eval_k2(profile: KernelProfile, q):
    return profile.k2(q)


def powerlaw_exponent(profile: KernelProfile) -> float | None:
    return profile.powerlaw_exponent()


def parse_kernel(spec: str) -> KernelProfile:
    """Parse ``gaussian``, ``laplace:<lam>``, ``stretched:<lam>,<alpha>`` or ``cauchy:<P>``."""
    name, _, args = spec.strip().partition(":")
    name = name.lower()
    try:
        vals = [float(v) for v in args.split(",")] if args else []
    except ValueError:
        raise ValueError(f"unknown kernel spec {spec!r}") from None
    if any(not math.isfinite(v) for v in vals):
        raise ValueError(f"unknown kernel spec {spec!r}")
    if name == "gaussian" and not vals:
        return KernelProfile.gaussian()
    if name == "laplace" and len(vals) <= 1:
        return KernelProfile.laplace(*vals)
    if name == "stretched" and len(vals) == 2:
        return KernelProfile.stretched(*vals)
    if name == "cauchy" and len(vals) == 1:
        return KernelProfile.cauchy(P=vals[0])
    raise ValueError(f"unknown kernel spec {spec!r}")
