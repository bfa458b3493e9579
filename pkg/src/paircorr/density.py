"""Closed-form evaluation of the limit pair-correlation density, its scaled
variant, and exact or quadrature-based integration against test functions.

In the finite-lambda regime the density is even, vanishes on
(-alpha*lam, alpha*lam), and on each interval (k*alpha*lam, (k+1)*alpha*lam)
equals C * t^(-q) with q = (2-alpha)/(1-alpha) and a piece constant built
from the power sum up to k.  At the discontinuity points t in alpha*lam*Z
we follow the defining formula's floor literally, i.e. the value from the
right in |t| (the density is only defined a.e.; this choice is documented,
not load-bearing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

from .config import FINITE, INFINITE, ZERO, CorrelationConfig, Regime, classify_regime
from .quadrature import integrate_piecewise
from .sums import power_sum
from .testfun import TestFunction


@dataclass(frozen=True)
class DensityProfile:
    alpha: float
    regime: Regime

    @staticmethod
    def for_config(config: CorrelationConfig) -> "DensityProfile":
        return DensityProfile(config.alpha, classify_regime(config))

    @property
    def poisson_level(self) -> float:
        """The constant 1/(alpha(2-alpha)), the zero-lambda density and the
        finite-lambda tail level."""
        return 1.0 / (self.alpha * (2.0 - self.alpha))

    @property
    def repulsion_size(self) -> float:
        """Half-width of the zero-density interval around 0 (finite regime)."""
        if self.regime.kind != FINITE:
            return 0.0
        return self.alpha * self.regime.lam

    def discontinuities(self, lo: float, hi: float) -> List[float]:
        """Ascending discontinuity points k*alpha*lam (k != 0) in [lo, hi]."""
        if self.regime.kind != FINITE:
            return []
        step = self.repulsion_size
        k_lo = math.ceil(lo / step)
        k_hi = math.floor(hi / step)
        return [k * step for k in range(k_lo, k_hi + 1) if k != 0]

    def _piece_value(self, k: int, t: float) -> float:
        """Smooth extension of the density on the k-th positive piece."""
        a = self.alpha
        lam = self.regime.lam
        q = (2.0 - a) / (1.0 - a)
        coeff = a ** (1.0 / (1.0 - a)) / (1.0 - a)
        return coeff * (t / lam) ** (-q) * power_sum(k, 1.0 / (1.0 - a))


def rho(profile: DensityProfile, t: float) -> float:
    """The limit density at t (per-regime branch)."""
    kind = profile.regime.kind
    if kind == INFINITE:
        return 0.0
    if kind == ZERO:
        return profile.poisson_level
    x = abs(t)
    k = math.floor(x / profile.repulsion_size)
    if k < 1:
        return 0.0
    return profile._piece_value(k, x)


def rho_scaled(alpha: float, t: float) -> float:
    """alpha*(2-alpha) * rho_{alpha,lambda=1}(alpha*t): the lambda=1 density
    rescaled so the level repulsion ends at 1 and the tail limit is 1."""
    profile = DensityProfile(alpha, Regime.finite(1.0))
    return alpha * (2.0 - alpha) * rho(profile, alpha * t)


def rho_mass(profile: DensityProfile, a: float, b: float) -> float:
    """Exact integral of the density over [a, b] via the closed-form
    antiderivative of C * t^(-q) on each inter-discontinuity piece."""
    if not a < b:
        if a == b:
            return 0.0
        raise ValueError(f"need a < b, got [{a}, {b}]")
    kind = profile.regime.kind
    if kind == INFINITE:
        return 0.0
    if kind == ZERO:
        return (b - a) * profile.poisson_level
    total = 0.0
    if b > 0.0:
        total += _mass_positive(profile, max(a, 0.0), b)
    if a < 0.0:
        total += _mass_positive(profile, max(-b, 0.0), -a)
    return total


def _mass_positive(profile: DensityProfile, u: float, v: float) -> float:
    """Integral over [u, v] with 0 <= u <= v, finite regime."""
    a = profile.alpha
    lam = profile.regime.lam
    step = profile.repulsion_size
    q = (2.0 - a) / (1.0 - a)
    coeff = a ** (1.0 / (1.0 - a)) / (1.0 - a) * lam**q
    s = 1.0 / (1.0 - a)
    total = 0.0
    k = max(1, math.floor(u / step))
    while k * step < v:
        lo = max(u, k * step)
        hi = min(v, (k + 1) * step)
        if hi > lo:
            c = coeff * power_sum(k, s)
            total += c * (hi ** (1.0 - q) - lo ** (1.0 - q)) / (1.0 - q)
        k += 1
    return total


def rho_integral_against(profile: DensityProfile, f: TestFunction,
                         tol: float = 1e-10) -> float:
    """Quadrature of f * rho over supp f, split at every discontinuity of
    the density so each piece is smooth."""
    kind = profile.regime.kind
    if kind == INFINITE:
        return 0.0
    if kind == ZERO:
        return profile.poisson_level * f.total_integral()
    total = 0.0
    step = profile.repulsion_size
    for lo, hi, sign in ((max(f.lo, 0.0), f.hi, 1.0), (max(-f.hi, 0.0), -f.lo, -1.0)):
        if hi <= lo:
            continue
        lo = max(lo, step)  # density vanishes below the repulsion edge
        if hi <= lo:
            continue
        k = math.floor(lo / step)
        while k * step < hi:
            plo = max(lo, k * step)
            phi_ = min(hi, (k + 1) * step)
            if phi_ > plo:
                kk = k
                total += integrate_piecewise(
                    lambda t, kk=kk: f(sign * t) * profile._piece_value(kk, t),
                    [plo, phi_], tol=tol / (2.0 + hi / step),
                )
            k += 1
    return total
