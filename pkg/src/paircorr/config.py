"""Configuration of a pair-correlation run: power parameter, scaling factor,
derived renormalization and the asymptotic regime they imply."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .errors import ConfigurationError

INFINITE = "infinite"
ZERO = "zero"
FINITE = "finite"


@dataclass(frozen=True)
class Regime:
    """Limit of phi(N)/N^(1-alpha): 0, a positive number, or infinity."""

    kind: str
    lam: float = math.nan

    @staticmethod
    def infinite() -> "Regime":
        return Regime(INFINITE, math.inf)

    @staticmethod
    def zero() -> "Regime":
        return Regime(ZERO, 0.0)

    @staticmethod
    def finite(lam: float) -> "Regime":
        if not (lam > 0 and math.isfinite(lam)):
            raise ConfigurationError(f"finite regime needs 0 < lambda < inf, got {lam}")
        return Regime(FINITE, lam)

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE


@dataclass(frozen=True)
class PowerBeta:
    """Scaling phi(N) = N**beta, with 0 < beta < 1."""

    beta: float

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ConfigurationError(f"beta must lie in (0, 1), got {self.beta}")

    def phi(self, n: int) -> float:
        return float(n) ** self.beta

    def declared_lambda(self, alpha: float) -> float:
        if self.beta > 1.0 - alpha:
            return math.inf
        if self.beta < 1.0 - alpha:
            return 0.0
        return 1.0


@dataclass(frozen=True)
class ScaledPower:
    """Scaling phi(N) = lam * N**(1-alpha); the limit is lam itself."""

    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ConfigurationError(f"lambda must be positive, got {self.lam}")

    def phi(self, n: int, alpha: Optional[float] = None) -> float:
        # alpha is supplied by CorrelationConfig.phi
        return self.lam * float(n) ** (1.0 - alpha)

    def declared_lambda(self, alpha: float) -> float:
        return self.lam


@dataclass(frozen=True)
class Custom:
    """User-supplied scaling with an explicitly declared limit lambda."""

    evaluator: Callable[[int], float]
    lam: Optional[float] = None

    def phi(self, n: int) -> float:
        v = float(self.evaluator(n))
        if not v > 0:
            raise ConfigurationError(f"custom scaling returned {v} at N={n}")
        return v

    def declared_lambda(self, alpha: float) -> float:
        if self.lam is None:
            raise ConfigurationError("custom scaling must declare its limit lambda")
        return self.lam


ScalingSpec = Union[PowerBeta, ScaledPower, Custom]


@dataclass(frozen=True)
class CorrelationConfig:
    """All parameters of one empirical pair-correlation measure.

    The renormalization psi(N) = N^(2-alpha)/phi(N) is always derived from
    the scaling factor, never set independently.
    """

    alpha: float
    scaling: ScalingSpec
    N: int
    window_A: float
    lambda_hint: Optional[float] = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ConfigurationError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.window_A > 1.0:
            raise ConfigurationError(f"window_A must exceed 1, got {self.window_A}")
        if not (isinstance(self.N, int) and self.N >= 1):
            raise ConfigurationError(f"N must be a positive integer, got {self.N}")
        declared = self.scaling.declared_lambda(self.alpha)
        if self.lambda_hint is not None and self.lambda_hint != declared:
            raise ConfigurationError(
                f"lambda_hint {self.lambda_hint} contradicts the scaling's "
                f"limit {declared}"
            )
        object.__setattr__(self, "lambda_hint", declared)

    @property
    def phi(self) -> float:
        if isinstance(self.scaling, ScaledPower):
            return self.scaling.phi(self.N, self.alpha)
        return self.scaling.phi(self.N)

    def phi_at(self, n: int) -> float:
        if isinstance(self.scaling, ScaledPower):
            return self.scaling.phi(n, self.alpha)
        return self.scaling.phi(n)

    @property
    def psi(self) -> float:
        return float(self.N) ** (2.0 - self.alpha) / self.phi

    def with_N(self, n: int) -> "CorrelationConfig":
        return CorrelationConfig(self.alpha, self.scaling, n, self.window_A)


def classify_regime(config: CorrelationConfig) -> Regime:
    """Regime implied by the scaling: compare beta to 1-alpha for power
    scalings, otherwise use the declared limit."""
    lam = config.scaling.declared_lambda(config.alpha)
    if lam == math.inf:
        return Regime.infinite()
    if lam == 0.0:
        return Regime.zero()
    return Regime.finite(lam)
