"""Executable diagnostics for the convergence machinery: the linearized
measure, Riemann-sum densities and their roots, the explicit constants, and
the quantitative bound verifiers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, Tuple

import numpy as np

from . import _kernels
from .config import FINITE, ZERO, CorrelationConfig, classify_regime
from .density import DensityProfile, rho_integral_against
from .empirical import AtomMeasure, POSITIVE_ONLY, _CHUNK_ATOMS, stream_evaluate
from .errors import MemoryCapError, PreconditionError, RegimeError
from .sums import power_sum
from .testfun import TestFunction, mirror


@dataclass(frozen=True)
class ExplicitConstants:
    """The explicit constants entering the zero-lambda quantitative bound."""

    alpha: float

    @property
    def c_alpha_prime(self) -> float:
        a = self.alpha
        return (2.0 ** (1.0 + 3.0 * (1.0 - a))
                + 2.0 ** (1.0 / a + 4.0 - 3.0 * a) * (1.0 - a)) / (3.0 * a * a)

    @property
    def c_alpha(self) -> float:
        a = self.alpha
        return 2.0 * max(self.c_alpha_prime, (1.0 + a) / (2.0 * a),
                         1.0 / (2.0 * a * a))

    @property
    def c_alpha_prime_majorant(self) -> float:
        a = self.alpha
        return (32.0 / 3.0) * 2.0 ** (1.0 / a) / (a * a)


@dataclass(frozen=True)
class BoundReport:
    lhs: float
    rhs: float
    passed: bool
    terms: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "pass": self.passed,
                "terms": dict(self.terms)}


def _require_linearization_hypothesis(config: CorrelationConfig) -> None:
    threshold = config.window_A / (2.0**config.alpha - 1.0)
    if not config.phi > threshold:
        raise PreconditionError(
            f"linearization needs phi(N) > {threshold:.6g}, got {config.phi:.6g}"
        )


def _linear_p_bounds(config: CorrelationConfig) -> np.ndarray:
    N = config.N
    if N < 2:
        return np.zeros(0, dtype=np.int64)
    m = np.arange(1, N, dtype=np.float64)
    pb = np.floor(config.window_A * m ** (1.0 - config.alpha)
                  / (config.alpha * config.phi)).astype(np.int64)
    return np.minimum(pb, N - np.arange(1, N, dtype=np.int64))


def _iter_linear_chunks(config: CorrelationConfig,
                        chunk: int = _CHUNK_ATOMS) -> Iterator[np.ndarray]:
    pb = _linear_p_bounds(config)
    if len(pb) == 0:
        return
    cum = np.cumsum(pb)
    start = 0
    while start < len(pb):
        base = cum[start - 1] if start > 0 else 0
        stop = min(int(np.searchsorted(cum, base + chunk, side="left")) + 1, len(pb))
        yield _kernels.fill_linear_atoms(start + 1, pb[start:stop], config.alpha,
                                         config.phi)
        start = stop


def linearized_measure(config: CorrelationConfig,
                       mem_cap: int = 10**8) -> AtomMeasure:
    """The tangent-line approximation: atoms phi(N)*alpha*p/m^(1-alpha)."""
    _require_linearization_hypothesis(config)
    projected = int(_linear_p_bounds(config).sum())
    if projected > mem_cap:
        raise MemoryCapError(projected, mem_cap)
    chunks = list(_iter_linear_chunks(config))
    atoms = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.float64)
    return AtomMeasure(1.0 / config.psi, atoms, POSITIVE_ONLY, config)


def _stream_evaluate_linear(config: CorrelationConfig, f: TestFunction) -> float:
    total = 0.0
    for chunk in _iter_linear_chunks(config):
        total += float(np.sum(f(chunk)))
    return total / config.psi


def check_linearization_bound(config: CorrelationConfig, f: TestFunction,
                              require_hypothesis: bool = True) -> BoundReport:
    """|R_N^+(f) - mu_N^+(f)| against c'_a * A^3 * ||f'|| / (N^alpha phi)."""
    if require_hypothesis:
        _require_linearization_hypothesis(config)
    exact = stream_evaluate(config, f)
    linear = _stream_evaluate_linear(config, f)
    lhs = abs(exact - linear)
    consts = ExplicitConstants(config.alpha)
    rhs = (consts.c_alpha_prime * config.window_A**3 * f.deriv_sup_norm
           / (config.N**config.alpha * config.phi))
    return BoundReport(lhs, rhs, lhs <= rhs,
                       {"exact": exact, "linearized": linear,
                        "c_alpha_prime": consts.c_alpha_prime})


def riemann_gap(f: TestFunction, delta: float, M: int) -> Tuple[float, float]:
    """Gap between the integral of f on [0, M*delta] and its right Riemann
    sum, with the guaranteed bound (||f'||/2) * delta * min(B, M*delta)."""
    if delta <= 0 or M < 1:
        raise ValueError("need delta > 0 and M >= 1")
    p = np.arange(1, M + 1, dtype=np.float64)
    lhs = abs(f.integral(0.0, M * delta) - delta * float(np.sum(f(p * delta))))
    rhs = 0.5 * f.deriv_sup_norm * delta * min(f.support_bound, M * delta)
    return lhs, rhs


def root_xNt(config: CorrelationConfig, t: float) -> float:
    """Unique root of the regime's crossover function on (0, N), found by
    bisection from the guaranteed sandwich brackets."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if t == 0.0:
        regime = classify_regime(config)
        return float(config.N) if regime.kind == ZERO else 0.0
    a, N, phi = config.alpha, float(config.N), config.phi
    regime = classify_regime(config)
    if regime.kind == ZERO:
        g = lambda x: (N - x) - t / (a * phi) * x ** (1.0 - a)
        lo = max(0.0, N * (1.0 - t / (a * N**a * phi)))
        hi = N
    elif regime.kind == FINITE:
        g = lambda x: x - (t / a) * (N - x) ** (1.0 - a) / phi
        hi = min((t / a) * N ** (1.0 - a) / phi, N)
        lo = hi * max(0.0, 1.0 - t / (a * N**a * phi)) ** (1.0 - a)
    else:
        raise RegimeError("root_xNt is defined for the zero and finite regimes")
    # widen minimally if rounding pushed a bracket to the wrong sign
    glo, ghi = g(lo), g(hi)
    sign = 1.0 if regime.kind == FINITE else -1.0
    for _ in range(64):
        if sign * glo <= 0.0:
            break
        lo = max(0.0, lo - 1e-12 * N)
        glo = g(lo)
    for _ in range(64):
        if sign * ghi >= 0.0:
            break
        hi = min(N, hi + 1e-12 * N)
        ghi = g(hi)
    tol = 1e-12 * N
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if abs(gm) <= tol:
            return mid
        if sign * gm < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def theta_N(config: CorrelationConfig, t: float) -> float:
    """Density of the Riemann-sum measure at t >= 0 (regime-specific form)."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if t == 0.0:
        return 0.0
    a = config.alpha
    regime = classify_regime(config)
    k = math.floor(root_xNt(config, t))
    if regime.kind == ZERO:
        return power_sum(k, 1.0 - a) / (a * float(config.N) ** (2.0 - a))
    if regime.kind == FINITE:
        coeff = a ** (1.0 / (1.0 - a)) / (1.0 - a)
        scale = config.phi ** (1.0 / (1.0 - a)) / config.psi
        return (coeff * scale * t ** (-(2.0 - a) / (1.0 - a))
                * power_sum(k, 1.0 / (1.0 - a)))
    raise RegimeError("theta_N is defined for the zero and finite regimes")


def theta_infinity(alpha: float, t: float) -> float:
    """Pointwise limit of the rescaled Riemann density (the lambda=1 limit
    density restricted to t >= 0)."""
    if t <= 0.0:
        return 0.0
    k = math.floor(t / alpha)
    if k < 1:
        return 0.0
    coeff = alpha ** (1.0 / (1.0 - alpha)) / (1.0 - alpha)
    return coeff * t ** (-(2.0 - alpha) / (1.0 - alpha)) * power_sum(k, 1.0 / (1.0 - alpha))


def theta_N_hat(config: CorrelationConfig, t: float) -> float:
    """theta_N rescaled by psi(N)/phi(N)^(1/(1-alpha)); its pointwise
    convergence to theta_infinity is eventually stationary off the jump set."""
    a = config.alpha
    return config.psi / config.phi ** (1.0 / (1.0 - a)) * theta_N(config, t)


def theta_N_error_bound(config: CorrelationConfig, t: float) -> Tuple[float, float]:
    """Zero regime: |theta_N(t) - 1/(a(2-a))| <= (1/a)(1/N + t/(a N^a phi))."""
    if classify_regime(config).kind != ZERO:
        raise RegimeError("the theta_N error bound holds in the zero regime")
    a = config.alpha
    lhs = abs(theta_N(config, t) - 1.0 / (a * (2.0 - a)))
    rhs = (1.0 / a) * (1.0 / config.N
                       + t / (a * float(config.N) ** a * config.phi))
    return lhs, rhs


def verify_effective_bound(config: CorrelationConfig, f: TestFunction,
                           require_hypothesis: bool = True) -> BoundReport:
    """Zero regime: the full quantitative Poisson bound with the explicit
    constant.

    With require_hypothesis=False the check still runs when phi(N) is below
    the A/(2^alpha - 1) threshold (the bound is only guaranteed above it);
    the report's terms record whether the hypothesis held."""
    if classify_regime(config).kind != ZERO:
        raise RegimeError("the explicit bound is stated for the zero regime")
    threshold = config.window_A / (2.0**config.alpha - 1.0)
    if require_hypothesis:
        _require_linearization_hypothesis(config)
    a, A, N = config.alpha, config.window_A, config.N
    empirical_value = stream_evaluate(config, f, symmetric=True)
    limit_value = rho_integral_against(DensityProfile.for_config(config), f)
    lhs = abs(empirical_value - limit_value)
    consts = ExplicitConstants(a)
    rate = (config.phi / float(N) ** (1.0 - a)
            + 1.0 / (float(N) ** a * config.phi) + 1.0 / N)
    rhs = consts.c_alpha * (f.sup_norm + f.deriv_sup_norm) * A**3 * rate
    return BoundReport(lhs, rhs, lhs <= rhs,
                       {"empirical": empirical_value, "limit": limit_value,
                        "c_alpha": consts.c_alpha, "rate": rate,
                        "hypothesis_held": float(config.phi > threshold)})


def finite_lambda_gap(config: CorrelationConfig, f: TestFunction) -> float:
    """|R_N^alpha(f) - rho Leb(f)| in the finite regime.  The convergence
    rate carries no explicit constant in this regime, so callers assert
    only the decay of this gap, never an inequality."""
    if classify_regime(config).kind != FINITE:
        raise RegimeError("finite_lambda_gap needs the finite regime")
    empirical_value = stream_evaluate(config, f, symmetric=True)
    limit_value = rho_integral_against(DensityProfile.for_config(config), f)
    return abs(empirical_value - limit_value)
