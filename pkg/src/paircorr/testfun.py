"""C^1 compactly supported test functions.

The family is a single quartic bump t -> (1 - u^2)^2 with u the affine map
of the support onto [-1, 1].  It is continuously differentiable on the whole
line, vanishes with vanishing derivative at the support boundary, and has
closed-form sup norms and antiderivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

BUMP_SYMMETRIC = "BumpSymmetric"
BUMP_SHIFTED = "BumpShifted"

# integral of (1 - u^2)^2 over [-1, 1]
_FULL_BUMP_INTEGRAL = 16.0 / 15.0


@dataclass(frozen=True)
class TestFunction:
    kind: str
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ConfigurationError(f"empty support [{self.lo}, {self.hi}]")

    @staticmethod
    def bump_symmetric(A: float) -> "TestFunction":
        if not A > 0:
            raise ConfigurationError(f"bump half-width must be positive, got {A}")
        return TestFunction(BUMP_SYMMETRIC, -A, A)

    @staticmethod
    def bump_shifted(lo: float, hi: float) -> "TestFunction":
        return TestFunction(BUMP_SHIFTED, lo, hi)

    @property
    def sup_norm(self) -> float:
        return 1.0

    @property
    def deriv_sup_norm(self) -> float:
        # max of |d/dt (1-u^2)^2| = 8/(3*sqrt(3)) in u, times |du/dt|
        return 16.0 / (3.0 * math.sqrt(3.0) * (self.hi - self.lo))

    @property
    def support_bound(self) -> float:
        """Smallest B with supp f inside [-B, B]."""
        return max(abs(self.lo), abs(self.hi))

    def _to_unit(self, t):
        return (2.0 * t - (self.lo + self.hi)) / (self.hi - self.lo)

    def __call__(self, t):
        """Evaluate f(t); accepts scalars or numpy arrays, 0 outside support."""
        u = self._to_unit(np.asarray(t, dtype=np.float64))
        inside = np.abs(u) <= 1.0
        w = np.where(inside, 1.0 - u * u, 0.0)
        out = w * w
        if np.ndim(t) == 0:
            return float(out)
        return out

    def derivative(self, t):
        """Analytic f'(t); 0 outside support."""
        u = self._to_unit(np.asarray(t, dtype=np.float64))
        inside = np.abs(u) <= 1.0
        scale = 2.0 / (self.hi - self.lo)
        out = np.where(inside, -4.0 * u * (1.0 - u * u) * scale, 0.0)
        if np.ndim(t) == 0:
            return float(out)
        return out

    def integral(self, a: float, b: float) -> float:
        """Exact integral of f over [a, b] via the quartic antiderivative."""
        if b < a:
            return -self.integral(b, a)
        ua = min(max(self._to_unit(a), -1.0), 1.0)
        ub = min(max(self._to_unit(b), -1.0), 1.0)
        half = 0.5 * (self.hi - self.lo)
        prim = lambda u: u - 2.0 * u**3 / 3.0 + u**5 / 5.0
        return half * (prim(ub) - prim(ua))

    def total_integral(self) -> float:
        return 0.5 * (self.hi - self.lo) * _FULL_BUMP_INTEGRAL


def mirror(f: TestFunction) -> TestFunction:
    """The reflection t -> f(-t); support is reflected, norms unchanged."""
    return TestFunction(f.kind, -f.hi, -f.lo)


def eval_test_function(f: TestFunction, t: float) -> float:
    return f(t)
