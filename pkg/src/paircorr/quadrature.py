"""Adaptive Simpson quadrature for piecewise-smooth integrands."""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import QuadratureError

_MAX_DEPTH = 48


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adapt(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm, flm, left = _simpson(f, a, fa, m, fm)
    rm, frm, right = _simpson(f, m, fm, b, fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth >= _MAX_DEPTH:
        raise QuadratureError(abs(delta) / 15.0, tol)
    half = 0.5 * tol
    return _adapt(f, a, fa, m, fm, lm, flm, left, half, depth + 1) + _adapt(
        f, m, fm, b, fb, rm, frm, right, half, depth + 1
    )


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = 1e-10) -> float:
    """Integrate f over [a, b] with absolute error target tol."""
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m, fm, whole = _simpson(f, a, fa, b, fb)
    return _adapt(f, a, fa, b, fb, m, fm, whole, tol, 0)


def integrate_piecewise(f: Callable[[float], float], breakpoints: Sequence[float],
                        tol: float = 1e-10) -> float:
    """Integrate f over [breakpoints[0], breakpoints[-1]], treating each
    consecutive pair as a smooth piece."""
    pieces = [(breakpoints[i], breakpoints[i + 1])
              for i in range(len(breakpoints) - 1)
              if breakpoints[i + 1] > breakpoints[i]]
    if not pieces:
        return 0.0
    per_piece = tol / len(pieces)
    return sum(adaptive_simpson(f, a, b, per_piece) for a, b in pieces)
