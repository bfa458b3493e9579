"""Hot enumeration kernels, in two interchangeable backends.

The numba backend compiles the per-pair loops with @njit; the numpy backend
vectorizes the same arithmetic.  Selection: numba when importable, unless
the environment variable PAIRCORR_NO_NUMBA=1 forces the numpy path.  Both
backends share the cancellation-safe difference

    (m+p)^alpha - m^alpha = m^alpha * expm1(alpha * log1p(p/m))

which avoids the ~10-digit loss of the naive subtraction at large m.
"""

from __future__ import annotations

import math
import os

import numpy as np

_FORCE_NUMPY = os.environ.get("PAIRCORR_NO_NUMBA", "0") == "1"


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

def _scaled_diff_np(m, p, alpha, phi):
    m = np.asarray(m, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    return phi * m**alpha * np.expm1(alpha * np.log1p(p / m))


def _p_bounds_np(m_lo, m_hi, N, alpha, phi, A):
    """Largest p >= 0 with phi*((m+p)^alpha - m^alpha) <= A, for each
    m in [m_lo, m_hi).  Closed form, then a short local scan to absorb
    floating-point edge error."""
    m = np.arange(m_lo, m_hi, dtype=np.float64)
    est = (A / phi + m**alpha) ** (1.0 / alpha) - m
    p = np.floor(np.maximum(est, 0.0)).astype(np.int64)
    for _ in range(64):
        up = _scaled_diff_np(m, p + 1, alpha, phi) <= A
        if not up.any():
            break
        p[up] += 1
    for _ in range(64):
        down = (p >= 1) & (_scaled_diff_np(m, np.maximum(p, 1), alpha, phi) > A)
        if not down.any():
            break
        p[down] -= 1
    return p


def _fill_atoms_np(m_lo, pb, alpha, phi):
    """Atoms phi*((m+p)^alpha - m^alpha) for m = m_lo + i, p = 1..pb[i]."""
    pb = np.asarray(pb, dtype=np.int64)
    total = int(pb.sum())
    if total == 0:
        return np.empty(0, dtype=np.float64)
    m_rep = np.repeat(np.arange(m_lo, m_lo + len(pb), dtype=np.float64), pb)
    offsets = np.concatenate(([0], np.cumsum(pb)))
    p = np.arange(total, dtype=np.int64) - np.repeat(offsets[:-1], pb) + 1
    return _scaled_diff_np(m_rep, p, alpha, phi)


def _fill_linear_atoms_np(m_lo, pb, alpha, phi):
    """Atoms phi*alpha*p/m^(1-alpha) for the linearized measure."""
    pb = np.asarray(pb, dtype=np.int64)
    total = int(pb.sum())
    if total == 0:
        return np.empty(0, dtype=np.float64)
    m_rep = np.repeat(np.arange(m_lo, m_lo + len(pb), dtype=np.float64), pb)
    offsets = np.concatenate(([0], np.cumsum(pb)))
    p = (np.arange(total, dtype=np.int64) - np.repeat(offsets[:-1], pb) + 1).astype(np.float64)
    return phi * alpha * p / m_rep ** (1.0 - alpha)


def _brute_force_np(N, alpha, phi, A):
    """All positive pairs by a direct double loop (vectorized over n).

    Oracle for the closed-form enumeration: independence is in visiting
    every pair rather than trusting the p-bound; the difference itself uses
    the shared cancellation-safe formula so atoms match to the last bit."""
    chunks = []
    for m in range(1, N):
        p = np.arange(1, N - m + 1, dtype=np.float64)
        d = _scaled_diff_np(float(m), p, alpha, phi)
        chunks.append(d[d <= A])
    if not chunks:
        return np.empty(0, dtype=np.float64)
    return np.concatenate(chunks)


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

_HAVE_NUMBA = False
if not _FORCE_NUMPY:
    try:
        import numba
        from numba import njit, prange

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover
        pass

if _HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _scaled_diff_scalar(m, p, alpha, phi):
        return phi * m**alpha * math.expm1(alpha * math.log1p(p / m))

    @njit(cache=True, nogil=True, parallel=True)
    def _p_bounds_nb(m_lo, m_hi, N, alpha, phi, A):
        out = np.zeros(m_hi - m_lo, dtype=np.int64)
        for i in prange(m_hi - m_lo):
            m = float(m_lo + i)
            est = (A / phi + m**alpha) ** (1.0 / alpha) - m
            p = int(est) if est > 0.0 else 0
            while _scaled_diff_scalar(m, float(p + 1), alpha, phi) <= A:
                p += 1
            while p >= 1 and _scaled_diff_scalar(m, float(p), alpha, phi) > A:
                p -= 1
            out[i] = p
        return out

    @njit(cache=True, nogil=True, parallel=True)
    def _fill_atoms_nb(m_lo, pb, alpha, phi):
        n = len(pb)
        offsets = np.zeros(n + 1, dtype=np.int64)
        for i in range(n):
            offsets[i + 1] = offsets[i] + pb[i]
        out = np.empty(offsets[n], dtype=np.float64)
        for i in prange(n):
            m = float(m_lo + i)
            base = offsets[i]
            for j in range(pb[i]):
                out[base + j] = _scaled_diff_scalar(m, float(j + 1), alpha, phi)
        return out

    @njit(cache=True, nogil=True, parallel=True)
    def _fill_linear_atoms_nb(m_lo, pb, alpha, phi):
        n = len(pb)
        offsets = np.zeros(n + 1, dtype=np.int64)
        for i in range(n):
            offsets[i + 1] = offsets[i] + pb[i]
        out = np.empty(offsets[n], dtype=np.float64)
        for i in prange(n):
            m = float(m_lo + i)
            base = offsets[i]
            scale = phi * alpha / m ** (1.0 - alpha)
            for j in range(pb[i]):
                out[base + j] = scale * (j + 1)
        return out

    @njit(cache=True, nogil=True)
    def _brute_force_nb(N, alpha, phi, A):
        count = 0
        for m in range(1, N):
            for n in range(m + 1, N + 1):
                if _scaled_diff_scalar(float(m), float(n - m), alpha, phi) <= A:
                    count += 1
        out = np.empty(count, dtype=np.float64)
        k = 0
        for m in range(1, N):
            for n in range(m + 1, N + 1):
                d = _scaled_diff_scalar(float(m), float(n - m), alpha, phi)
                if d <= A:
                    out[k] = d
                    k += 1
        return out


_NUMPY_IMPL = {
    "p_bounds": _p_bounds_np,
    "fill_atoms": _fill_atoms_np,
    "fill_linear_atoms": _fill_linear_atoms_np,
    "brute_force": _brute_force_np,
}

if _HAVE_NUMBA:
    _NUMBA_IMPL = {
        "p_bounds": lambda m_lo, m_hi, N, alpha, phi, A: _p_bounds_nb(
            m_lo, m_hi, N, alpha, phi, A
        ),
        "fill_atoms": lambda m_lo, pb, alpha, phi: _fill_atoms_nb(
            m_lo, np.asarray(pb, dtype=np.int64), alpha, phi
        ),
        "fill_linear_atoms": lambda m_lo, pb, alpha, phi: _fill_linear_atoms_nb(
            m_lo, np.asarray(pb, dtype=np.int64), alpha, phi
        ),
        "brute_force": _brute_force_nb,
    }
    IMPLS = {"numpy": _NUMPY_IMPL, "numba": _NUMBA_IMPL}
    BACKEND = "numba"
else:
    IMPLS = {"numpy": _NUMPY_IMPL}
    BACKEND = "numpy"

_active = IMPLS[BACKEND]

p_bounds = _active["p_bounds"]
fill_atoms = _active["fill_atoms"]
fill_linear_atoms = _active["fill_linear_atoms"]
brute_force = _active["brute_force"]


def backend() -> str:
    """Name of the active kernel backend ("numba" or "numpy")."""
    return BACKEND


def set_num_threads(n: int) -> None:
    if _HAVE_NUMBA and n >= 1:
        numba.set_num_threads(n)
