"""Windowed computation of the empirical pair-correlation measure.

The enumerator visits, for each base index m, only the offsets p whose
scaled difference phi(N)*((m+p)^alpha - m^alpha) lands inside the window
[0, A]; the per-m bound comes from the closed form and a short local scan,
so total work is proportional to the number of in-window pairs, not N^2.
Atom production runs in m-chunks so evaluation and histogramming can stream
with bounded memory.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import _kernels
from .config import CorrelationConfig, PowerBeta
from .errors import MemoryCapError, PairCorrError, PreconditionError
from .testfun import TestFunction, mirror

POSITIVE_ONLY = "PositiveOnly"
SYMMETRIC = "Symmetric"

DEFAULT_MEM_CAP = 10**8
_CHUNK_ATOMS = 1 << 23
_BRUTE_FORCE_GUARD = 20000


def _mem_cap() -> int:
    return int(os.environ.get("PAIRCORR_MEM_CAP", DEFAULT_MEM_CAP))


@dataclass(frozen=True)
class AtomMeasure:
    """Weighted atoms of the pair-correlation measure inside the window.

    Only the positive scaled differences are stored; the Symmetric side
    means the stored multiset together with its negation."""

    weight: float
    atoms: np.ndarray
    side: str
    meta: CorrelationConfig

    def __len__(self) -> int:
        return len(self.atoms)

    def symmetrized(self) -> "AtomMeasure":
        return AtomMeasure(self.weight, self.atoms, SYMMETRIC, self.meta)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    masses: np.ndarray
    total_pairs_visited: int
    meta: CorrelationConfig

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def densities(self) -> np.ndarray:
        return self.masses / self.widths

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())


def uniform_edges(lo: float, hi: float, width: float,
                  snap_step: Optional[float] = None) -> np.ndarray:
    """Uniform bin edges covering [lo, hi].  With snap_step set (typically
    alpha*lam), the width is adjusted so the density's jump points fall on
    bin edges."""
    if width <= 0:
        raise ValueError(f"bin width must be positive, got {width}")
    if snap_step is not None and snap_step > 0:
        n_sub = max(1, round(snap_step / width))
        width = snap_step / n_sub
        lo = math.floor(lo / width) * width
    n = max(1, math.ceil((hi - lo) / width - 1e-9))
    return lo + width * np.arange(n + 1)


def p_bound_exact(config: CorrelationConfig, m: int) -> int:
    """Largest p >= 0 with phi(N)*((m+p)^alpha - m^alpha) <= A.  Not capped
    at N - m; the enumerator applies that cap itself."""
    if not 1 <= m <= config.N - 1:
        raise PairCorrError(f"m must lie in [1, N-1], got {m}")
    pb = _kernels.p_bounds(m, m + 1, config.N, config.alpha, config.phi,
                           config.window_A)
    return int(pb[0])


def _capped_p_bounds(config: CorrelationConfig) -> np.ndarray:
    N = config.N
    if N < 2:
        return np.zeros(0, dtype=np.int64)
    pb = _kernels.p_bounds(1, N, N, config.alpha, config.phi, config.window_A)
    return np.minimum(pb, N - np.arange(1, N, dtype=np.int64))


def atom_count(config: CorrelationConfig) -> int:
    """Exact number of in-window positive pairs, without materializing them."""
    return int(_capped_p_bounds(config).sum())


def _iter_atom_chunks(config: CorrelationConfig,
                      chunk: int = _CHUNK_ATOMS) -> Iterator[np.ndarray]:
    pb = _capped_p_bounds(config)
    if len(pb) == 0:
        return
    cum = np.cumsum(pb)
    start = 0
    while start < len(pb):
        base = cum[start - 1] if start > 0 else 0
        stop = int(np.searchsorted(cum, base + chunk, side="left")) + 1
        stop = min(stop, len(pb))
        yield _kernels.fill_atoms(start + 1, pb[start:stop], config.alpha,
                                  config.phi)
        start = stop


def enumerate_window(config: CorrelationConfig,
                     mem_cap: Optional[int] = None) -> AtomMeasure:
    """Materialize the positive part of the measure on [0, A]."""
    cap = _mem_cap() if mem_cap is None else mem_cap
    projected = atom_count(config)
    if projected > cap:
        raise MemoryCapError(projected, cap)
    if projected == 0:
        atoms = np.empty(0, dtype=np.float64)
    else:
        atoms = np.concatenate(list(_iter_atom_chunks(config)))
    return AtomMeasure(1.0 / config.psi, atoms, POSITIVE_ONLY, config)


def brute_force_measure(config: CorrelationConfig) -> AtomMeasure:
    """Direct double loop over all pairs m < n; test oracle only."""
    if config.N > _BRUTE_FORCE_GUARD:
        raise PairCorrError(
            f"brute force is guarded at N <= {_BRUTE_FORCE_GUARD}, got {config.N}"
        )
    atoms = _kernels.brute_force(config.N, config.alpha, config.phi,
                                 config.window_A)
    return AtomMeasure(1.0 / config.psi, np.asarray(atoms), POSITIVE_ONLY, config)


def _check_support(config: CorrelationConfig, f: TestFunction) -> None:
    if f.support_bound > config.window_A * (1.0 + 1e-12):
        raise PairCorrError(
            f"supp f reaches {f.support_bound}, beyond the window "
            f"[-{config.window_A}, {config.window_A}]"
        )


def evaluate(measure: AtomMeasure, f: TestFunction) -> float:
    """weight * sum f(atom); the Symmetric side adds the mirrored pairing."""
    _check_support(measure.meta, f)
    if measure.side == SYMMETRIC:
        pos = AtomMeasure(measure.weight, measure.atoms, POSITIVE_ONLY, measure.meta)
        return evaluate(pos, f) + evaluate(pos, mirror(f))
    if len(measure.atoms) == 0:
        return 0.0
    return measure.weight * float(np.sum(f(measure.atoms)))


def stream_evaluate(config: CorrelationConfig, f: TestFunction,
                    symmetric: bool = False) -> float:
    """Same pairing as evaluate() but in constant memory."""
    _check_support(config, f)
    fs = (f, mirror(f)) if symmetric else (f,)
    total = 0.0
    for chunk in _iter_atom_chunks(config):
        for g in fs:
            total += float(np.sum(g(chunk)))
    return total / config.psi


def histogram(measure: AtomMeasure, edges: np.ndarray) -> Histogram:
    edges = np.asarray(edges, dtype=np.float64)
    counts, _ = np.histogram(measure.atoms, edges)
    visited = len(measure.atoms)
    if measure.side == SYMMETRIC:
        neg, _ = np.histogram(-measure.atoms, edges)
        counts = counts + neg
        visited *= 2
    return Histogram(edges, measure.weight * counts, visited, measure.meta)


def stream_histogram(config: CorrelationConfig, edges: np.ndarray,
                     symmetric: bool = False) -> Histogram:
    edges = np.asarray(edges, dtype=np.float64)
    counts = np.zeros(len(edges) - 1, dtype=np.int64)
    visited = 0
    for chunk in _iter_atom_chunks(config):
        c, _ = np.histogram(chunk, edges)
        counts += c
        visited += len(chunk)
        if symmetric:
            c, _ = np.histogram(-chunk, edges)
            counts += c
            visited += len(chunk)
    return Histogram(edges, counts / config.psi, visited, config)


def count_in_shrinking_window(alpha: float, beta: float, N: int,
                              a: float, b: float) -> float:
    """Normalized count of pair differences falling in the shrinking window
    (a/N^beta, b/N^beta), i.e. the mass the scaled measure gives to the open
    interval (a, b)."""
    if not a < b:
        raise ValueError(f"need a < b, got ({a}, {b})")
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    window = max(abs(a), abs(b), 1.5)
    config = CorrelationConfig(alpha, PowerBeta(beta), N, window)
    count = 0
    for chunk in _iter_atom_chunks(config):
        count += int(np.count_nonzero((chunk > a) & (chunk < b)))
        count += int(np.count_nonzero((chunk > -b) & (chunk < -a)))
    return count / config.psi


def min_scaled_gap(config: CorrelationConfig) -> float:
    """Lower bound alpha*phi(N)/(2N)^(1-alpha) on every positive atom
    (the empirical level repulsion)."""
    return config.alpha * config.phi / (2.0 * config.N) ** (1.0 - config.alpha)
