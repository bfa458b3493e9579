"""Compare the numba and numpy kernel backends on the enumeration hot path.

Usage: python3 benchmarks/bench_backends.py [--n 1000000] [--repeat 3]

Times p-bound computation, atom filling, and a full streamed histogram for
the width-0.05 reference configuration, once per available backend.
"""

import argparse
import time

import numpy as np

from paircorr import _kernels
from paircorr.config import CorrelationConfig, PowerBeta
from paircorr.empirical import stream_histogram, uniform_edges


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_kernels(name, impl, N, alpha, phi, A, repeat):
    t_pb, pb = time_call(lambda: impl["p_bounds"](1, N, N, alpha, phi, A),
                         repeat)
    pb = np.minimum(pb, N - np.arange(1, N))
    t_fill, atoms = time_call(lambda: impl["fill_atoms"](1, pb, alpha, phi),
                              repeat)
    print(f"  {name:>6}: p_bounds {t_pb * 1e3:8.1f} ms   "
          f"fill {t_fill * 1e3:8.1f} ms   ({len(atoms)} atoms)")
    return atoms


def bench_histogram(N, alpha, beta, A, repeat):
    config = CorrelationConfig(alpha, PowerBeta(beta), N, A)
    edges = uniform_edges(0.0, A, 0.05)
    t, hist = time_call(lambda: stream_histogram(config, edges), repeat)
    print(f"  streamed histogram ({_kernels.backend()} backend): "
          f"{t * 1e3:8.1f} ms, total mass {hist.total_mass:.6f}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=10**6)
    parser.add_argument("--alpha", type=float, default=0.5)
    parser.add_argument("--beta", type=float, default=0.5)
    parser.add_argument("--window", type=float, default=8.0)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    N, alpha, A = args.n, args.alpha, args.window
    phi = float(N) ** args.beta
    print(f"config: alpha={alpha} N={N} phi=N^{args.beta} window={A}")
    print(f"available backends: {', '.join(_kernels.IMPLS)} "
          f"(active: {_kernels.backend()})")

    results = {}
    for name, impl in _kernels.IMPLS.items():
        if name == "numba":
            # trigger compilation outside the timed region
            impl["p_bounds"](1, 10, 10, alpha, phi, A)
            impl["fill_atoms"](1, np.ones(5, dtype=np.int64), alpha, phi)
        results[name] = bench_kernels(name, impl, N, alpha, phi, A,
                                      args.repeat)

    names = list(results)
    if len(names) == 2:
        a, b = np.sort(results[names[0]]), np.sort(results[names[1]])
        gap = float(np.max(np.abs(a - b))) if len(a) else 0.0
        print(f"  backend agreement: max atom gap {gap:.3g}")

    bench_histogram(N, alpha, args.beta, A, args.repeat)


if __name__ == "__main__":
    main()
