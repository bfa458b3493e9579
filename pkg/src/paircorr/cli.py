"""Command-line front end: density sampling, empirical histograms, and the
verification suites, with deterministic CSV/JSON output.

All numeric output is printed with 17 significant digits so files are
bit-stable across runs and diffable."""

from __future__ import annotations

import argparse
import datetime
import json
import math
import sys
import time
from typing import List, Optional

import numpy as np

from . import _kernels
from .approximations import (
    BoundReport,
    check_linearization_bound,
    riemann_gap,
    root_xNt,
)
from .config import (
    CorrelationConfig,
    PowerBeta,
    Regime,
    ScaledPower,
    ScalingSpec,
    classify_regime,
)
from .density import DensityProfile, rho, rho_mass, rho_scaled
from .empirical import (
    enumerate_window,
    histogram,
    stream_histogram,
    uniform_edges,
)
from .errors import MemoryCapError, PairCorrError
from .testfun import TestFunction
from .unfolding import crosscheck_density
from .approximations import verify_effective_bound

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_RESOURCE = 2


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def config_to_dict(config: CorrelationConfig) -> dict:
    scaling = config.scaling
    if isinstance(scaling, PowerBeta):
        sdict = {"kind": "power_beta", "beta": scaling.beta}
    elif isinstance(scaling, ScaledPower):
        sdict = {"kind": "scaled_power", "lambda": scaling.lam}
    else:
        raise PairCorrError("custom scalings are not serializable")
    return {"alpha": config.alpha, "scaling": sdict, "N": config.N,
            "window_A": config.window_A}


def config_from_dict(d: dict) -> CorrelationConfig:
    s = d["scaling"]
    if s["kind"] == "power_beta":
        scaling: ScalingSpec = PowerBeta(s["beta"])
    elif s["kind"] == "scaled_power":
        scaling = ScaledPower(s["lambda"])
    else:
        raise PairCorrError(f"unknown scaling kind {s['kind']!r}")
    return CorrelationConfig(d["alpha"], scaling, d["N"], d["window_A"])


def _parse_phi_expr(expr: str) -> ScalingSpec:
    """Accept 'N**<beta>' or '<lam>*N**(1-alpha)'."""
    text = expr.replace(" ", "")
    if text.endswith("*N**(1-alpha)"):
        return ScaledPower(float(text[: -len("*N**(1-alpha)")]))
    if text.startswith("N**"):
        return PowerBeta(float(text[len("N**"):]))
    raise PairCorrError(
        f"cannot parse scaling {expr!r}; use 'N**beta' or 'lam*N**(1-alpha)'"
    )


def _scaling_from_args(args) -> ScalingSpec:
    given = [x is not None for x in (args.beta, args.lam, args.phi_expr)]
    if sum(given) != 1:
        raise PairCorrError("give exactly one of --beta, --lambda, --phi-expr")
    if args.beta is not None:
        return PowerBeta(args.beta)
    if args.lam is not None:
        return ScaledPower(args.lam)
    return _parse_phi_expr(args.phi_expr)


def _write_lines(path: Optional[str], lines: List[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

def cmd_density(args) -> int:
    if args.step <= 0:
        raise PairCorrError("--step must be positive")
    if args.t_max <= args.t_min:
        raise PairCorrError("--t-max must exceed --t-min")
    if args.regime == "zero":
        regime = Regime.zero()
    elif args.regime == "infinite":
        regime = Regime.infinite()
    elif args.lam is not None:
        regime = Regime.finite(args.lam)
    else:
        raise PairCorrError("give --lambda or --regime")
    profile = DensityProfile(args.alpha, regime)
    lines = [
        f"# paircorr density alpha={_fmt(args.alpha)}",
        f"# regime={regime.kind} lambda={_fmt(regime.lam)}",
        f"# discontinuity_step={_fmt(profile.repulsion_size)}",
        "t,rho" + (",rho_scaled" if args.scaled else ""),
    ]
    if args.scaled:
        # the rescaled density jumps on the integer lattice for every alpha
        lines.insert(3, "# scaled_discontinuity_step=1")
    n = int(round((args.t_max - args.t_min) / args.step))
    for i in range(n + 1):
        t = args.t_min + i * args.step
        row = [_fmt(t), _fmt(rho(profile, t))]
        if args.scaled:
            row.append(_fmt(rho_scaled(args.alpha, t)))
        lines.append(",".join(row))
    _write_lines(args.out, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# empirical
# ---------------------------------------------------------------------------

def cmd_empirical(args) -> int:
    started = time.time()
    scaling = _scaling_from_args(args)
    config = CorrelationConfig(args.alpha, scaling, args.n, args.window)
    if args.threads is not None:
        _kernels.set_num_threads(args.threads)
    profile = DensityProfile.for_config(config)
    snap = profile.repulsion_size if args.snap_bins else None
    lo = -args.window if args.symmetric else 0.0
    edges = uniform_edges(lo, args.window, args.bin_width, snap_step=snap)
    try:
        if args.mode == "materialized":
            measure = enumerate_window(config)
            if args.symmetric:
                measure = measure.symmetrized()
            hist = histogram(measure, edges)
        else:
            hist = stream_histogram(config, edges, symmetric=args.symmetric)
    except MemoryCapError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RESOURCE
    lam = config.scaling.declared_lambda(config.alpha)
    lines = [
        f"# paircorr empirical alpha={_fmt(config.alpha)} N={config.N}",
        f"# phi={_fmt(config.phi)} psi={_fmt(config.psi)} lambda={_fmt(lam)}",
        f"# window={_fmt(config.window_A)} atoms={hist.total_pairs_visited}",
        f"# discontinuity_step={_fmt(profile.repulsion_size)}",
        "bin_left,bin_right,empirical_density,limit_density",
    ]
    for left, right, dens in zip(hist.edges[:-1], hist.edges[1:], hist.densities):
        limit = rho_mass(profile, left, right) / (right - left)
        lines.append(",".join(_fmt(v) for v in (left, right, dens, limit)))
    _write_lines(args.out, lines)
    if args.out not in (None, "-"):
        manifest = {
            "command": " ".join(sys.argv),
            "config": config_to_dict(config),
            "started": datetime.datetime.fromtimestamp(started).isoformat(),
            "finished": datetime.datetime.now().isoformat(),
            "outputs": [args.out],
            "atom_count": hist.total_pairs_visited,
            "wall_time_s": time.time() - started,
            "mode": args.mode,
            "backend": _kernels.backend(),
        }
        with open(args.out + ".manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=2)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _bump(A: float) -> TestFunction:
    return TestFunction.bump_symmetric(A)


def _suite_linearization(args) -> List[dict]:
    reports = []
    for alpha in (0.3, 0.5, 0.7):
        for N in (10**3, 10**4, 10**5):
            for frac in (0.5, 0.25):
                beta = (1.0 - alpha) * frac
                config = CorrelationConfig(alpha, PowerBeta(beta), N, 2.0)
                rep = check_linearization_bound(config, _bump(2.0),
                                                require_hypothesis=False)
                reports.append({"alpha": alpha, "N": N, "beta": beta,
                                **rep.to_dict()})
    return reports


def _suite_effective_zero(args) -> List[dict]:
    reports = []
    for alpha in (0.3, 0.5, 0.7):
        for N in (10**3, 10**4, 10**5):
            for frac in (0.5, 0.25):
                beta = (1.0 - alpha) * frac
                config = CorrelationConfig(alpha, PowerBeta(beta), N, 2.0)
                rep = verify_effective_bound(config, _bump(2.0),
                                             require_hypothesis=False)
                reports.append({"alpha": alpha, "N": N, "beta": beta,
                                **rep.to_dict()})
    return reports


def _suite_riemann(args) -> List[dict]:
    rng = np.random.default_rng(args.seed)
    reports = []
    for _ in range(args.cases):
        if rng.random() < 0.5:
            lo = rng.uniform(0.1, 2.0)
            f = TestFunction.bump_shifted(lo, lo + rng.uniform(0.2, 4.0))
        else:
            f = _bump(rng.uniform(0.5, 5.0))
        delta = 10.0 ** rng.uniform(-3, -0.5)
        M = int(rng.integers(1, 2000))
        lhs, rhs = riemann_gap(f, delta, M)
        reports.append({"delta": delta, "M": M, "lhs": lhs, "rhs": rhs,
                        "pass": lhs <= rhs})
    return reports


def _suite_unfolding(args) -> List[dict]:
    rng = np.random.default_rng(args.seed)
    reports = []
    for alpha in (0.3, 0.5, 0.7, 0.9):
        for _ in range(5):
            lo = rng.uniform(0.2, 1.5)
            f = TestFunction.bump_shifted(lo, lo + rng.uniform(0.3, 3.0))
            unfolded, direct, gap = crosscheck_density(alpha, f)
            reports.append({"alpha": alpha, "support": [f.lo, f.hi],
                            "unfolded": unfolded, "direct": direct,
                            "lhs": gap, "rhs": 1e-8, "pass": gap <= 1e-8})
    return reports


def _suite_roots(args) -> List[dict]:
    rng = np.random.default_rng(args.seed)
    reports = []
    for _ in range(args.cases):
        alpha = rng.uniform(0.2, 0.9)
        N = int(rng.integers(10, 10**6))
        t = rng.uniform(0.0, 6.0)
        if rng.random() < 0.5:
            config = CorrelationConfig(alpha, PowerBeta((1.0 - alpha) / 2.0),
                                       N, 8.0)
            x = root_xNt(config, t)
            lo = max(0.0, N * (1.0 - t / (alpha * N**alpha * config.phi)))
            hi = float(N)
        else:
            config = CorrelationConfig(alpha, ScaledPower(rng.uniform(0.5, 2.0)),
                                       N, 8.0)
            x = root_xNt(config, t)
            hi = (t / alpha) * N ** (1.0 - alpha) / config.phi
            lo = hi * max(0.0, 1.0 - t / (alpha * N**alpha * config.phi)) ** (1.0 - alpha)
        ok = lo - 1e-9 * N <= x <= hi + 1e-9 * N
        reports.append({"alpha": alpha, "N": N, "t": t, "root": x,
                        "bracket": [lo, hi], "pass": ok})
    return reports


_SUITES = {
    "linearization": _suite_linearization,
    "effective-zero": _suite_effective_zero,
    "riemann": _suite_riemann,
    "unfolding": _suite_unfolding,
    "roots": _suite_roots,
}


def cmd_verify(args) -> int:
    try:
        reports = _SUITES[args.suite](args)
    except MemoryCapError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RESOURCE
    text = json.dumps(reports, indent=2)
    if args.out in (None, "-"):
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    all_pass = all(r.get("pass", False) for r in reports)
    n_fail = sum(not r.get("pass", False) for r in reports)
    print(f"{args.suite}: {len(reports) - n_fail}/{len(reports)} checks passed",
          file=sys.stderr)
    return EXIT_OK if all_pass else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paircorr",
        description="Pair correlations of n^alpha: empirical measures, the "
                    "limit density, and quantitative bound checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", help="sample the limit density to CSV")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--regime", choices=["zero", "infinite"])
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--scaled", action="store_true",
                   help="add the rescaled-density column")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("empirical", help="histogram the empirical measure")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--phi-expr")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=float, required=True)
    p.add_argument("--bin-width", type=float, default=0.05)
    p.add_argument("--snap-bins", action="store_true")
    p.add_argument("--symmetric", action="store_true",
                   help="histogram both signs on [-A, A]")
    p.add_argument("--mode", choices=["materialized", "streaming"],
                   default="streaming")
    p.add_argument("--threads", type=int)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_empirical)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(_SUITES), required=True)
    p.add_argument("--cases", type=int, default=1000,
                   help="sample count for the randomized suites")
    p.add_argument("--seed", type=int, default=20260823)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PairCorrError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VERIFY_FAILED


if __name__ == "__main__":
    sys.exit(main())
