#!/usr/bin/env python3
"""Render the empirical-histogram-vs-limit-density figure from a CSV
produced by `paircorr empirical`.

Usage: plot_figure1.py <empirical.csv> <out.png>

Bars show the empirical bin densities (zero-mass bins are skipped so the
level-repulsion gap stays visibly empty); the red curve shows the limit
density read from the limit_density column, broken at its jump points so
no fake vertical segments are drawn.  All plotted numbers come from the
CSV; nothing is recomputed.
"""

from __future__ import annotations

import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from density_csv import CsvFormatError, column, read_csv, split_at_multiples


def build_figure(meta, header, rows):
    fig, ax = plt.subplots(figsize=(8, 5))
    if not rows:
        return fig, ax
    left = column(header, rows, "bin_left")
    right = column(header, rows, "bin_right")
    empirical = column(header, rows, "empirical_density")
    limit = column(header, rows, "limit_density")

    for lo, hi, dens in zip(left, right, empirical):
        if dens > 0.0:
            ax.bar(lo, dens, width=hi - lo, align="edge",
                   color="tab:blue", edgecolor="none", alpha=0.7)

    mid = [(lo + hi) / 2.0 for lo, hi in zip(left, right)]
    step = float(meta.get("discontinuity_step", "0"))
    for seg_x, seg_y in split_at_multiples(mid, limit, step):
        ax.plot(seg_x, seg_y, color="tab:red", linewidth=1.5)

    ax.set_xlabel("t")
    ax.set_ylabel("density")
    alpha = meta.get("alpha")
    n = meta.get("N")
    if alpha and n:
        ax.set_title(f"pair correlation, alpha={alpha}, N={n}")
    return fig, ax


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print(__doc__.strip().splitlines()[3], file=sys.stderr)
        return 2
    csv_path, out_path = argv
    try:
        meta, header, rows = read_csv(csv_path)
        fig, _ = build_figure(meta, header, rows)
    except (CsvFormatError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
