#!/usr/bin/env python3
"""Overlay rescaled limit-density curves from CSVs produced by
`paircorr density --scaled`.

Usage: plot_figure2.py <density.csv> [<density.csv> ...] <out.png>

Each curve is broken at the jump lattice announced in the CSV metadata
(scaled_discontinuity_step) so the jumps are drawn as gaps, not fake
vertical lines.  The t-ranges of all input CSVs must match.  All plotted
numbers come from the CSVs; nothing is recomputed.
"""

from __future__ import annotations

import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from density_csv import CsvFormatError, column, read_csv, split_at_multiples


def build_figure(datasets):
    fig, ax = plt.subplots(figsize=(8, 5))
    for i, (meta, header, rows) in enumerate(datasets):
        ts = column(header, rows, "t")
        scaled = column(header, rows, "rho_scaled")
        step = float(meta.get("scaled_discontinuity_step", "0"))
        label = f"alpha={meta.get('alpha', '?')}"
        first = True
        for seg_x, seg_y in split_at_multiples(ts, scaled, step):
            ax.plot(seg_x, seg_y, linewidth=1.2, color=f"C{i}",
                    label=label if first else None)
            first = False
    ax.set_xlabel("t")
    ax.set_ylabel("rescaled density")
    ax.legend()
    return fig, ax


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) < 2:
        print(__doc__.strip().splitlines()[3], file=sys.stderr)
        return 2
    csv_paths, out_path = argv[:-1], argv[-1]
    datasets = []
    try:
        for path in csv_paths:
            meta, header, rows = read_csv(path)
            column(header, rows, "rho_scaled")
            datasets.append((meta, header, rows))
        first_ts = column(datasets[0][1], datasets[0][2], "t")
        for meta, header, rows in datasets[1:]:
            if column(header, rows, "t") != first_ts:
                raise CsvFormatError("t-ranges of the input CSVs differ")
        fig, _ = build_figure(datasets)
    except (CsvFormatError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
