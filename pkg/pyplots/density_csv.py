"""Shared CSV reader for the plotting scripts.

The CSVs carry '#'-prefixed metadata lines with key=value tokens, then a
header row, then comma-separated float rows.  Every number the plots show
comes straight out of these files; the scripts do no recomputation.
"""

from __future__ import annotations

from typing import Dict, List, Tuple


class CsvFormatError(Exception):
    pass


def read_csv(path: str) -> Tuple[Dict[str, str], List[str], List[List[float]]]:
    meta: Dict[str, str] = {}
    header: List[str] = []
    rows: List[List[float]] = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                for token in line[1:].split():
                    if "=" in token:
                        key, value = token.split("=", 1)
                        meta[key] = value
            elif not header:
                header = line.split(",")
            else:
                try:
                    rows.append([float(x) for x in line.split(",")])
                except ValueError as err:
                    raise CsvFormatError(f"{path}: bad row {line!r}") from err
    if not header:
        raise CsvFormatError(f"{path}: no header row found")
    for row in rows:
        if len(row) != len(header):
            raise CsvFormatError(f"{path}: row width does not match header")
    return meta, header, rows


def column(header: List[str], rows: List[List[float]], name: str) -> List[float]:
    try:
        idx = header.index(name)
    except ValueError:
        raise CsvFormatError(f"missing column {name!r} (have {header})")
    return [row[idx] for row in rows]


def split_at_multiples(xs: List[float], ys: List[float],
                       step: float) -> List[Tuple[List[float], List[float]]]:
    """Break a polyline into pieces so no piece crosses a multiple of step."""
    if step <= 0 or not xs:
        return [(xs, ys)] if xs else []
    segments = []
    seg_x: List[float] = []
    seg_y: List[float] = []
    next_break = step
    eps = 1e-12 * step
    for x, y in zip(xs, ys):
        while x >= next_break - eps:
            if seg_x:
                segments.append((seg_x, seg_y))
                seg_x, seg_y = [], []
            next_break += step
        seg_x.append(x)
        seg_y.append(y)
    if seg_x:
        segments.append((seg_x, seg_y))
    return segments
