from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .contracts import GridSolution

SOLUTION_CSV_HEADER = ("t", "x", "u")


class GridFormatError(ValueError):
    code = "GRID_CSV_INVALID"


def fmt_float(v: float) -> str:
    # 17 significant digits round-trip every float64 exactly.
    return f"{float(v):.17g}"


def serialize_grid_csv(solution: GridSolution) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SOLUTION_CSV_HEADER)
    xs = [fmt_float(x) for x in solution.x_centers]
    for t, row in zip(solution.times, solution.values):
        ts = fmt_float(t)
        for xv, uv in zip(xs, row):
            w.writerow((ts, xv, fmt_float(uv)))
    return buf.getvalue()


def write_grid_csv(*, solution: GridSolution, out_path: Path) -> None:
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(serialize_grid_csv(solution), encoding="utf-8")


def parse_grid_csv(text: str) -> GridSolution:
    """
    Inverse of `serialize_grid_csv`. Every time level must list the same x values
    in the same order.
    """

    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise GridFormatError("empty solution CSV") from None
    if tuple(h.strip() for h in header) != SOLUTION_CSV_HEADER:
        raise GridFormatError(f"expected header {','.join(SOLUTION_CSV_HEADER)}, got {','.join(header)}")

    times: list[float] = []
    columns: dict[float, tuple[list[float], list[float]]] = {}
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise GridFormatError(f"line {line_no}: expected 3 fields, got {len(row)}")
        try:
            t, x, u = (float(v) for v in row)
        except ValueError as e:
            raise GridFormatError(f"line {line_no}: {e}") from None
        if t not in columns:
            if times and t < times[-1]:
                raise GridFormatError(f"line {line_no}: times must be ascending")
            times.append(t)
            columns[t] = ([], [])
        columns[t][0].append(x)
        columns[t][1].append(u)

    if not times:
        raise GridFormatError("solution CSV has no rows")
    x_ref = columns[times[0]][0]
    for t in times[1:]:
        if columns[t][0] != x_ref:
            raise GridFormatError(f"time {t!r} uses a different x grid than time {times[0]!r}")

    return GridSolution(
        x_centers=np.asarray(x_ref, dtype=np.float64),
        times=np.asarray(times, dtype=np.float64),
        values=np.asarray([columns[t][1] for t in times], dtype=np.float64),
    )


def read_grid_csv(path: Path) -> GridSolution:
    return parse_grid_csv(path.read_text(encoding="utf-8"))
