#!/usr/bin/env python3
"""
print_solution.py

Purpose
- Look at a `t,x,u` solution CSV (FV reference, network samples or exact oracle)
  in the terminal without a plotting stack.
- Prints a short summary (cells, dx, recorded times, value range) and an ASCII
  profile u(x) at one recorded time.

Usage examples
  python3 tools/print_solution.py runs/burgers-shock/fv_lagrangian_eulerian.csv
  python3 tools/print_solution.py runs/burgers-shock/pinn.csv --t 8 --width 100
  python3 tools/print_solution.py a.csv --t 4 --overlay b.csv

Options
  --t 4.0          Recorded time to draw (default: last recorded time)
  --width 100      ASCII canvas width
  --height 24      ASCII canvas height
  --overlay PATH   Second solution drawn with 'o' on the same axes
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from fv_solver import GridFormatError, GridSolution, read_grid_csv


# ----------------------------
# Rendering
# ----------------------------

def _columns(solution: GridSolution, t: float, width: int) -> tuple[np.ndarray, np.ndarray]:
    xs = np.linspace(solution.x_centers[0], solution.x_centers[-1], width)
    return xs, np.interp(xs, solution.x_centers, solution.at_time(t))


def render_profile(
    solution: GridSolution,
    t: float,
    *,
    width: int = 100,
    height: int = 24,
    overlay: GridSolution | None = None,
) -> list[str]:
    """Rows of an ASCII plot, top row = largest u. '*' marks `solution`, 'o' the overlay."""

    if width < 10 or height < 4:
        raise ValueError("canvas must be at least 10x4")
    xs, u = _columns(solution, t, width)
    series = [("*", u)]
    if overlay is not None:
        series.append(("o", _columns(overlay, t, width)[1]))

    lo = min(float(s.min()) for _, s in series)
    hi = max(float(s.max()) for _, s in series)
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5

    canvas = [[" "] * width for _ in range(height)]
    for ch, values in series:
        rows = np.rint((hi - values) / (hi - lo) * (height - 1)).astype(int)
        for col, row in enumerate(rows):
            cell = canvas[row][col]
            canvas[row][col] = "#" if cell not in (" ", ch) else ch

    label_w = 10
    out = []
    for r, row in enumerate(canvas):
        level = hi - (hi - lo) * r / (height - 1)
        label = f"{level:>{label_w - 1}.3f}|" if r in (0, height // 2, height - 1) else " " * (label_w - 1) + "|"
        out.append(label + "".join(row))
    out.append(" " * (label_w - 1) + "+" + "-" * width)
    left, right = f"{xs[0]:.2f}", f"{xs[-1]:.2f}"
    out.append(" " * label_w + left + " " * max(1, width - len(left) - len(right)) + right)
    return out


# ----------------------------
# Printing / summaries
# ----------------------------

def summarize(solution: GridSolution, path: Path) -> list[str]:
    times = ", ".join(f"{t:g}" for t in solution.times)
    return [
        f"Input: {path}",
        f"Cells: {solution.x_centers.size}  dx: {solution.dx:.6g}  x: [{solution.x_centers[0]:g}, {solution.x_centers[-1]:g}]",
        f"Times: {times}",
        f"u range: [{solution.values.min():.6g}, {solution.values.max():.6g}]",
    ]


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description="Terminal profile of a t,x,u solution CSV.")
    ap.add_argument("input", type=Path, help="Solution CSV (t,x,u).")
    ap.add_argument("--t", type=float, default=None, help="Recorded time to draw (default: last).")
    ap.add_argument("--width", type=int, default=100, help="ASCII canvas width.")
    ap.add_argument("--height", type=int, default=24, help="ASCII canvas height.")
    ap.add_argument("--overlay", type=Path, default=None, help="Second solution CSV drawn with 'o'.")
    args = ap.parse_args(argv)

    try:
        solution = read_grid_csv(args.input)
        overlay = read_grid_csv(args.overlay) if args.overlay is not None else None
    except (OSError, GridFormatError) as e:
        print(f"Cannot read solution: {e}")
        return 2

    t = float(solution.times[-1]) if args.t is None else args.t
    if solution.time_index(t) is None or (overlay is not None and overlay.time_index(t) is None):
        print(f"Time {t:g} is not recorded. Recorded: {', '.join(f'{v:g}' for v in solution.times)}")
        return 2

    for line in summarize(solution, args.input):
        print(line)
    print(f"Profile at t={t:g}:")
    for line in render_profile(solution, t, width=args.width, height=args.height, overlay=overlay):
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
