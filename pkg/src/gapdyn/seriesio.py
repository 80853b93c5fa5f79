"""CSV persistence for trajectories and observed series.

Trajectories are written with full float round-trip precision (%.17g) so a
written file reloads to bit-identical values.  Readers only require the first
two columns (`t,y`); anything after them is ignored, which lets estimation
consume both bare observation files and the four-column trajectory format.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

from .errors import BadNumber, InvariantViolation, MissingHeader, NonUniformSpacing
from .estimation import ObservedSeries
from .integrate import Trajectory

# Successive time deltas may differ from the first delta by at most this
# relative amount before the grid is rejected as non-uniform.
_SPACING_REL_TOL = 1e-9

_TRAJECTORY_HEADER = ("t", "y", "ydot", "eps")


def write_trajectory_csv(path: str | Path, traj: Trajectory) -> None:
    """Write `t,y,ydot,eps` rows at full round-trip precision."""
    times = traj.grid.times()
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(_TRAJECTORY_HEADER) + "\n")
        for i in range(traj.grid.n_steps):
            fh.write(
                "%.17g,%.17g,%.17g,%.17g\n"
                % (times[i], traj.y[i], traj.ydot[i], traj.forcing[i])
            )


def read_series_csv(path: str | Path) -> ObservedSeries:
    """Load an observed series from a CSV whose header starts with `t,y`.

    The time column must be uniformly spaced; every value must be finite.
    Files with fewer than two data rows cannot define a spacing and are
    rejected.
    """
    with open(path, "r", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise MissingHeader(f"{path}: empty file")
        normalized = [cell.strip().lower() for cell in header]
        if normalized[:2] != ["t", "y"]:
            raise MissingHeader(
                f"{path}: header must start with 't,y', got {','.join(header)!r}"
            )
        times: list[float] = []
        values: list[float] = []
        rownums: list[int] = []
        for rownum, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) < 2:
                raise BadNumber(f"{path}: row {rownum}: expected at least 2 columns")
            times.append(_parse_cell(path, rownum, "t", row[0]))
            values.append(_parse_cell(path, rownum, "y", row[1]))
            rownums.append(rownum)

    if len(values) < 2:
        raise InvariantViolation(f"{path}: need at least 2 data rows, got {len(values)}")

    dt = times[1] - times[0]
    if dt <= 0.0:
        raise NonUniformSpacing(f"{path}: time column must be strictly increasing")
    for i in range(2, len(times)):
        step = times[i] - times[i - 1]
        if abs(step - dt) > _SPACING_REL_TOL * max(abs(step), abs(dt)):
            raise NonUniformSpacing(
                f"{path}: row {rownums[i]}: spacing {step!r} differs from {dt!r}"
            )
    return ObservedSeries(dt=dt, values=values)


def _parse_cell(path: str | Path, rownum: int, column: str, cell: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise BadNumber(
            f"{path}: row {rownum}: column {column!r} is not a number: {cell.strip()!r}"
        ) from None
    if not math.isfinite(value):
        raise BadNumber(f"{path}: row {rownum}: column {column!r} is not finite")
    return value
