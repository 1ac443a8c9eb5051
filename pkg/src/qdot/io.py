"""CSV and JSON writers for sweep results."""

from __future__ import annotations

import csv
import json

import numpy as np

from .sweep import SweepResult

REPORT_COLUMNS = (
    "J_rho", "J_u", "N_L", "N_R", "Q_L_out", "Q_R_in", "J_S", "J_S_r", "J_S_f",
    "p00", "p10", "p01", "p11", "residual_firstlaw",
)
FLAG_COLUMNS = ("inverse_particle", "inverse_energy")


def format_float(x: float, precision: int | None = None) -> str:
    """Shortest string that parses back to ``x``, or ``precision`` significant digits."""
    if precision is None:
        return repr(float(x))
    return f"{float(x):.{precision}g}"


def header(result: SweepResult) -> list[str]:
    return [*result.grid.names, *REPORT_COLUMNS, *FLAG_COLUMNS]


def write_csv(result: SweepResult, fh, precision: int | None = None) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header(result))
    for coords, report, flags in result.rows():
        values = dict(zip(("p00", "p10", "p01", "p11"), report.p))
        row = [format_float(coords[n], precision) for n in result.grid.names]
        for col in REPORT_COLUMNS:
            row.append(format_float(values[col] if col in values else getattr(report, col), precision))
        row += [str(int(getattr(flags, f))) for f in FLAG_COLUMNS]
        writer.writerow(row)


def write_polylines(polylines, fh) -> None:
    """JSON array of polylines, each an array of ``[x, y]`` pairs."""
    json.dump([np.asarray(line).tolist() for line in polylines], fh)
    fh.write("\n")


def quadrant_boundaries(result: SweepResult) -> list[list[list[float]]]:
    """The coordinate axes ``x = 0`` and ``y = 0`` clipped to a 2D grid."""
    (x0, x1), (y0, y1) = [(a.values[0], a.values[-1]) for a in result.grid.axes]
    lines = []
    if x0 <= 0 <= x1:
        lines.append([[0.0, y0], [0.0, y1]])
    if y0 <= 0 <= y1:
        lines.append([[x0, 0.0], [x1, 0.0]])
    return lines


def summarize(result: SweepResult) -> dict:
    flags_p = result.field("inverse_particle")
    flags_e = result.field("inverse_energy")
    return {
        "points": len(result.reports),
        "min_J_S": float(result.field("J_S").min()),
        "inverse_particle_points": int(flags_p.sum()),
        "inverse_energy_points": int(flags_e.sum()),
        "overlap_points": int((flags_p & flags_e).sum()),
        "max_residual_charge": float(np.abs(result.field("residual_charge")).max()),
        "max_residual_energy": float(np.abs(result.field("residual_energy")).max()),
        "max_residual_firstlaw": float(np.abs(result.field("residual_firstlaw")).max()),
    }
