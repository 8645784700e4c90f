"""Delimited-text serialization of experiment results.

Column layouts are a stable contract: volts and dB print with 6 decimal
places, MSEs in scientific notation, '.' decimal separator, no grouping,
so repeated runs with the same seed produce byte-identical files. Files
are written atomically (temp file in the target directory, then rename).
"""

from __future__ import annotations

import os
from pathlib import Path

from .circuit import SurfaceGrid
from .experiments import SweepRecord, TransferPoint
from .power_cost import BomReport

SWEEP_HEADER = "sensor_id,csnr_db,sdr_db,mse_t_norm,mse_h_norm,trials"
SURFACE_HEADER = "v_t,v_h,output_volts"


def atomic_write_text(path, text: str) -> Path:
    """Write text to path via a temp file and rename; returns the Path."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)
    return path


def sweep_csv(records: list[SweepRecord]) -> str:
    lines = [SWEEP_HEADER]
    for r in records:
        lines.append(
            f"{r.sensor_id},{r.csnr_db:.6f},{r.sdr_db:.6f},"
            f"{r.mse_t_norm:.6e},{r.mse_h_norm:.6e},{r.trials}"
        )
    return "\n".join(lines) + "\n"


def surface_csv(surface: SurfaceGrid) -> str:
    lines = [SURFACE_HEADER]
    for i, vt in enumerate(surface.v_t):
        for j, vh in enumerate(surface.v_h):
            lines.append(f"{vt:.6f},{vh:.6f},{surface.output[i, j]:.6f}")
    return "\n".join(lines) + "\n"


def transfer_csv(points: list[TransferPoint], x_name: str) -> str:
    lines = [f"{x_name},s_volts,v_t_hat,v_h_hat"]
    for p in points:
        lines.append(f"{p.x:.6f},{p.s_volts:.6f},{p.v_t_hat:.6f},{p.v_h_hat:.6f}")
    return "\n".join(lines) + "\n"


def bom_csv(report: BomReport) -> str:
    lines = ["name,count,unit_power_w,unit_cost,power_w,cost"]
    for c in report.components:
        lines.append(
            f"{c.name},{c.count},{c.unit_power:.6e},{c.unit_cost:.6f},"
            f"{c.power:.6e},{c.cost:.6f}"
        )
    lines.append(f"TOTAL,,,,{report.total_power:.6e},{report.total_cost:.6f}")
    return "\n".join(lines) + "\n"


def bom_text(report: BomReport) -> str:
    """Aligned human-readable breakdown with totals."""
    rows = [("component", "count", "unit_power_w", "power_w", "unit_cost", "cost")]
    for c in report.components:
        rows.append(
            (c.name, str(c.count), f"{c.unit_power:.6e}", f"{c.power:.6e}",
             f"{c.unit_cost:.2f}", f"{c.cost:.2f}")
        )
    rows.append(("TOTAL", "", "", f"{report.total_power:.6e}", "", f"{report.total_cost:.2f}"))
    widths = [max(len(row[i]) for row in rows) for i in range(6)]
    out = []
    for row in rows:
        out.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(out) + "\n"
