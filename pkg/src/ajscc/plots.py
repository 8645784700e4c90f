"""Figure rendering for the report path: every plot goes straight to a file."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .circuit import SurfaceGrid
from .experiments import SweepRecord, TransferPoint


def save_surface_figure(surface: SurfaceGrid, path, title: str | None = None) -> Path:
    """Heatmap of a stage output over the raw sensor plane."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    mesh = ax.pcolormesh(surface.v_t, surface.v_h, surface.output.T, shading="nearest")
    fig.colorbar(mesh, ax=ax, label="stage output (V)")
    ax.set_xlabel("$V_T$ (V)")
    ax.set_ylabel("$V_H$ (V)")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_sweep_figure(records: list[SweepRecord], path) -> Path:
    """SDR vs CSNR, one line per sensor; non-finite points are dropped."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for sensor_id in sorted({r.sensor_id for r in records}):
        pts = [
            (r.csnr_db, r.sdr_db)
            for r in records
            if r.sensor_id == sensor_id and np.isfinite(r.csnr_db) and np.isfinite(r.sdr_db)
        ]
        if pts:
            xs, ys = zip(*pts)
            ax.plot(xs, ys, marker="o", label=f"sensor {sensor_id}")
    ax.set_xlabel("CSNR (dB)")
    ax.set_ylabel("SDR (dB)")
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_transfer_figure(points: list[TransferPoint], path, x_label: str) -> Path:
    """Encoder output and decoded estimates against the swept input voltage."""
    path = Path(path)
    xs = [p.x for p in points]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(xs, [p.s_volts for p in points], label="encoded output (V)")
    ax.plot(xs, [p.v_t_hat for p in points], "--", label=r"$\hat V_T$ (V)")
    ax.plot(xs, [p.v_h_hat for p in points], ":", label=r"$\hat V_H$ (V)")
    ax.set_xlabel(x_label)
    ax.set_ylabel("volts")
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
