"""Render the scan and dynamics CSVs into publication-style figures.

Two figure kinds:
  w_heatmap        heatmap of -tau_abc over the (theta, phi) family grid
  dynamics_series  EOF and tau_abc time series of a damping run

Input CSVs are read-only; the output image is written atomically (temp file
plus rename), so a failed run leaves no partial file.
"""

from __future__ import annotations

import csv
import os
import tempfile
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

W_HEATMAP_COLUMNS = ("theta", "phi", "tau_abc")
DYNAMICS_COLUMNS = ("t", "eof_ab", "tau_abc")

KINDS = ("w_heatmap", "dynamics_series")


class SchemaError(ValueError):
    """The CSV does not match the declared figure kind's schema."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    kind: str
    output_image: str
    title: str | None = None
    axis_labels: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}, expected one of {KINDS}")


def _read_columns(path: str, required) -> dict:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected columns {list(required)}")
        missing = [name for name in required if name not in header]
        if missing:
            raise SchemaError(
                f"{path}: missing column(s) {missing}; header has {header}"
            )
        idx = {name: header.index(name) for name in required}
        data = {name: [] for name in required}
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            for name in required:
                try:
                    data[name].append(float(row[idx[name]]))
                except (ValueError, IndexError):
                    raise SchemaError(f"{path}: bad value in column {name}, line {line_no}")
    if not data[required[0]]:
        raise SchemaError(f"{path}: no data rows")
    return {name: np.array(vals) for name, vals in data.items()}


def load_w_grid(path: str):
    """Family-scan CSV -> (thetas, phis, minus_tau matrix [theta x phi])."""
    cols = _read_columns(path, W_HEATMAP_COLUMNS)
    thetas = np.unique(cols["theta"])
    phis = np.unique(cols["phi"])
    if thetas.size * phis.size != cols["tau_abc"].size:
        raise SchemaError(
            f"{path}: rows do not form a complete theta x phi grid "
            f"({thetas.size} x {phis.size} vs {cols['tau_abc'].size} rows)"
        )
    grid = np.full((thetas.size, phis.size), np.nan)
    t_index = {v: i for i, v in enumerate(thetas)}
    p_index = {v: i for i, v in enumerate(phis)}
    for t, p, tau in zip(cols["theta"], cols["phi"], cols["tau_abc"]):
        grid[t_index[t], p_index[p]] = -tau
    if np.isnan(grid).any():
        raise SchemaError(f"{path}: grid has missing (theta, phi) combinations")
    return thetas, phis, grid


def load_dynamics_series(path: str):
    """Dynamics CSV -> (t, eof_ab, tau_abc), time-ordered."""
    cols = _read_columns(path, DYNAMICS_COLUMNS)
    order = np.argsort(cols["t"])
    return cols["t"][order], cols["eof_ab"][order], cols["tau_abc"][order]


def _render_w_heatmap(spec: FigureSpec, ax) -> None:
    thetas, phis, grid = load_w_grid(spec.input_csv)
    mesh = ax.pcolormesh(
        phis, thetas, grid,
        shading="nearest", cmap="viridis",
        vmin=0.0, vmax=float(grid.max()),
    )
    ax.set_xlabel(spec.axis_labels.get("x", r"$\phi$ (rad)"))
    ax.set_ylabel(spec.axis_labels.get("y", r"$\theta$ (rad)"))
    ax.set_title(spec.title or r"$-\tau_{ABC}$ over the single-excitation family")
    plt.colorbar(mesh, ax=ax, label=r"$-\tau_{ABC}$ (bits)")


def _render_dynamics_series(spec: FigureSpec, ax) -> None:
    t, eof, tau = load_dynamics_series(spec.input_csv)
    ax.plot(t, eof, label=r"$E_{AB}$", lw=1.5)
    ax.plot(t, tau, label=r"$\tau_{ABC}$", lw=1.5)
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.set_xlabel(spec.axis_labels.get("x", r"$\gamma_0 t$"))
    ax.set_ylabel(spec.axis_labels.get("y", "bits"))
    ax.set_title(spec.title or "Entanglement and tangle under amplitude damping")
    ax.legend()


def render(spec: FigureSpec) -> str:
    """Render the figure and return the written path.

    Raises SchemaError on malformed input before any output is created.
    """
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    try:
        if spec.kind == "w_heatmap":
            _render_w_heatmap(spec, ax)
        else:
            _render_dynamics_series(spec, ax)
        fig.tight_layout()
        out = spec.output_image
        root, ext = os.path.splitext(out)
        if not ext:
            out = root + ".svg"
        fd, tmp = tempfile.mkstemp(
            suffix=os.path.splitext(out)[1],
            dir=os.path.dirname(os.path.abspath(out)) or ".",
        )
        os.close(fd)
        try:
            fig.savefig(tmp, format=os.path.splitext(out)[1].lstrip("."))
            os.replace(tmp, out)
        except Exception:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return out
    finally:
        plt.close(fig)
