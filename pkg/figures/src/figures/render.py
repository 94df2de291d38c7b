"""Deterministic matplotlib setup shared by all figure scripts.

Rendering must be pure: the same inputs produce byte-identical files, so
fonts, sizes and the SVG hash salt are pinned and date metadata is
stripped on save.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

RC = {
    "figure.dpi": 150,
    "savefig.dpi": 150,
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.2,
    "svg.hashsalt": "forstergate-figures",
    "svg.fonttype": "path",
}


def new_figure(width: float, height: float):
    plt.rcParams.update(RC)
    return plt.figure(figsize=(width, height))


def save(fig, out_path: str | Path) -> Path:
    """Write PNG or SVG without volatile metadata and close the figure."""
    out_path = Path(out_path)
    suffix = out_path.suffix.lower()
    if suffix not in (".png", ".svg"):
        raise ValueError(f"unsupported output format {suffix!r}; use .png or .svg")
    metadata = {"Date": None} if suffix == ".svg" else {"Software": None}
    fig.savefig(out_path, metadata=metadata)
    plt.close(fig)
    return out_path
