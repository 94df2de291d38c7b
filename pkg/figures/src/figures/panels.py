"""The four figure layouts: field scans, the Rabi-like trace, the
population/phase panels per excitation pattern, and the truth-table bars."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .render import new_figure, save
from .schema import load_scan_csv, load_trace_csv, load_truth_table_json

PATTERN_TITLES = {
    "r_rp_rpp": "|r r' r''>",
    "r_g_rpp": "|r g r''>",
    "g_rp_rpp": "|g r' r''>",
    "r_rp_g": "|r r' g>",
}


def render_scan_figure(out: str | Path, two_atom: str | Path,
                       three_atom_b0: str | Path, three_atom_b: str | Path) -> Path:
    """Three stacked panels of transferred fraction vs dc electric field."""
    panels = [
        ("two atoms, B = 0", load_scan_csv(two_atom)),
        ("three atoms, B = 0", load_scan_csv(three_atom_b0)),
        ("three atoms, B > 0", load_scan_csv(three_atom_b)),
    ]
    fig = new_figure(4.2, 6.0)
    axes = fig.subplots(3, 1, sharex=True)
    for ax, (title, data) in zip(axes, panels):
        ax.plot(data["e_field"], data["f"], color="tab:blue")
        ax.set_ylabel("fraction f")
        ax.set_title(title, fontsize=9)
        ax.set_ylim(bottom=0.0)
    axes[-1].set_xlabel("electric field (V/cm)")
    fig.tight_layout()
    return save(fig, out)


def render_trace_figure(out: str | Path, trace: str | Path) -> Path:
    """Population of the initial collective state vs interaction time."""
    data = load_trace_csv(trace)
    fig = new_figure(4.2, 2.8)
    ax = fig.subplots()
    ax.plot(data["t"], data["population"], color="tab:blue")
    ax.set_xlabel("time (us)")
    ax.set_ylabel("population p")
    ax.set_ylim(0.0, 1.05)
    fig.tight_layout()
    return save(fig, out)


def render_phase_figure(out: str | Path, pattern_traces: dict[str, str | Path]) -> Path:
    """One row per excitation pattern: population (left), phase (right)."""
    if not pattern_traces:
        raise ValueError("at least one pattern trace is required")
    rows = list(pattern_traces.items())
    fig = new_figure(5.6, 1.9 * len(rows))
    axes = fig.subplots(len(rows), 2, squeeze=False)
    for (pattern, path), (ax_p, ax_ph) in zip(rows, axes):
        data = load_trace_csv(path)
        title = PATTERN_TITLES.get(pattern, pattern)
        ax_p.plot(data["t"], data["population"], color="tab:blue")
        ax_p.set_ylabel("population")
        ax_p.set_ylim(0.0, 1.05)
        ax_p.set_title(title, fontsize=8, loc="left")
        ax_ph.plot(data["t"], data["phase"] / math.pi, color="tab:red")
        ax_ph.set_ylabel("phase / pi")
        ax_ph.set_title(title, fontsize=8, loc="left")
    for ax in axes[-1]:
        ax.set_xlabel("time (us)")
    fig.tight_layout()
    return save(fig, out)


def render_truth_table_figure(out: str | Path, truth_table: str | Path) -> Path:
    """8x8 3-D bar chart of output probabilities per computational input."""
    table = load_truth_table_json(truth_table)
    labels = [format(i, "03b") for i in range(8)]
    fig = new_figure(5.0, 4.2)
    ax = fig.add_subplot(projection="3d")
    xs, ys = np.meshgrid(np.arange(8), np.arange(8), indexing="ij")
    xs, ys = xs.ravel(), ys.ravel()
    heights = table.ravel()
    ax.bar3d(xs - 0.4, ys - 0.4, np.zeros_like(heights), 0.8, 0.8, heights,
             color="tab:blue", shade=True)
    ax.set_xticks(range(8), labels, fontsize=7)
    ax.set_yticks(range(8), labels, fontsize=7)
    ax.set_zlim(0.0, 1.0)
    ax.set_xlabel("input")
    ax.set_ylabel("output")
    ax.set_zlabel("probability")
    # tight_layout cannot handle 3-D axes decorations; margins are fine as is
    return save(fig, out)
