"""Loaders for the simulation CLI's file formats.

Every loader validates the documented columns up front and fails loudly,
naming the first offending column, rather than rendering a blank figure.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

SCAN_COLUMNS = ("e_field", "f", "p", "norm", "error")
TRACE_COLUMNS = ("t", "population", "phase", "fraction", "norm")


class SchemaError(Exception):
    """Input file does not match the documented CLI output schema."""


def _read_rows(path: str | Path, required: tuple[str, ...]) -> list[dict]:
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in required:
            if column not in header:
                raise SchemaError(f"{path}: missing required column '{column}'")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def _column(rows: list[dict], name: str, path, allow_blank: bool = False) -> np.ndarray:
    out = np.empty(len(rows))
    for i, row in enumerate(rows):
        raw = (row.get(name) or "").strip()
        if raw == "":
            if not allow_blank:
                raise SchemaError(f"{path}: empty value in column '{name}' (row {i + 1})")
            out[i] = math.nan
            continue
        try:
            out[i] = float(raw)
        except ValueError as exc:
            raise SchemaError(f"{path}: non-numeric value {raw!r} in column '{name}'") from exc
    return out


def load_scan_csv(path: str | Path) -> dict[str, np.ndarray]:
    """Field-scan artifact: e_field, f, p, norm (+ per-point error text)."""
    rows = _read_rows(path, SCAN_COLUMNS)
    ok = [r for r in rows if not (r.get("error") or "").strip()]
    if not ok:
        raise SchemaError(f"{path}: every scan point failed")
    return {
        "e_field": _column(ok, "e_field", path),
        "f": _column(ok, "f", path),
        "p": _column(ok, "p", path),
        "norm": _column(ok, "norm", path),
    }


def load_trace_csv(path: str | Path) -> dict[str, np.ndarray]:
    """Time-trace artifact: t, population, phase, fraction, norm.

    The phase column may be blank where the amplitude is too small for a
    well-defined argument; those points load as NaN.
    """
    rows = _read_rows(path, TRACE_COLUMNS)
    return {
        "t": _column(rows, "t", path),
        "population": _column(rows, "population", path),
        "phase": _column(rows, "phase", path, allow_blank=True),
        "fraction": _column(rows, "fraction", path),
        "norm": _column(rows, "norm", path),
    }


def load_truth_table_json(path: str | Path) -> np.ndarray:
    """Truth-table artifact: 8x8 probability matrix under 'truth_table'."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON: {exc}") from exc
    if "truth_table" not in doc:
        raise SchemaError(f"{path}: missing required key 'truth_table'")
    table = np.asarray(doc["truth_table"], dtype=float)
    if table.shape != (8, 8):
        raise SchemaError(f"{path}: truth_table must be 8x8, got {table.shape}")
    if np.any(table < -1e-12) or np.any(table > 1 + 1e-12):
        raise SchemaError(f"{path}: truth_table entries outside [0, 1]")
    return table
