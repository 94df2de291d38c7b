import json

import numpy as np
import pytest

SCAN_HEADER = "e_field,f,p,norm,error"
TRACE_HEADER = "t,population,phase,fraction,norm"


def write_scan(path, n=40, center=0.117):
    e = np.linspace(0.110, 0.125, n)
    f = 0.25 * np.exp(-((e - center) / 0.001) ** 2)
    lines = [SCAN_HEADER]
    for ei, fi in zip(e, f):
        lines.append(f"{ei:.8f},{fi:.6f},{1 - 2 * fi:.6f},0.99,")
    path.write_text("\n".join(lines) + "\n")
    return path


def write_trace(path, n=60):
    t = np.linspace(0.01, 2.42, n)
    p = 0.5 + 0.5 * np.cos(2 * np.pi * t / 1.2)
    lines = [TRACE_HEADER]
    for ti, pi in zip(t, p):
        phase = "" if pi < 1e-3 else f"{0.1 * ti:.6f}"
        lines.append(f"{ti:.6f},{pi:.6f},{phase},{(1 - pi) / 3:.6f},0.99")
    path.write_text("\n".join(lines) + "\n")
    return path


def write_truth_table(path):
    table = np.full((8, 8), 0.001)
    perm = [0, 1, 2, 3, 4, 7, 6, 5]
    for i, k in enumerate(perm):
        table[i, k] = 0.95
    path.write_text(json.dumps({"truth_table": table.tolist()}))
    return path


@pytest.fixture
def scan_csv(tmp_path):
    return write_scan(tmp_path / "scan.csv")


@pytest.fixture
def trace_csv(tmp_path):
    return write_trace(tmp_path / "trace.csv")


@pytest.fixture
def truth_json(tmp_path):
    return write_truth_table(tmp_path / "truth_table.json")
