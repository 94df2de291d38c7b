"""Command-line front end: field scans, population/phase traces, truth
table, average fidelity, operating-point optimization and basis dumps,
each writing a CSV or JSON artifact next to a manifest that records the
full configuration and the atomic-data checksum.

Units at the interface are V/cm, G, um and us throughout.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .atom import AtomModel, AtomicDataError
from .basis import CollectiveState, FieldConfiguration, build_basis
from .dynamics import compute_trace, field_scan
from .gate import (
    DEFAULT_CUTOFF_MHZ,
    DEFAULT_MANIFOLDS,
    RYDBERG_TARGETS,
    GateSimulator,
    OperatingPoint,
    OptimizationError,
    optimize_operating_point,
)
from .hamiltonian import Geometry, assemble
from .stark import StarkConvergenceError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONCONVERGENCE = 3
EXIT_IO = 4

DATA_PATH_ENV = "FORSTERGATE_DATA"

# excited-atom selections for the trace/phases subcommands
PATTERNS = {
    "r_rp_rpp": (0, 1, 2),
    "r_g_rpp": (0, 2),
    "g_rp_rpp": (1, 2),
    "r_rp_g": (0, 1),
}


class ConfigError(Exception):
    pass


def _load_model(args) -> AtomModel:
    path = args.data or os.environ.get(DATA_PATH_ENV)
    return AtomModel.load(path)


def _out_path(args, name: str) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    if path.exists() and not args.force:
        raise FileExistsError(f"{path} exists; pass --force to overwrite")
    return path


def _manifest(args, model: AtomModel, command: str, extra: dict | None = None) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func",)}
    man = {
        "artifact": "forstergate",
        "version": __version__,
        "command": command,
        "config": cfg,
        "data_sha256": model.data_checksum,
        "deterministic": True,
    }
    if extra:
        man.update(extra)
    return man


def _write_manifest(path: Path, manifest: dict) -> None:
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def _write_csv(path: Path, columns: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        for row in rows:
            writer.writerow({c: row.get(c, "") for c in columns})


def _pattern_basis(pattern: str, spacing: float, model: AtomModel):
    excited = PATTERNS[pattern]
    atoms = tuple(RYDBERG_TARGETS[i] for i in excited)
    basis = build_basis(CollectiveState(atoms=atoms), DEFAULT_MANIFOLDS, DEFAULT_CUTOFF_MHZ, model)
    eff_spacing = spacing * (2 if excited == (0, 2) else 1)
    return basis, eff_spacing


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_basis(args) -> int:
    model = _load_model(args)
    basis, _ = _pattern_basis(args.pattern, args.R, model)
    rows = []
    for i, state in enumerate(basis.states):
        row = {"index": i, "label": state.label(), "twice_M": state.twice_m,
               "defect0_mhz": f"{basis.defects0[i]:.6f}",
               "is_initial": int(i == basis.initial_index)}
        for k, atom in enumerate(state.atoms, start=1):
            row[f"n{k}"], row[f"l{k}"] = atom.n, atom.l
            row[f"twice_j{k}"], row[f"twice_mj{k}"] = atom.twice_j, atom.twice_mj
        rows.append(row)
    columns = list(rows[0].keys())
    path = _out_path(args, "basis.csv")
    _write_csv(path, columns, rows)
    _write_manifest(path.with_suffix(".json"),
                    _manifest(args, model, "basis",
                              {"n_states": len(basis), "basis_hash": basis.content_hash(),
                               "columns": columns}))
    print(f"wrote {path} ({len(basis)} states)")
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.e_max < args.e_min:
        raise ConfigError("--E-max must be >= --E-min")
    model = _load_model(args)
    pattern = "r_rp_rpp" if args.mode == "three-atom" else "r_g_rpp"
    basis, spacing = _pattern_basis(pattern, args.R, model)
    n = 1 if args.e_max == args.e_min else args.points
    e_values = np.linspace(args.e_min, args.e_max, n)
    fields = FieldConfiguration(b_field=args.B, spacing=spacing, tau=args.tau)
    rows = field_scan(e_values, fields, basis, model, workers=args.workers)
    columns = ["e_field", "f", "p", "norm", "error"]
    path = _out_path(args, f"scan_{args.mode}.csv")
    _write_csv(path, columns, [{**r, "e_field": f"{r['e_field']:.8f}"} for r in rows])
    _write_manifest(path.with_suffix(".json"),
                    _manifest(args, model, "scan",
                              {"n_states": len(basis), "basis_hash": basis.content_hash(),
                               "columns": columns}))
    failures = sum(1 for r in rows if r["error"])
    print(f"wrote {path} ({len(rows)} points, {failures} failed)")
    return EXIT_OK


def _trace_rows(args, model: AtomModel, pattern: str) -> tuple[list[dict], int, str]:
    basis, spacing = _pattern_basis(pattern, args.R, model)
    fields = FieldConfiguration(e_field=args.E, b_field=args.B, spacing=spacing, tau=args.tau)
    h = assemble(basis, Geometry(spacing), fields, model, with_decay=not args.no_decay)
    if args.tau <= 0:
        return [], len(basis), basis.content_hash()
    times = np.linspace(args.tau / args.points, args.tau, args.points)
    tr = compute_trace(h, times)
    rows = [
        {"t": f"{tr.times[i]:.6f}", "population": f"{tr.population[i]:.10f}",
         "phase": "" if math.isnan(tr.phase[i]) else f"{tr.phase[i]:.10f}",
         "fraction": f"{tr.fraction[i]:.10f}", "norm": f"{tr.norm[i]:.10f}"}
        for i in range(len(times))
    ]
    return rows, len(basis), basis.content_hash()


def cmd_trace(args) -> int:
    model = _load_model(args)
    rows, n_states, basis_hash = _trace_rows(args, model, "r_rp_rpp")
    columns = ["t", "population", "phase", "fraction", "norm"]
    path = _out_path(args, "trace.csv")
    _write_csv(path, columns, rows)
    _write_manifest(path.with_suffix(".json"),
                    _manifest(args, model, "trace",
                              {"n_states": n_states, "basis_hash": basis_hash, "columns": columns}))
    print(f"wrote {path} ({len(rows)} points)")
    return EXIT_OK


def cmd_phases(args) -> int:
    model = _load_model(args)
    rows, n_states, basis_hash = _trace_rows(args, model, args.pattern)
    columns = ["t", "population", "phase", "fraction", "norm"]
    path = _out_path(args, f"phases_{args.pattern}.csv")
    _write_csv(path, columns, rows)
    _write_manifest(path.with_suffix(".json"),
                    _manifest(args, model, "phases",
                              {"n_states": n_states, "basis_hash": basis_hash, "columns": columns}))
    print(f"wrote {path} ({len(rows)} points)")
    return EXIT_OK


def _operating_point(args) -> OperatingPoint:
    return OperatingPoint(e_field=args.E, b_field=args.B, spacing=args.R, tau=args.tau)


def cmd_truth_table(args) -> int:
    model = _load_model(args)
    sim = GateSimulator(model, _operating_point(args),
                        ideal_amplitudes=args.ideal, with_decay=not args.no_decay)
    result = sim.truth_table()
    payload = {
        "operating_point": vars(result.operating_point),
        "truth_table": result.truth_table.tolist(),
        "renormalized": result.renormalized_table().tolist(),
        "leakage": result.leakage.tolist(),
        "decay_loss": result.decay_loss.tolist(),
    }
    path = _out_path(args, "truth_table.json")
    with open(path, "w") as fh:
        json.dump({"manifest": _manifest(args, model, "truth-table"), **payload},
                  fh, indent=2, default=str)
        fh.write("\n")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_fidelity(args) -> int:
    model = _load_model(args)
    sim = GateSimulator(model, _operating_point(args),
                        ideal_amplitudes=args.ideal, with_decay=not args.no_decay)
    avg, fids = sim.average_fidelity()
    payload = {
        "operating_point": vars(sim.op),
        "average_fidelity": avg,
        "min_fidelity": float(fids.min()),
        "protocol_duration_us": sim.protocol_duration_us(),
        "per_input": fids.tolist(),
    }
    path = _out_path(args, "fidelity.json")
    with open(path, "w") as fh:
        json.dump({"manifest": _manifest(args, model, "fidelity"), **payload},
                  fh, indent=2, default=str)
        fh.write("\n")
    print(f"average fidelity {avg:.4f}; wrote {path}")
    return EXIT_OK


def cmd_optimize(args) -> int:
    model = _load_model(args)
    result = optimize_operating_point(args.R, model, phase_tolerance=args.tolerance)
    payload = {
        "operating_point": vars(result.operating_point),
        "residuals": result.residuals,
        "iterations": result.iterations,
        "history": result.history,
    }
    path = _out_path(args, "operating_point.json")
    with open(path, "w") as fh:
        json.dump({"manifest": _manifest(args, model, "optimize"), **payload},
                  fh, indent=2, default=str)
        fh.write("\n")
    op = result.operating_point
    print(f"operating point: E={op.e_field:.5f} V/cm, B={op.b_field:.3f} G, "
          f"tau={op.tau:.3f} us; wrote {path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _positive(value: str) -> float:
    x = float(value)
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", help="atomic-data JSON path (default: packaged file, "
                                  f"or ${DATA_PATH_ENV})")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--force", action="store_true", help="overwrite existing outputs")


def _add_fields(p: argparse.ArgumentParser, tau_default: float) -> None:
    p.add_argument("--E", type=float, default=0.11912, help="dc electric field, V/cm")
    p.add_argument("--B", type=float, default=3.5, help="magnetic field, G (signed)")
    p.add_argument("--R", type=_positive, default=12.5, help="neighbor spacing, um")
    p.add_argument("--tau", type=float, default=tau_default, help="interaction time, us")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forstergate",
        description="Three-qubit Toffoli gate simulations on three-body "
                    "Forster resonances of Rb Rydberg atoms.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("basis", help="dump a collective basis as CSV")
    p.add_argument("--pattern", choices=sorted(PATTERNS), default="r_rp_rpp")
    p.add_argument("--R", type=_positive, default=12.5)
    _add_common(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("scan", help="fraction-transferred vs dc field")
    p.add_argument("--mode", choices=["two-atom", "three-atom"], required=True)
    p.add_argument("--R", type=_positive, default=12.5)
    p.add_argument("--B", type=float, default=0.0)
    p.add_argument("--tau", type=_positive, default=1.8)
    p.add_argument("--E-min", dest="e_min", type=float, default=0.110)
    p.add_argument("--E-max", dest="e_max", type=float, default=0.130)
    p.add_argument("--points", type=int, default=600)
    p.add_argument("--workers", type=int, default=4)
    _add_common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("trace", help="population/phase trace of the three-atom state")
    _add_fields(p, tau_default=6.0)
    p.add_argument("--points", type=int, default=1200)
    p.add_argument("--no-decay", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("phases", help="trace for a selected excitation pattern")
    p.add_argument("--pattern", choices=sorted(PATTERNS), required=True)
    _add_fields(p, tau_default=2.42)
    p.add_argument("--points", type=int, default=1200)
    p.add_argument("--no-decay", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_phases)

    p = sub.add_parser("truth-table", help="8x8 truth table of the gate")
    _add_fields(p, tau_default=2.42)
    p.add_argument("--ideal", action="store_true", help="ideal-amplitude oracle gate")
    p.add_argument("--no-decay", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_truth_table)

    p = sub.add_parser("fidelity", help="average fidelity over 216 input states")
    _add_fields(p, tau_default=2.42)
    p.add_argument("--ideal", action="store_true")
    p.add_argument("--no-decay", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("optimize", help="four-step operating-point search")
    p.add_argument("--R", type=_positive, default=12.5)
    p.add_argument("--tolerance", type=_positive, default=0.05,
                   help="phase residual target, rad")
    _add_common(p)
    p.set_defaults(func=cmd_optimize)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, AtomicDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OptimizationError, StarkConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (OSError, FileExistsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
