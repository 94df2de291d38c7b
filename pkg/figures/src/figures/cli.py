"""Command-line entry: one subcommand per figure layout."""

from __future__ import annotations

import argparse
import sys

from .panels import (
    PATTERN_TITLES,
    render_phase_figure,
    render_scan_figure,
    render_trace_figure,
    render_truth_table_figure,
)
from .schema import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forstergate-figures",
        description="Render publication-style figures from forstergate CLI artifacts.",
    )
    sub = parser.add_subparsers(dest="figure", required=True)

    p = sub.add_parser("scan", help="three-panel field-scan figure")
    p.add_argument("--two-atom", required=True)
    p.add_argument("--three-atom-b0", required=True)
    p.add_argument("--three-atom-b", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("trace", help="population vs time")
    p.add_argument("--trace", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("phases", help="population/phase panels per pattern")
    for pattern in sorted(PATTERN_TITLES):
        p.add_argument(f"--{pattern.replace('_', '-')}", dest=pattern)
    p.add_argument("--out", required=True)

    p = sub.add_parser("truth-table", help="8x8 3-D bar chart")
    p.add_argument("--json", required=True)
    p.add_argument("--out", required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.figure == "scan":
            path = render_scan_figure(args.out, args.two_atom,
                                      args.three_atom_b0, args.three_atom_b)
        elif args.figure == "trace":
            path = render_trace_figure(args.out, args.trace)
        elif args.figure == "phases":
            traces = {p: getattr(args, p) for p in PATTERN_TITLES if getattr(args, p, None)}
            if not traces:
                print("error: no pattern traces given", file=sys.stderr)
                return 2
            path = render_phase_figure(args.out, traces)
        else:
            path = render_truth_table_figure(args.out, args.json)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
