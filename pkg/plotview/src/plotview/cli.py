"""Command-line entry: plotview <csv> --kind heatmap2d|line_sweep --metric <name> --out <png>."""

from __future__ import annotations

import argparse
import sys

from .render import EmptyInputError, PlotJob, SchemaError, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotview", description="Render sweep-metric CSVs into figures"
    )
    parser.add_argument("csv", help="input CSV in the sweep schema")
    parser.add_argument("--kind", required=True, choices=("heatmap2d", "line_sweep"))
    parser.add_argument("--metric", required=True, help="metric column value to plot")
    parser.add_argument("--out", required=True, help="output PNG path")
    parser.add_argument("--bins", type=int, default=50, help="value-axis bin count (heatmap)")
    args = parser.parse_args(argv)

    try:
        job = PlotJob(args.csv, args.kind, args.metric, args.out, value_bins=args.bins)
        render(job)
    except (SchemaError, EmptyInputError, ValueError) as exc:
        print(f"plotview: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"plotview: {exc}", file=sys.stderr)
        return 4
    print(f"plotview: wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
