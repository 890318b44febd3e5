"""Command-line entry point.

Subcommands mirror the experiments: expressibility, entanglement, vqe,
qubit-sweep, photonic. Each takes a JSON config (--config) plus optional
overrides (--seed, --workers, --out, --format). Exit codes: 0 success,
2 config error, 3 capacity error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CapacityError
from .harness import (
    config_from_dict,
    configuration_records,
    emit,
    run_experiment,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CAPACITY = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqckit", description="Rotation-budget sweeps for layered parameterized circuits"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("expressibility", "relative expressibility over an m-sweep"),
        ("entanglement", "entangling capability over an m-sweep"),
        ("vqe", "VQE energy error over an m-sweep"),
        ("qubit-sweep", "metrics at full rotation budget versus qubit count"),
        ("photonic", "qudit pipeline metrics versus driven-phase count"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--config", required=True, help="JSON experiment config")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
        p.add_argument("--out", help="output file (overrides config output_path)")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    experiment = args.command.replace("-", "_")

    try:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        print(f"pqckit: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"pqckit: config is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if not isinstance(data, dict):
        print("pqckit: config JSON must be an object", file=sys.stderr)
        return EXIT_CONFIG
    stated = data.setdefault("experiment", experiment)
    if stated != experiment:
        print(
            f"pqckit: config experiment {stated!r} does not match subcommand {experiment!r}",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    if args.seed is not None:
        data["seed"] = args.seed

    try:
        cfg = config_from_dict(data)
    except CapacityError as exc:
        print(f"pqckit: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (TypeError, ValueError) as exc:
        print(f"pqckit: bad config: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out = args.out or cfg.output_path
    if not out:
        print("pqckit: no output path (--out or config output_path)", file=sys.stderr)
        return EXIT_CONFIG
    fmt = args.format or ("json" if str(out).endswith(".json") else "csv")

    try:
        rows = run_experiment(cfg, workers=max(args.workers, 1))
    except CapacityError as exc:
        print(f"pqckit: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValueError as exc:
        print(f"pqckit: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"pqckit: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        emit(rows, out, fmt)
        if cfg.experiment in ("expressibility", "entanglement", "vqe"):
            records = configuration_records(cfg)
            with open(f"{out}.configs.txt", "w", encoding="utf-8", newline="\n") as fh:
                fh.write(records)
    except OSError as exc:
        print(f"pqckit: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO

    print(f"pqckit: wrote {len(rows)} rows to {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
