"""Render sweep-metric CSVs into reproducible figures.

Input is the harness CSV schema
(``experiment,N,L,entangler,m,circuit_index,metric,value,seed``). Two plot
kinds: ``heatmap2d`` bins (m, value) pairs into a column-normalized count
grid; ``line_sweep`` draws the mean value versus N, one series per
entangler. Rendering is deterministic (fixed colormap, no timestamps) and
the output file is written atomically.
"""

from __future__ import annotations

import csv
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

EXPECTED_COLUMNS = [
    "experiment", "N", "L", "entangler", "m", "circuit_index", "metric", "value", "seed",
]

COLORMAP = "viridis"
DEFAULT_VALUE_BINS = 50
PNG_METADATA = {"Software": "plotview"}


class SchemaError(ValueError):
    """The CSV does not carry the expected sweep columns."""


class EmptyInputError(ValueError):
    """The CSV has no data rows for the requested metric."""


@dataclass(frozen=True)
class PlotJob:
    csv_path: str
    kind: str  # "heatmap2d" | "line_sweep"
    metric: str
    out_path: str
    value_bins: int = DEFAULT_VALUE_BINS

    def __post_init__(self):
        if self.kind not in ("heatmap2d", "line_sweep"):
            raise ValueError(f"unknown plot kind {self.kind!r}")
        if self.value_bins < 1:
            raise ValueError("value_bins must be >= 1")


def read_rows(csv_path: str | Path) -> list[dict]:
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != EXPECTED_COLUMNS:
            raise SchemaError(
                f"{csv_path}: expected columns {EXPECTED_COLUMNS}, got {reader.fieldnames}"
            )
        return [row for row in reader]


def _select(rows: list[dict], metric: str) -> list[dict]:
    picked = [r for r in rows if r["metric"] == metric]
    if not picked:
        present = sorted({r["metric"] for r in rows})
        raise EmptyInputError(
            f"no rows for metric {metric!r}" + (f"; file has {present}" if present else "")
        )
    return picked


def _value_edges(values: np.ndarray, bins: int) -> np.ndarray:
    lo, hi = float(values.min()), float(values.max())
    if lo == hi:  # degenerate range, e.g. an all-zero idle sweep
        lo, hi = lo - 0.5, hi + 0.5
    return np.linspace(lo, hi, bins + 1)


def _atomic_save(fig, out_path: str) -> None:
    out = Path(out_path)
    fd, tmp = tempfile.mkstemp(dir=out.parent or Path("."), suffix=out.suffix)
    try:
        with os.fdopen(fd, "wb") as fh:
            fig.savefig(fh, format="png", metadata=PNG_METADATA)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    finally:
        plt.close(fig)


def render(job: PlotJob) -> str:
    """Render the job and return the output path."""
    rows = _select(read_rows(job.csv_path), job.metric)

    if job.kind == "heatmap2d":
        m = np.array([int(r["m"]) for r in rows])
        values = np.array([float(r["value"]) for r in rows])
        m_levels = np.unique(m)
        edges = _value_edges(values, job.value_bins)
        grid = np.zeros((job.value_bins, m_levels.size))
        for col, level in enumerate(m_levels):
            counts, _ = np.histogram(values[m == level], bins=edges)
            total = counts.sum()
            if total:
                grid[:, col] = counts / total
        fig, ax = plt.subplots(figsize=(7, 4.5), dpi=120)
        x_edges = np.concatenate([m_levels - 0.5, [m_levels[-1] + 0.5]])
        mesh = ax.pcolormesh(x_edges, edges, grid, cmap=COLORMAP, rasterized=True)
        fig.colorbar(mesh, ax=ax, label="fraction of circuits")
        ax.set_xlabel("active rotations m")
        ax.set_ylabel(job.metric.replace("_", " "))
    else:  # line_sweep
        series: dict[str, dict[int, list[float]]] = {}
        for r in rows:
            series.setdefault(r["entangler"], {}).setdefault(int(r["N"]), []).append(
                float(r["value"])
            )
        fig, ax = plt.subplots(figsize=(7, 4.5), dpi=120)
        for entangler in sorted(series):
            by_n = series[entangler]
            ns = sorted(by_n)
            means = [float(np.mean(by_n[n])) for n in ns]
            ax.plot(ns, means, marker="o", label=entangler)
        ax.set_xlabel("qubits N")
        ax.set_ylabel(f"mean {job.metric.replace('_', ' ')}")
        ax.legend(fontsize=8)
    ax.set_title(job.metric.replace("_", " "))
    _atomic_save(fig, job.out_path)
    return job.out_path
