"""Offline rendering of sweep-metric CSVs."""

from .render import EmptyInputError, PlotJob, SchemaError, read_rows, render

__version__ = "0.1.0"
