"""Render solver sweep CSVs as payoff-curve figures.

This package consumes the sweep CSV contract only — it never imports the
solver — so any file meeting the contract renders identically regardless of
what produced it.
"""

from .render import DPI, FIGSIZE, render
from .table import (
    EXPECTED_HEADER,
    KNOWN_FLAGS,
    CsvFormatError,
    SweepRow,
    SweepTable,
    load_sweep,
    parse_sweep,
)

__all__ = [
    "DPI",
    "EXPECTED_HEADER",
    "FIGSIZE",
    "KNOWN_FLAGS",
    "CsvFormatError",
    "SweepRow",
    "SweepTable",
    "load_sweep",
    "parse_sweep",
    "render",
]

__version__ = "0.1.0"
