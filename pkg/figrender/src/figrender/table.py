"""Sweep-CSV ingestion: strict contract validation with row/column diagnostics.

The expected file is the solver CLI's sweep output: a fixed seven-column
header, one row per grid point in increasing p_a1 order, then appended
breakpoint rows carrying a flag in the final column.  Interval and selection
cells are empty when the sweep was run without a distortion (or when the
selection is undefined), and numeric otherwise.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

__all__ = [
    "EXPECTED_HEADER",
    "KNOWN_FLAGS",
    "CsvFormatError",
    "SweepRow",
    "SweepTable",
    "load_sweep",
    "parse_sweep",
]

EXPECTED_HEADER = ("p_a1", "u_hat", "v_hat", "v_tilde_lo", "v_tilde_hi", "omega", "breakpoint")
KNOWN_FLAGS = ("", "p1", "p2", "pt1", "pt2")


class CsvFormatError(Exception):
    """The file does not meet the sweep-CSV contract; the message says where."""


@dataclass(frozen=True, slots=True)
class SweepRow:
    p_a1: float
    u_hat: float
    v_hat: float
    v_tilde_lo: float | None
    v_tilde_hi: float | None
    omega: float | None
    flag: str

    @property
    def is_breakpoint(self) -> bool:
        return self.flag != ""

    @property
    def has_interval(self) -> bool:
        return self.v_tilde_lo is not None


@dataclass(frozen=True, slots=True)
class SweepTable:
    rows: tuple[SweepRow, ...]

    @property
    def grid_rows(self) -> tuple[SweepRow, ...]:
        return tuple(r for r in self.rows if not r.is_breakpoint)

    @property
    def breakpoint_rows(self) -> tuple[SweepRow, ...]:
        return tuple(r for r in self.rows if r.is_breakpoint)

    @property
    def has_intervals(self) -> bool:
        return any(r.has_interval for r in self.rows)


def _number(cell: str, line: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise CsvFormatError(
            f"row {line}, column {column}: expected a number, got {cell!r}"
        ) from None
    if not math.isfinite(value):
        raise CsvFormatError(
            f"row {line}, column {column}: expected a finite number, got {cell!r}"
        )
    return value


def _optional_number(cell: str, line: int, column: str) -> float | None:
    if cell == "":
        return None
    return _number(cell, line, column)


def _parse_row(cells: list[str], line: int) -> SweepRow:
    if len(cells) != len(EXPECTED_HEADER):
        raise CsvFormatError(
            f"row {line}: expected {len(EXPECTED_HEADER)} columns, got {len(cells)}"
        )
    p_a1 = _number(cells[0], line, "p_a1")
    if not 0.0 <= p_a1 <= 1.0:
        raise CsvFormatError(f"row {line}, column p_a1: {p_a1!r} outside [0, 1]")
    u = _number(cells[1], line, "u_hat")
    v = _number(cells[2], line, "v_hat")
    lo = _optional_number(cells[3], line, "v_tilde_lo")
    hi = _optional_number(cells[4], line, "v_tilde_hi")
    if (lo is None) != (hi is None):
        raise CsvFormatError(
            f"row {line}: v_tilde_lo and v_tilde_hi must be both empty or both numeric"
        )
    if lo is not None and lo > hi:
        raise CsvFormatError(
            f"row {line}: v_tilde_lo {lo!r} exceeds v_tilde_hi {hi!r}"
        )
    omega = _optional_number(cells[5], line, "omega")
    flag = cells[6]
    if flag not in KNOWN_FLAGS:
        known = ", ".join(repr(f) for f in KNOWN_FLAGS if f)
        raise CsvFormatError(
            f"row {line}, column breakpoint: unknown flag {flag!r} (expected empty or {known})"
        )
    return SweepRow(p_a1, u, v, lo, hi, omega, flag)


def parse_sweep(lines) -> SweepTable:
    """Parse decoded CSV text lines into a validated table.

    Diagnostics use 1-based row numbers counted over the whole file, header
    included, so they match what an editor shows.
    """
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise CsvFormatError("row 1: empty file, expected the sweep header") from None
    if tuple(header) != EXPECTED_HEADER:
        raise CsvFormatError(
            f"row 1: header mismatch: expected {','.join(EXPECTED_HEADER)}, "
            f"got {','.join(header)}"
        )
    rows = [_parse_row(cells, line) for line, cells in enumerate(reader, start=2)]
    if not rows:
        raise CsvFormatError("no data rows after the header")
    return SweepTable(tuple(rows))


def load_sweep(path: str) -> SweepTable:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return parse_sweep(fh)
    except OSError as exc:
        raise CsvFormatError(f"cannot read {path}: {exc}") from exc
