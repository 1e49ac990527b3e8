"""Command-line interface for rendering sweep CSVs.

Exit codes: 0 success, 2 malformed or unreadable CSV (and bad arguments),
3 output I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .render import render
from .table import CsvFormatError, load_sweep

__all__ = ["EXIT_INVALID", "EXIT_IO", "EXIT_OK", "main"]

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figrender",
        description="Render solver sweep CSVs as payoff-curve figures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    cmd = sub.add_parser("render", help="render one sweep CSV to an image")
    cmd.add_argument("--csv", required=True, metavar="FILE", help="sweep CSV input")
    cmd.add_argument("--out", required=True, metavar="FILE", help="image output path")
    cmd.add_argument("--format", required=True, choices=("png", "svg"),
                     help="image format")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        table = load_sweep(args.csv)
    except CsvFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        render(table, args.out, args.format)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
