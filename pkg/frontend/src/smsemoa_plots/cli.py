"""Script entry point: results CSV in, errorbar PNG out."""

from __future__ import annotations

import argparse
import sys

from .render import SchemaError, render_sweep_figure


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="smsemoa-plots",
        description="Render mean/std evaluation counts per algorithm over n",
    )
    parser.add_argument("--csv", required=True, help="results CSV from the harness")
    parser.add_argument("--out", required=True, help="output image path (PNG)")
    parser.add_argument(
        "--linear-y", action="store_true",
        help="linear y axis (default is logarithmic)",
    )
    parser.add_argument("--title", help="figure title")
    parser.add_argument(
        "--print-table", action="store_true",
        help="print the plotted statistics as CSV on stdout",
    )
    args = parser.parse_args(argv)

    try:
        table = render_sweep_figure(
            args.csv, args.out, log_y=not args.linear_y, title=args.title
        )
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.print_table:
        print("\n".join(table.as_rows()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
