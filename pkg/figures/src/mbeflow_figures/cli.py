"""Command-line front end: one figure per invocation.

Exit codes: 0 success, 2 bad arguments or input schema, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .readers import SchemaError
from .render import KINDS, FigureSpec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render a figure from solver diagnostics CSV or snapshot files.",
    )
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument(
        "--in", dest="inputs", nargs="+", required=True, metavar="PATH",
        help="input CSV (energy, powerlaw) or snapshot (profile, contour) files",
    )
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument(
        "--slope", type=float, default=None,
        help="reference slope for the dashed guide line (powerlaw kind)",
    )
    parser.add_argument(
        "--window", nargs=2, type=float, default=None, metavar=("A", "B"),
        help="restrict to times in [A, B]",
    )
    parser.add_argument(
        "--column", default="energy",
        help="diagnostics column to plot (energy, powerlaw kinds); default energy",
    )
    args = parser.parse_args(argv)

    try:
        spec = FigureSpec(
            kind=args.kind,
            inputs=tuple(args.inputs),
            out=args.out,
            window=tuple(args.window) if args.window is not None else None,
            reference_slope=args.slope,
            column=args.column,
        )
        result = render(spec)
    except SchemaError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 4
    if result.fitted_slope is not None:
        print(f"fitted slope: {result.fitted_slope:.6f}")
    print(result.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
