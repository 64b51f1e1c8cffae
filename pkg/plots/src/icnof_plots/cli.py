"""plots CLI: render the toolkit's CSV outputs to image files."""

from __future__ import annotations

import argparse
import sys

from .render import SchemaError, render_regions, render_surface


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plots", description="Render gap-surface and region-frontier figures"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_surface = sub.add_parser("surface", help="heatmap from a sweep surface CSV")
    p_surface.add_argument("csv", help="surface CSV (alpha,beta,xi_bits)")
    p_surface.add_argument("image", help="output image path (png)")

    p_regions = sub.add_parser("regions", help="overlay two frontier CSVs")
    p_regions.add_argument("achievable_csv", help="inner frontier CSV (r1,r2)")
    p_regions.add_argument("converse_csv", help="outer frontier CSV (r1,r2)")
    p_regions.add_argument("image", help="output image path (png)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "surface":
            summary = render_surface(args.csv, args.image)
            if summary["max"] is not None:
                m = summary["max"]
                print(f"max {m['xi_bits']:.9g} bits at ({m['alpha']:.9g}, {m['beta']:.9g})")
            else:
                print("all cells empty")
        else:
            render_regions(args.achievable_csv, args.converse_csv, args.image)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
