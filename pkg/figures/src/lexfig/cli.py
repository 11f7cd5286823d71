"""Command line front end: render --spec <figure.json>."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .figspec import load_figure_spec
from .render import render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render",
        description="render a workspace overlay or metric band chart",
    )
    parser.add_argument("--spec", required=True, help="figure spec JSON file")
    parser.add_argument(
        "--resolution",
        type=int,
        default=None,
        help="override the visibility raster width in pixels",
    )
    args = parser.parse_args(argv)
    try:
        spec = load_figure_spec(args.spec)
        if args.resolution is not None:
            spec = replace(spec, resolution=args.resolution)
        out = render(spec)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
