"""Command-line front door: render a builtin surface or a grid file to SVG,
a plain segment list, or a structured json record.

Exit codes: 0 on success, 2 on usage errors, 1 on render failures (with a
diagnostic naming the failing stage).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import RenderError
from .grid import read_grid_file
from .ordering import OrderingStrategy
from .output import render_report, write_segments, write_svg
from .pipeline import RenderConfig, render, render_shared_band
from .projection import Viewpoint
from .surfaces import SurfaceSpec, build_surface, surface_catalog


def _parse_pair(text: str, what: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"{what} must look like 150x150, got {text!r}")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must be integers, got {text!r}")
    return a, b


def _parse_view(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"--view must be v1,v2,v3, got {text!r}")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--view components must be numbers, got {text!r}")


def _parse_param(text: str) -> tuple[str, float]:
    name, _, value = text.partition("=")
    if not name or not value:
        raise argparse.ArgumentTypeError(f"--param must be name=value, got {text!r}")
    try:
        return name, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter value must be a number, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horizonplot",
        description="Hidden-line wireframe renderer for height fields.",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--surface", metavar="NAME",
                        help="builtin surface (see --list-surfaces)")
    source.add_argument("--input", metavar="FILE",
                        help="grid file: 'grid M N xMin xMax yMin yMax' + N rows of M heights")
    source.add_argument("--list-surfaces", action="store_true",
                        help="print the builtin surface catalog and exit")
    parser.add_argument("--grid", default="50x50", metavar="MxN",
                        help="sampling density (default 50x50)")
    parser.add_argument("--view", type=_parse_view, default=(-8.0, -8.0, 6.0),
                        metavar="V1,V2,V3", help="observer position (default -8,-8,6)")
    parser.add_argument("--device", default="1024x768", metavar="KXxKY",
                        help="device grid (default 1024x768)")
    parser.add_argument("--ordering", choices=["row", "cantor"], default="row",
                        help="patch draw order (default row)")
    parser.add_argument("--format", choices=["svg", "segments", "json"], default="svg",
                        help="output format (default svg)")
    parser.add_argument("--out", metavar="FILE", help="output path (default stdout)")
    parser.add_argument("--margin", type=float, default=0.05,
                        help="frame margin fraction (default 0.05)")
    parser.add_argument("--param", action="append", type=_parse_param, default=[],
                        metavar="NAME=VALUE", help="surface parameter override (repeatable)")
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.list_surfaces:
        json.dump({"surfaces": surface_catalog()}, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0

    try:
        m, n = _parse_pair(args.grid, "--grid")
        kx, ky = _parse_pair(args.device, "--device")
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    if m < 2 or n < 2:
        parser.error(f"--grid needs at least 2x2 samples, got {m}x{n}")
    if kx < 2 or ky < 2:
        parser.error(f"--device needs at least 2x2 cells, got {kx}x{ky}")
    if not (0.0 <= args.margin < 0.5):
        parser.error(f"--margin must lie in [0, 0.5), got {args.margin}")

    view = Viewpoint(*args.view)
    cfg = RenderConfig(kx=kx, ky=ky, ordering=OrderingStrategy(args.ordering),
                       margin_fraction=args.margin)

    try:
        if args.input:
            with open(args.input) as fh:
                pieces, shared = [read_grid_file(fh)], False
        else:
            pieces, shared = build_surface(
                SurfaceSpec(kind=args.surface, parameters=dict(args.param)),
                m, n, view_height=view.v3,
            )
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RenderError) as exc:
        parser.error(str(exc))

    try:
        if shared:
            segments, stats = render_shared_band(pieces, view, cfg)
        else:
            segments, stats = render(pieces[0], view, cfg)
    except RenderError as exc:
        print(f"render failed at stage {exc.stage}: {exc}", file=sys.stderr)
        return 1

    sink = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.format == "segments":
            write_segments(segments, sink)
        elif args.format == "svg":
            write_svg(segments, cfg, sink)
        else:
            json.dump(render_report(segments, stats, cfg), sink)
            sink.write("\n")
    finally:
        if args.out:
            sink.close()
    return 0


def console_main() -> None:
    raise SystemExit(run_cli())


if __name__ == "__main__":
    console_main()
