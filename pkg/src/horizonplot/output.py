"""Output writers: plain segment lists, SVG documents, and the structured
record shared by the CLI's json format and the render service.

Device coordinates are y-up everywhere inside the library; the flip to
document coordinates happens only at the SVG boundary.
"""

from __future__ import annotations

from typing import TextIO

from .horizon import DevicePoint, SegmentList
from .pipeline import RenderConfig, RenderStats


def write_segments(segments: SegmentList, sink: TextIO) -> None:
    """One segment per line: x1 y1 x2 y2, six decimals, device y-up."""
    for x1, y1, x2, y2 in segments.as_array().tolist():
        sink.write(f"{x1:.6f} {y1:.6f} {x2:.6f} {y2:.6f}\n")


def read_segments(source: TextIO) -> SegmentList:
    out = SegmentList()
    for line in source:
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 4:
            raise ValueError(f"expected 'x1 y1 x2 y2', got {line!r}")
        x1, y1, x2, y2 = (float(p) for p in parts)
        out.append(DevicePoint(x1, y1), DevicePoint(x2, y2))
    return out


def write_svg(segments: SegmentList, cfg: RenderConfig, sink: TextIO) -> None:
    """One SVG document, one line element per segment, y flipped to y-down."""
    top = cfg.ky - 1
    sink.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {cfg.kx} {cfg.ky}">\n'
        f'  <rect width="{cfg.kx}" height="{cfg.ky}" fill="white"/>\n'
        f'  <g stroke="black" stroke-width="1" stroke-linecap="round" fill="none">\n'
    )
    for x1, y1, x2, y2 in segments.as_array().tolist():
        sink.write(
            f'    <line x1="{x1:.3f}" y1="{top - y1:.3f}" '
            f'x2="{x2:.3f}" y2="{top - y2:.3f}"/>\n'
        )
    sink.write("  </g>\n</svg>\n")


def render_report(segments: SegmentList, stats: RenderStats, cfg: RenderConfig) -> dict:
    """Structured render result; also the render service's response body."""
    return {
        "segments": segments.as_array().tolist(),
        "stats": {
            "points": stats.point_count,
            "patches": stats.patch_count,
            "segments": stats.emitted_segments,
            "elapsedMs": stats.elapsed * 1000.0,
        },
        "region": stats.region,
        "device": [cfg.kx, cfg.ky],
    }
