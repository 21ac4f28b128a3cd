"""One surface from all nine observer regions.

Corner footprints are handled by rotating the data a quarter turn at a
time; edge and interior footprints split the domain into two or four
pieces so each piece sees a corner observer.  The picture stays seamless
because split-line samples are shared and one frame spans all pieces.
"""

import numpy as np

from horizonplot import DomainRect, RenderConfig, Viewpoint, render, sample_function, write_svg


def bumps(x, y):
    return np.exp(-4 * ((x - 0.3) ** 2 + y * y)) + 0.6 * np.exp(-6 * ((x + 0.5) ** 2 + (y + 0.4) ** 2))


grid = sample_function(bumps, DomainRect(-1, 1, -1, 1), 80, 80)
cfg = RenderConfig(kx=640, ky=480)

views = {
    "sw": Viewpoint(-5, -5, 4),
    "south": Viewpoint(0.2, -6, 4),
    "northeast": Viewpoint(5, 5, 4),
    "interior": Viewpoint(0.1, 0.2, 5),
    "overhead": Viewpoint(0, 0, 6),  # nudged off the z-axis internally
}

for name, view in views.items():
    segments, stats = render(grid, view, cfg)
    path = f"regions_{name}.svg"
    with open(path, "w") as fh:
        write_svg(segments, cfg, fh)
    print(f"{path}: region {stats.region:9s} pieces {len(stats.segments_per_piece)} "
          f"segments {stats.emitted_segments}")
