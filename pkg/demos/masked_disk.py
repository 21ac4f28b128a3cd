"""Height field over a convex (non-rectangular) domain.

The function is extended to the bounding rectangle with an out-of-range
sentinel and a membership mask; edges touching padding samples are never
drawn, so only the disk-shaped cap appears.
"""

from horizonplot import (
    ConvexMaskSpec,
    DomainRect,
    RenderConfig,
    Viewpoint,
    extend_convex_domain,
    render,
    write_svg,
)

spec = ConvexMaskSpec(membership=lambda x, y: x * x + y * y <= 1.0)
grid = extend_convex_domain(
    lambda x, y: 1.0 - (x * x + y * y),
    DomainRect(-1, 1, -1, 1), 60, 60, spec,
)
print(f"{int(grid.mask.sum())} of {grid.m * grid.n} samples belong to the disk")

cfg = RenderConfig(kx=700, ky=525)
segments, stats = render(grid, Viewpoint(-5, -4, 4), cfg)
with open("disk.svg", "w") as fh:
    write_svg(segments, cfg, fh)
print(f"wrote disk.svg ({stats.emitted_segments} segments)")
