"""Draw a full sphere: two single-valued sheets through one horizon band.

A sphere is not a height field, so it is split at the equator.  Drawing the
far sheet without resetting the band is what produces the correct
silhouette: run this and compare sphere_shared.svg (one band) against
sphere_reset.svg (band reset between sheets, lower sheet bleeds through).
"""

from horizonplot import (
    RenderConfig,
    Viewpoint,
    render_pieces,
    render_shared_band,
    split_sphere,
    write_svg,
)

view = Viewpoint(3.0, -3.0, 2.0)
upper, lower, upper_first = split_sphere((0, 0, 0), 1.0, 41, 41, view_height=view.v3)
pieces = [upper, lower] if upper_first else [lower, upper]
cfg = RenderConfig(kx=800, ky=800)

shared, stats = render_shared_band(pieces, view, cfg)
print("shared band: ", stats.segments_per_piece, "segments per hemisphere")

reset, stats_reset = render_pieces(pieces, view, cfg, share_band=False)
print("reset band:  ", stats_reset.segments_per_piece, "segments per hemisphere")

for name, segs in (("sphere_shared.svg", shared), ("sphere_reset.svg", reset)):
    with open(name, "w") as fh:
        write_svg(segs, cfg, fh)
    print("wrote", name)
