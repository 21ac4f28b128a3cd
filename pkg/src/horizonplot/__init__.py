"""Hidden-line wireframe rendering of height fields in perspective.

Single-valued surfaces over rectangular domains are drawn patch by patch in
a front-to-back order while two per-column curves (the floating horizon)
track the covered image region; segments falling inside the band are
hidden.  Work grows linearly with the number of samples.
"""

from . import errors
from .grid import (
    DomainRect,
    SurfaceGrid,
    ViewpointRegion,
    classify_viewpoint,
    normalize,
    partition_domain,
    read_grid_file,
    rotate_grid_quarter_turns,
    sample_function,
    write_grid_file,
)
from .horizon import (
    DevicePoint,
    HorizonBuffer,
    SegmentList,
    draw_edge,
    draw_leading_edges,
    first_visible,
    init_horizon,
    update_band,
    visible,
)
from .ordering import (
    OrderingStrategy,
    cantor_order,
    leading_edge_sequence,
    row_major_order,
)
from .output import read_segments, render_report, write_segments, write_svg
from .pipeline import (
    PlotTransform,
    RenderConfig,
    RenderStats,
    fit_transform,
    render,
    render_piece,
    render_pieces,
    render_shared_band,
)
from .projection import (
    ImagePoint,
    ProjectionBasis,
    Viewpoint,
    basis_from_viewpoint,
    project_point,
    project_points,
)
from .surfaces import (
    ConvexMaskSpec,
    SurfaceSpec,
    build_surface,
    extend_convex_domain,
    split_sphere,
    surface_catalog,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "DomainRect", "SurfaceGrid", "ViewpointRegion", "classify_viewpoint",
    "normalize", "partition_domain", "read_grid_file",
    "rotate_grid_quarter_turns", "sample_function", "write_grid_file",
    "DevicePoint", "HorizonBuffer", "SegmentList", "draw_edge",
    "draw_leading_edges", "first_visible", "init_horizon", "update_band",
    "visible",
    "OrderingStrategy", "cantor_order", "leading_edge_sequence",
    "row_major_order",
    "read_segments", "render_report", "write_segments", "write_svg",
    "PlotTransform", "RenderConfig", "RenderStats", "fit_transform",
    "render", "render_piece", "render_pieces", "render_shared_band",
    "ImagePoint", "ProjectionBasis", "Viewpoint", "basis_from_viewpoint",
    "project_point", "project_points",
    "ConvexMaskSpec", "SurfaceSpec", "build_surface", "extend_convex_domain",
    "split_sphere", "surface_catalog",
    "__version__",
]
