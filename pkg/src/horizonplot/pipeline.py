"""Full renders: normalize, classify, rotate or partition, project, frame,
then draw leading edges and every patch's back and right edges in order.

Two drawing paths produce bitwise-identical output: a compiled kernel (the
default) and a pure-Python reference used automatically when an edge
observer is attached.  The observer hook exists for verification: it sees
every candidate edge with the band state at decision time.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernels, ordering
from .errors import BehindEye, DegenerateImage, EmptyRender, SplitTooClose
from .grid import (
    ROTATION_FOR_CORNER,
    SurfaceGrid,
    ViewpointRegion,
    classify_viewpoint,
    nearest_corner,
    partition_domain,
    rotate_grid_quarter_turns,
)
from .horizon import (
    DevicePoint,
    HorizonBuffer,
    SegmentList,
    draw_edge,
    draw_leading_edges,
    init_horizon,
)
from .projection import R_MAX, Viewpoint, project_points

# Called before each candidate edge with (a, b, band, is_leading_edge).
EdgeObserver = Callable[[DevicePoint, DevicePoint, HorizonBuffer, bool], None]


@dataclass(frozen=True)
class PlotTransform:
    """Uniform image-to-device scaling; device y grows upward."""

    scale: float
    offset_u: float
    offset_v: float

    def apply(self, u, v):
        return self.scale * u + self.offset_u, self.scale * v + self.offset_v


@dataclass(frozen=True)
class RenderConfig:
    kx: int = 1024
    ky: int = 768
    ordering: ordering.OrderingStrategy = ordering.OrderingStrategy.ROW_MAJOR_FRONT
    margin_fraction: float = 0.05

    def __post_init__(self) -> None:
        if self.kx < 2 or self.ky < 2:
            raise ValueError(f"device needs at least 2x2 cells, got {self.kx}x{self.ky}")
        if not (0.0 <= self.margin_fraction < 0.5):
            raise ValueError(f"margin fraction {self.margin_fraction} outside [0, 0.5)")


@dataclass
class RenderStats:
    point_count: int
    patch_count: int
    emitted_segments: int
    elapsed: float
    region: str
    segments_per_piece: list[int] = field(default_factory=list)


def fit_transform(points, cfg: RenderConfig) -> PlotTransform:
    """Frame the image points into the device grid.

    Uniform scale (aspect preserved), bounding box centered, margin kept on
    all sides.  An image with zero extent in both axes cannot be framed.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if pts.shape[0] < 1:
        raise DegenerateImage("no image points to frame")
    u_min, v_min = pts.min(axis=0)
    u_max, v_max = pts.max(axis=0)
    width = u_max - u_min
    height = v_max - v_min
    if width == 0.0 and height == 0.0:
        raise DegenerateImage("image collapses to a single point")
    usable_x = (cfg.kx - 1) * (1.0 - 2.0 * cfg.margin_fraction)
    usable_y = (cfg.ky - 1) * (1.0 - 2.0 * cfg.margin_fraction)
    candidates = []
    if width > 0.0:
        candidates.append(usable_x / width)
    if height > 0.0:
        candidates.append(usable_y / height)
    scale = min(candidates)
    offset_u = (cfg.kx - 1) / 2.0 - scale * ((u_min + u_max) / 2.0)
    offset_v = (cfg.ky - 1) / 2.0 - scale * ((v_min + v_max) / 2.0)
    return PlotTransform(scale=scale, offset_u=offset_u, offset_v=offset_v)


def render_piece(
    grid: SurfaceGrid,
    view: Viewpoint,
    transform: PlotTransform,
    cfg: RenderConfig,
    buf: HorizonBuffer,
    out: SegmentList,
    *,
    edge_observer: EdgeObserver | None = None,
) -> None:
    """Draw one normalized piece whose footprint is southwest of its domain.

    Leading edges first, then per patch the back edge (to the west neighbor)
    followed by the right edge (to the south neighbor); the remaining two
    edges of each patch were already drawn by predecessors or as leading
    edges.  Edges with a masked endpoint are suppressed entirely.
    """
    dev_x, dev_y = _device_coords(grid, view, transform)
    valid = grid.effective_mask()
    _draw_leading(grid, dev_x, dev_y, valid, buf, out, edge_observer)
    for i_, j_ in ordering.patch_order(cfg.ordering, grid.m, grid.n):
        i, j = i_ - 1, j_ - 1
        if valid[i, j] and valid[i - 1, j]:
            a = DevicePoint(dev_x[i, j], dev_y[i, j])
            b = DevicePoint(dev_x[i - 1, j], dev_y[i - 1, j])
            if edge_observer is not None:
                edge_observer(a, b, buf, False)
            draw_edge(a, b, buf, out)
        if valid[i, j] and valid[i, j - 1]:
            a = DevicePoint(dev_x[i, j], dev_y[i, j])
            b = DevicePoint(dev_x[i, j - 1], dev_y[i, j - 1])
            if edge_observer is not None:
                edge_observer(a, b, buf, False)
            draw_edge(a, b, buf, out)


def render(
    grid: SurfaceGrid,
    view: Viewpoint,
    cfg: RenderConfig | None = None,
    *,
    edge_observer: EdgeObserver | None = None,
    use_fast: bool = True,
) -> tuple[SegmentList, RenderStats]:
    """Render a single surface grid from an arbitrary viewpoint.

    Corner footprints rotate the data to the southwest case; edge and
    interior footprints partition the domain into two or four pieces, each
    rendered with its own fresh band inside one shared frame.
    """
    return render_pieces([grid], view, cfg, share_band=False,
                         edge_observer=edge_observer, use_fast=use_fast)


def render_shared_band(
    pieces: Sequence[SurfaceGrid],
    view: Viewpoint,
    cfg: RenderConfig | None = None,
    *,
    edge_observer: EdgeObserver | None = None,
    use_fast: bool = True,
) -> tuple[SegmentList, RenderStats]:
    """Render several single-valued pieces through one horizon band.

    The band is never reset between pieces, so earlier pieces occlude later
    ones; used for multi-valued surfaces split into single-valued sheets
    (draw the sheet facing the observer first).  Output is order-dependent
    by design.
    """
    return render_pieces(pieces, view, cfg, share_band=True,
                         edge_observer=edge_observer, use_fast=use_fast)


def render_pieces(
    pieces: Sequence[SurfaceGrid],
    view: Viewpoint,
    cfg: RenderConfig | None = None,
    *,
    share_band: bool,
    edge_observer: EdgeObserver | None = None,
    use_fast: bool = True,
) -> tuple[SegmentList, RenderStats]:
    """Common core: one shared frame over all pieces, band shared or not."""
    if cfg is None:
        cfg = RenderConfig()
    if not pieces:
        raise ValueError("no pieces to render")
    t0 = time.perf_counter()

    # Normalize everything by the first piece's domain center; an observer
    # directly over the origin is nudged off the z-axis.
    cx, cy = pieces[0].domain.center
    grids = [_translate(g, -cx, -cy) for g in pieces]
    view_n = view.translated(-cx, -cy)
    if view_n.on_z_axis:
        view_n = view_n.nudged_off_axis()
    domain = grids[0].domain
    region = classify_viewpoint(view_n.footprint, domain)

    drawables = _orient_pieces(grids, view_n, region, domain)

    # Project every piece once; the shared frame is fitted over all of them.
    projected = []
    image_points = []
    any_in_range = False
    bad: tuple[int, int, int, float] | None = None
    for idx, (g, v) in enumerate(drawables):
        u, vv, r = project_points(g.sample_points(), v)
        valid = g.effective_mask().ravel()
        ok = valid & (r > 0.0) & (r < R_MAX)
        in_range = bool(ok[valid].all()) if valid.any() else True
        any_in_range = any_in_range or bool(ok.any())
        if not in_range and bad is None:
            flat = int(np.nonzero(valid & ~ok)[0][0])
            bad = (idx, flat // g.n + 1, flat % g.n + 1, float(r[flat]))
        projected.append((u, vv))
        image_points.append(np.column_stack([u[valid], vv[valid]]))
    if bad is not None:
        if not any_in_range:
            raise EmptyRender("every sample projects behind the observer")
        piece, bi, bj, br = bad
        raise BehindEye(
            f"sample (I={bi}, J={bj}) of piece {piece} projects with r={br:g}; "
            "move the viewpoint outside the surface"
        )
    transform = fit_transform(np.vstack(image_points), cfg)

    segments = SegmentList()
    per_piece: list[int] = []
    buf = init_horizon(cfg.kx) if share_band else None
    for (g, v), (u, vv) in zip(drawables, projected):
        piece_buf = buf if share_band else init_horizon(cfg.kx)
        before = len(segments)
        if use_fast and edge_observer is None:
            _render_piece_fast(g, u, vv, transform, cfg, piece_buf, segments)
        else:
            piece_out = SegmentList()
            render_piece(g, v, transform, cfg, piece_buf, piece_out,
                         edge_observer=edge_observer)
            segments.extend(piece_out)
        per_piece.append(len(segments) - before)

    stats = RenderStats(
        point_count=sum(g.m * g.n for g, _ in drawables),
        patch_count=sum((g.m - 1) * (g.n - 1) for g, _ in drawables),
        emitted_segments=len(segments),
        elapsed=time.perf_counter() - t0,
        region=region.value,
        segments_per_piece=per_piece,
    )
    return segments, stats


def _orient_pieces(
    grids: list[SurfaceGrid],
    view_n: Viewpoint,
    region: ViewpointRegion,
    domain,
) -> list[tuple[SurfaceGrid, Viewpoint]]:
    """Rotate (and possibly partition) so every drawn piece sees a SW footprint."""
    footprint = view_n.footprint
    if region.is_corner:
        k = ROTATION_FOR_CORNER[region]
        return [rotate_grid_quarter_turns(g, view_n, k) for g in grids]
    try:
        out = []
        for g in grids:
            for piece in partition_domain(g, footprint, region):
                corner = nearest_corner(footprint, piece.domain)
                out.append(rotate_grid_quarter_turns(piece, view_n, ROTATION_FOR_CORNER[corner]))
        return out
    except SplitTooClose:
        # Footprint within half a cell of the boundary: treat it as sitting
        # on the nearest corner; the error stays below device resolution.
        corner = nearest_corner(footprint, domain)
        k = ROTATION_FOR_CORNER[corner]
        return [rotate_grid_quarter_turns(g, view_n, k) for g in grids]


def _translate(grid: SurfaceGrid, dx: float, dy: float) -> SurfaceGrid:
    if dx == 0.0 and dy == 0.0:
        return grid
    return SurfaceGrid(xs=grid.xs + dx, ys=grid.ys + dy, z=grid.z, mask=grid.mask)


def _device_coords(grid: SurfaceGrid, view: Viewpoint, transform: PlotTransform):
    """(m, n) device coordinate arrays for every sample, policing r."""
    u, v, r = project_points(grid.sample_points(), view)
    valid = grid.effective_mask().ravel()
    ok = (r > 0.0) & (r < R_MAX)
    bad = valid & ~ok
    if bad.any():
        flat = int(np.nonzero(bad)[0][0])
        raise BehindEye(
            f"sample (I={flat // grid.n + 1}, J={flat % grid.n + 1}) "
            f"projects with r={r[flat]:g}"
        )
    dev_u, dev_v = transform.apply(u, v)
    return (
        np.ascontiguousarray(dev_u.reshape(grid.m, grid.n)),
        np.ascontiguousarray(dev_v.reshape(grid.m, grid.n)),
    )


def _render_piece_fast(
    grid: SurfaceGrid,
    u: np.ndarray,
    v: np.ndarray,
    transform: PlotTransform,
    cfg: RenderConfig,
    buf: HorizonBuffer,
    out: SegmentList,
) -> None:
    m, n = grid.m, grid.n
    dev_u, dev_v = transform.apply(u, v)
    dev_x = np.ascontiguousarray(dev_u.reshape(m, n))
    dev_y = np.ascontiguousarray(dev_v.reshape(m, n))
    valid = np.ascontiguousarray(grid.effective_mask())
    lead = ordering.leading_edge_array(m, n)
    patches = ordering.patch_order_array(cfg.ordering, m, n)
    capacity = (m + n - 2) + 2 * (m - 1) * (n - 1)
    rows = np.empty((capacity, 4), dtype=np.float64)
    count = _kernels.render_piece_arrays(
        dev_x, dev_y, valid, lead, patches, buf.max_y, buf.min_y, rows, 0
    )
    out.extend(SegmentList.from_array(rows[:count]))


def _draw_leading(
    grid: SurfaceGrid,
    dev_x: np.ndarray,
    dev_y: np.ndarray,
    valid: np.ndarray,
    buf: HorizonBuffer,
    out: SegmentList,
    edge_observer: EdgeObserver | None,
) -> None:
    """Leading-edge polyline split into unmasked runs; masked points break
    the polyline rather than bridging across the gap."""
    run: list[DevicePoint] = []
    for i_, j_ in ordering.leading_edge_sequence(grid.m, grid.n):
        i, j = i_ - 1, j_ - 1
        if valid[i, j]:
            run.append(DevicePoint(dev_x[i, j], dev_y[i, j]))
            continue
        _flush_leading_run(run, buf, out, edge_observer)
        run = []
    _flush_leading_run(run, buf, out, edge_observer)


def _flush_leading_run(
    run: list[DevicePoint],
    buf: HorizonBuffer,
    out: SegmentList,
    edge_observer: EdgeObserver | None,
) -> None:
    if not run:
        return
    if len(run) == 1:
        draw_leading_edges(run, buf, out)
        return
    for a, b in zip(run, run[1:]):
        if edge_observer is not None:
            edge_observer(a, b, buf, True)
        draw_leading_edges([a, b], buf, out)
