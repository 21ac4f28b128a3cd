"""Sampled height fields over axis-aligned rectangles, and the viewpoint-
dependent transforms that prepare them for drawing.

A grid stores its sample coordinates explicitly.  Freshly sampled grids are
uniform, but domain partitioning may insert one column or row at an arbitrary
station, after which spacing is merely monotone; nothing downstream assumes
uniformity.  Heights are indexed z[i, j] for column i (x direction) and row j
(y direction), 0-based internally while the drawing order modules speak the
1-based (I, J) convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, TextIO

import numpy as np

from .errors import EmptySurface, NonFiniteSample, SplitTooClose
from .projection import Viewpoint


@dataclass(frozen=True)
class DomainRect:
    """Axis-aligned rectangle in the ground plane."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self) -> None:
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(f"degenerate domain {self}")

    @property
    def center(self) -> tuple[float, float]:
        return ((self.x_min + self.x_max) / 2.0, (self.y_min + self.y_max) / 2.0)

    def translated(self, dx: float, dy: float) -> "DomainRect":
        return DomainRect(self.x_min + dx, self.x_max + dx, self.y_min + dy, self.y_max + dy)


class ViewpointRegion(Enum):
    """Where the observer footprint sits relative to the domain (compass)."""

    SW = "SW"
    W = "W"
    NW = "NW"
    N = "N"
    NE = "NE"
    E = "E"
    SE = "SE"
    S = "S"
    INTERIOR = "Interior"

    @property
    def is_corner(self) -> bool:
        return self in (ViewpointRegion.SW, ViewpointRegion.NW,
                        ViewpointRegion.NE, ViewpointRegion.SE)


# Clockwise quarter turns that bring each corner footprint to the southwest,
# so the drawing core only ever handles one case.
ROTATION_FOR_CORNER = {
    ViewpointRegion.SW: 0,
    ViewpointRegion.SE: 1,
    ViewpointRegion.NE: 2,
    ViewpointRegion.NW: 3,
}


@dataclass
class SurfaceGrid:
    """Heights sampled over a rectangle, with an optional membership mask.

    mask[i, j] False marks a sample that pads the rectangle but is not part
    of the surface; edges touching such samples are suppressed at draw time.
    """

    xs: np.ndarray
    ys: np.ndarray
    z: np.ndarray
    mask: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.xs = np.asarray(self.xs, dtype=np.float64)
        self.ys = np.asarray(self.ys, dtype=np.float64)
        self.z = np.asarray(self.z, dtype=np.float64)
        if self.xs.ndim != 1 or self.ys.ndim != 1:
            raise ValueError("sample coordinates must be 1-D")
        if self.m < 2 or self.n < 2:
            raise ValueError(f"grid must be at least 2x2, got {self.m}x{self.n}")
        if self.z.shape != (self.m, self.n):
            raise ValueError(f"heights shaped {self.z.shape}, expected {(self.m, self.n)}")
        if np.any(np.diff(self.xs) <= 0) or np.any(np.diff(self.ys) <= 0):
            raise ValueError("sample coordinates must be strictly increasing")
        if self.mask is not None:
            self.mask = np.asarray(self.mask, dtype=bool)
            if self.mask.shape != self.z.shape:
                raise ValueError("mask shape must match heights")

    @property
    def m(self) -> int:
        return len(self.xs)

    @property
    def n(self) -> int:
        return len(self.ys)

    @property
    def domain(self) -> DomainRect:
        return DomainRect(float(self.xs[0]), float(self.xs[-1]),
                          float(self.ys[0]), float(self.ys[-1]))

    def effective_mask(self) -> np.ndarray:
        if self.mask is None:
            return np.ones(self.z.shape, dtype=bool)
        return self.mask

    def sample_points(self) -> np.ndarray:
        """All samples as an (m*n, 3) array, row index varying fastest."""
        xx, yy = np.meshgrid(self.xs, self.ys, indexing="ij")
        return np.column_stack([xx.ravel(), yy.ravel(), self.z.ravel()])


def sample_function(f: Callable, domain: DomainRect, m: int, n: int) -> SurfaceGrid:
    """Sample f(x, y) on a uniform m x n grid over the domain.

    f must accept numpy arrays (meshgrid evaluation).  Raises
    NonFiniteSample naming the first offending sample, 1-based.
    """
    if m < 2 or n < 2:
        raise ValueError(f"grid must be at least 2x2, got {m}x{n}")
    xs = np.linspace(domain.x_min, domain.x_max, m)
    ys = np.linspace(domain.y_min, domain.y_max, n)
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    with np.errstate(all="ignore"):
        z = np.asarray(f(xx, yy), dtype=np.float64)
    if z.shape != (m, n):
        z = np.broadcast_to(z, (m, n)).copy()
    bad = ~np.isfinite(z)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NonFiniteSample(
            f"f({xs[i]:g}, {ys[j]:g}) is not finite at sample (I={i + 1}, J={j + 1})"
        )
    return SurfaceGrid(xs=xs, ys=ys, z=z)


def normalize(grid: SurfaceGrid, view: Viewpoint) -> tuple[SurfaceGrid, Viewpoint]:
    """Translate the domain center to the origin, carrying the viewpoint along."""
    cx, cy = grid.domain.center
    if cx == 0.0 and cy == 0.0:
        return grid, view
    out = SurfaceGrid(xs=grid.xs - cx, ys=grid.ys - cy, z=grid.z, mask=grid.mask)
    return out, view.translated(-cx, -cy)


def classify_viewpoint(v0: tuple[float, float], domain: DomainRect) -> ViewpointRegion:
    """Compass region of the footprint.  "Outside" is strict, so a footprint
    exactly on a boundary line counts toward the edge or interior region."""
    v1, v2 = v0
    west = v1 < domain.x_min
    east = v1 > domain.x_max
    south = v2 < domain.y_min
    north = v2 > domain.y_max
    if west:
        if south:
            return ViewpointRegion.SW
        if north:
            return ViewpointRegion.NW
        return ViewpointRegion.W
    if east:
        if south:
            return ViewpointRegion.SE
        if north:
            return ViewpointRegion.NE
        return ViewpointRegion.E
    if south:
        return ViewpointRegion.S
    if north:
        return ViewpointRegion.N
    return ViewpointRegion.INTERIOR


def nearest_corner(v0: tuple[float, float], domain: DomainRect) -> ViewpointRegion:
    """Corner region by footprint quadrant relative to the domain center.

    Used when a partition split would land too close to the boundary and for
    assigning partition pieces the corner their footprint sits on.
    """
    cx, cy = domain.center
    east = v0[0] > cx
    north = v0[1] > cy
    if east:
        return ViewpointRegion.NE if north else ViewpointRegion.SE
    return ViewpointRegion.NW if north else ViewpointRegion.SW


def rotate_grid_quarter_turns(
    grid: SurfaceGrid, view: Viewpoint, k: int
) -> tuple[SurfaceGrid, Viewpoint]:
    """Rotate grid and viewpoint together by k clockwise quarter turns about
    the z-axis.  The rendered image is unchanged (simultaneous rotation
    leaves projections invariant); only index bookkeeping moves.
    """
    k = k % 4
    if k == 0:
        return grid, view
    xs, ys, z = grid.xs, grid.ys, grid.z
    mask = grid.mask
    if k == 1:  # (x, y) -> (y, -x)
        new = SurfaceGrid(
            xs=ys.copy(),
            ys=(-xs)[::-1].copy(),
            z=np.ascontiguousarray(z[::-1, :].T),
            mask=None if mask is None else np.ascontiguousarray(mask[::-1, :].T),
        )
        v1, v2 = view.v2, -view.v1
    elif k == 2:  # (x, y) -> (-x, -y)
        new = SurfaceGrid(
            xs=(-xs)[::-1].copy(),
            ys=(-ys)[::-1].copy(),
            z=np.ascontiguousarray(z[::-1, ::-1]),
            mask=None if mask is None else np.ascontiguousarray(mask[::-1, ::-1]),
        )
        v1, v2 = -view.v1, -view.v2
    else:  # k == 3, (x, y) -> (-y, x)
        new = SurfaceGrid(
            xs=(-ys)[::-1].copy(),
            ys=xs.copy(),
            z=np.ascontiguousarray(z[:, ::-1].T),
            mask=None if mask is None else np.ascontiguousarray(mask[:, ::-1].T),
        )
        v1, v2 = -view.v2, view.v1
    return new, Viewpoint(v1, v2, view.v3)


def partition_domain(
    grid: SurfaceGrid, v0: tuple[float, float], region: ViewpointRegion
) -> list[SurfaceGrid]:
    """Split the grid so the footprint lands on a corner of every piece.

    Edge regions split once (N/S at the vertical line x = v1, W/E at the
    horizontal line y = v2); the interior splits both ways into four pieces.
    A new sample column or row is interpolated at the split station unless it
    already lies on a grid line; adjacent pieces share the split-line samples
    exactly.  Piece order is fixed (west before east, south before north) for
    deterministic output.

    Raises SplitTooClose when a required split falls within half a cell of
    the domain boundary, where a piece would degenerate; callers fall back to
    treating the footprint as the nearest corner.
    """
    if region.is_corner:
        raise ValueError("corner footprints are handled by rotation, not partition")
    v1, v2 = v0
    if region in (ViewpointRegion.S, ViewpointRegion.N):
        return _split_axis(grid, v1, axis=0)
    if region in (ViewpointRegion.W, ViewpointRegion.E):
        return _split_axis(grid, v2, axis=1)
    # Interior: split west/east first, then each piece south/north.
    pieces = []
    for half in _split_axis(grid, v1, axis=0):
        pieces.extend(_split_axis(half, v2, axis=1))
    return pieces


def _split_axis(grid: SurfaceGrid, station: float, axis: int) -> list[SurfaceGrid]:
    coords = grid.xs if axis == 0 else grid.ys
    lo_gap = coords[0] + 0.5 * (coords[1] - coords[0])
    hi_gap = coords[-1] - 0.5 * (coords[-1] - coords[-2])
    if station < lo_gap or station > hi_gap:
        raise SplitTooClose(
            f"split at {station:g} is within half a cell of the domain edge"
        )
    widened, idx = _insert_line(grid, station, axis)
    if axis == 0:
        first = SurfaceGrid(xs=widened.xs[: idx + 1].copy(), ys=widened.ys,
                            z=widened.z[: idx + 1].copy(),
                            mask=None if widened.mask is None else widened.mask[: idx + 1].copy())
        second = SurfaceGrid(xs=widened.xs[idx:].copy(), ys=widened.ys,
                             z=widened.z[idx:].copy(),
                             mask=None if widened.mask is None else widened.mask[idx:].copy())
    else:
        first = SurfaceGrid(xs=widened.xs, ys=widened.ys[: idx + 1].copy(),
                            z=widened.z[:, : idx + 1].copy(),
                            mask=None if widened.mask is None else widened.mask[:, : idx + 1].copy())
        second = SurfaceGrid(xs=widened.xs, ys=widened.ys[idx:].copy(),
                             z=widened.z[:, idx:].copy(),
                             mask=None if widened.mask is None else widened.mask[:, idx:].copy())
    return [first, second]


def _insert_line(grid: SurfaceGrid, station: float, axis: int) -> tuple[SurfaceGrid, int]:
    """Grid with a sample line at the station (interpolated if absent) and
    the station's index along the split axis."""
    coords = grid.xs if axis == 0 else grid.ys
    exact = np.nonzero(coords == station)[0]
    if exact.size:
        return grid, int(exact[0])
    idx = int(np.searchsorted(coords, station))  # coords[idx-1] < station < coords[idx]
    t = (station - coords[idx - 1]) / (coords[idx] - coords[idx - 1])
    mask = grid.mask
    if axis == 0:
        line = (1.0 - t) * grid.z[idx - 1, :] + t * grid.z[idx, :]
        z = np.insert(grid.z, idx, line, axis=0)
        xs = np.insert(grid.xs, idx, station)
        new_mask = None
        if mask is not None:
            new_mask = np.insert(mask, idx, mask[idx - 1, :] & mask[idx, :], axis=0)
        return SurfaceGrid(xs=xs, ys=grid.ys, z=z, mask=new_mask), idx
    line = (1.0 - t) * grid.z[:, idx - 1] + t * grid.z[:, idx]
    z = np.insert(grid.z, idx, line, axis=1)
    ys = np.insert(grid.ys, idx, station)
    new_mask = None
    if mask is not None:
        new_mask = np.insert(mask, idx, mask[:, idx - 1] & mask[:, idx], axis=1)
    return SurfaceGrid(xs=grid.xs, ys=ys, z=z, mask=new_mask), idx


# --- grid file format -------------------------------------------------------
#
# Text header "grid M N xMin xMax yMin yMax" followed by N whitespace-
# separated rows of M heights, front row (J=1) first; NaN marks a sample
# outside the surface.

def write_grid_file(grid: SurfaceGrid, sink: TextIO) -> None:
    d = grid.domain
    sink.write(f"grid {grid.m} {grid.n} {d.x_min:.17g} {d.x_max:.17g} "
               f"{d.y_min:.17g} {d.y_max:.17g}\n")
    z = grid.z.copy()
    if grid.mask is not None:
        z[~grid.mask] = np.nan
    for j in range(grid.n):
        sink.write(" ".join(f"{z[i, j]:.17g}" for i in range(grid.m)) + "\n")


def read_grid_file(source: TextIO) -> SurfaceGrid:
    header = source.readline().split()
    if len(header) != 7 or header[0] != "grid":
        raise ValueError("expected header 'grid M N xMin xMax yMin yMax'")
    m, n = int(header[1]), int(header[2])
    x_min, x_max, y_min, y_max = (float(w) for w in header[3:7])
    if m < 2 or n < 2:
        raise ValueError(f"grid must be at least 2x2, got {m}x{n}")
    values = source.read().split()
    if len(values) != m * n:
        raise ValueError(f"expected {m * n} heights, found {len(values)}")
    z = np.empty((m, n), dtype=np.float64)
    pos = 0
    for j in range(n):
        for i in range(m):
            z[i, j] = float(values[pos])
            pos += 1
    mask = None
    holes = np.isnan(z)
    if holes.any():
        if holes.all():
            raise EmptySurface("every sample in the grid file is masked")
        mask = ~holes
    return SurfaceGrid(
        xs=np.linspace(x_min, x_max, m),
        ys=np.linspace(y_min, y_max, n),
        z=z,
        mask=mask,
    )
