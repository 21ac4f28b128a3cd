"""Floating-horizon visibility: a per-device-column band and the segment drawer.

The drawn portion of the image is tracked by two piecewise-linear curves,
one entry of each per device column: max_y is the upper silhouette of
everything drawn so far, min_y the lower.  A point is visible exactly when
it lies on or outside the band (comparisons are non-strict; points on the
horizon must count visible or each edge would occlude its own endpoints).

Band updates take the pointwise union [min(min_y, y), max(max_y, y)] rather
than re-assigning a single curve.  The union resolves columns no curve has
touched yet and makes band growth monotone unconditionally; it can only
widen the hidden region, never shrink it.

Edges are classified by their endpoints only (the four-case rule); a mixed
edge is trimmed by walking device columns from the hidden end to the first
visible interpolated point.  This whole-segment assumption is the standard
floating-horizon approximation: thin spikes in the foreground can leak
hidden fragments, and the cure is a finer mesh, not extra geometry here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import numpy as np

# Framing keeps every device y >= 0, so -1 can never collide with drawn data.
UNTOUCHED = -1.0


class DevicePoint(NamedTuple):
    x: float
    y: float


@dataclass
class HorizonBuffer:
    """Max/Min curves sampled once per device column."""

    max_y: np.ndarray
    min_y: np.ndarray

    @property
    def kx(self) -> int:
        return len(self.max_y)

    def touched(self) -> np.ndarray:
        return self.max_y != UNTOUCHED

    def copy(self) -> "HorizonBuffer":
        return HorizonBuffer(self.max_y.copy(), self.min_y.copy())


class SegmentList:
    """Ordered list of drawn device-space segments.

    Backed by (n, 4) float64 blocks so bulk output from the compiled kernel
    costs one array hand-off; per-segment tuples are materialized only on
    indexed access.
    """

    __slots__ = ("_blocks", "_tail")

    def __init__(self, rows: Iterable[tuple[float, float, float, float]] = ()) -> None:
        self._blocks: list[np.ndarray] = []
        self._tail: list[tuple[float, float, float, float]] = [
            (float(r[0]), float(r[1]), float(r[2]), float(r[3])) for r in rows
        ]

    def append(self, a: DevicePoint, b: DevicePoint) -> None:
        self._tail.append((float(a.x), float(a.y), float(b.x), float(b.y)))

    def extend(self, other: "SegmentList") -> None:
        arr = other.as_array()
        if len(arr):
            self._blocks.append(arr.copy())

    def __len__(self) -> int:
        return sum(len(b) for b in self._blocks) + len(self._tail)

    def __getitem__(self, idx: int) -> tuple[DevicePoint, DevicePoint]:
        x1, y1, x2, y2 = self.as_array()[idx]
        return DevicePoint(float(x1), float(y1)), DevicePoint(float(x2), float(y2))

    def __iter__(self) -> Iterator[tuple[DevicePoint, DevicePoint]]:
        for x1, y1, x2, y2 in self.as_array().tolist():
            yield DevicePoint(x1, y1), DevicePoint(x2, y2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SegmentList):
            return NotImplemented
        return np.array_equal(self.as_array(), other.as_array())

    def __repr__(self) -> str:
        return f"SegmentList({len(self)} segments)"

    def as_array(self) -> np.ndarray:
        """All rows as one (n, 4) float64 array of x1 y1 x2 y2; treat as
        read-only, it may be the list's backing storage."""
        parts = list(self._blocks)
        if self._tail:
            parts.append(np.array(self._tail, dtype=np.float64).reshape(-1, 4))
        if not parts:
            return np.empty((0, 4), dtype=np.float64)
        merged = parts[0] if len(parts) == 1 else np.vstack(parts)
        self._blocks = [merged]
        self._tail = []
        return merged

    @classmethod
    def from_array(cls, rows: np.ndarray) -> "SegmentList":
        out = cls()
        arr = np.asarray(rows, dtype=np.float64).reshape(-1, 4)
        if len(arr):
            out._blocks.append(arr.copy())
        return out


def init_horizon(kx: int) -> HorizonBuffer:
    """Fresh band over kx device columns, all marked untouched."""
    if kx < 2:
        raise ValueError(f"device needs at least 2 columns, got {kx}")
    return HorizonBuffer(
        max_y=np.full(kx, UNTOUCHED, dtype=np.float64),
        min_y=np.full(kx, UNTOUCHED, dtype=np.float64),
    )


def column_of(x: float, kx: int) -> int:
    """Device column owning x: nearest integer, clamped to the device."""
    k = int(math.floor(x + 0.5))
    if k < 0:
        return 0
    if k >= kx:
        return kx - 1
    return k


def visible(c: DevicePoint, buf: HorizonBuffer) -> bool:
    """True when c lies on or outside the hidden band at its column."""
    k = column_of(c.x, buf.kx)
    return c.y >= buf.max_y[k] or c.y <= buf.min_y[k]


def first_visible(a: DevicePoint, b: DevicePoint, buf: HorizonBuffer) -> DevicePoint | None:
    """Walk from hidden a toward b one device column at a time; first point
    on the segment that tests visible, or None if every column is buried.

    Requires a hidden.  Interior candidates are the exact segment points at
    column stations, so trimmed sub-segments stay collinear with their
    parent edge; the final candidate is b itself.  When both endpoints
    share a column, b is the only candidate.
    """
    ka = column_of(a.x, buf.kx)
    kb = column_of(b.x, buf.kx)
    if ka != kb:
        step = 1 if kb > ka else -1
        dx = b.x - a.x
        for k in range(ka + step, kb, step):
            y = a.y + (b.y - a.y) * ((k - a.x) / dx)
            if y >= buf.max_y[k] or y <= buf.min_y[k]:
                return DevicePoint(float(k), y)
    return b if visible(b, buf) else None


def update_band(buf: HorizonBuffer, a: DevicePoint, b: DevicePoint) -> None:
    """Widen the band under a drawn segment.

    Every spanned column takes the pointwise max/min of its current values
    and the segment's y at that column station; untouched columns adopt y
    outright.  The endpoint columns take the exact endpoint values, so a
    later edge starting at b finds the band sitting exactly on b's y.
    """
    ka = column_of(a.x, buf.kx)
    kb = column_of(b.x, buf.kx)
    if ka == kb:
        _apply(buf, ka, a.y)
        _apply(buf, ka, b.y)
        return
    if ka > kb:
        a, b = b, a
        ka, kb = kb, ka
    _apply(buf, ka, a.y)
    dx = b.x - a.x
    for k in range(ka + 1, kb):
        _apply(buf, k, a.y + (b.y - a.y) * ((k - a.x) / dx))
    _apply(buf, kb, b.y)


def _apply(buf: HorizonBuffer, k: int, y: float) -> None:
    if buf.max_y[k] == UNTOUCHED:
        buf.max_y[k] = y
        buf.min_y[k] = y
        return
    if y > buf.max_y[k]:
        buf.max_y[k] = y
    if y < buf.min_y[k]:
        buf.min_y[k] = y


def draw_edge(a: DevicePoint, b: DevicePoint, buf: HorizonBuffer, out: SegmentList) -> None:
    """Draw the visible part of edge a-b and grow the band under it.

    Four cases on endpoint visibility: both visible draws the whole edge;
    both hidden draws nothing; mixed edges are trimmed at the first visible
    column walking in from the hidden end.
    """
    va = visible(a, buf)
    vb = visible(b, buf)
    if va and vb:
        out.append(a, b)
        update_band(buf, a, b)
    elif va:
        c = first_visible(b, a, buf)
        if c is not None:
            out.append(c, a)
            update_band(buf, c, a)
    elif vb:
        c = first_visible(a, b, buf)
        if c is not None:
            out.append(c, b)
            update_band(buf, c, b)
    # both hidden: nothing drawn, band unchanged


def draw_leading_edges(points: list[DevicePoint], buf: HorizonBuffer, out: SegmentList) -> None:
    """Draw a polyline that is known fully visible and collapse the band to it.

    Used for the two leading edges, which nothing can hide from a southwest
    observer.  Unlike update_band this assigns max_y = min_y = y outright:
    before any patch is drawn the covered region must have zero area.  A
    single point draws nothing but still claims its column.
    """
    if len(points) == 1:
        _set_span(buf, points[0], points[0])
        return
    for a, b in zip(points, points[1:]):
        out.append(a, b)
        _set_span(buf, a, b)


def _set_span(buf: HorizonBuffer, a: DevicePoint, b: DevicePoint) -> None:
    ka = column_of(a.x, buf.kx)
    kb = column_of(b.x, buf.kx)
    if ka == kb:
        buf.max_y[ka] = a.y
        buf.min_y[ka] = a.y
        buf.max_y[ka] = b.y
        buf.min_y[ka] = b.y
        return
    if ka > kb:
        a, b = b, a
        ka, kb = kb, ka
    buf.max_y[ka] = a.y
    buf.min_y[ka] = a.y
    dx = b.x - a.x
    for k in range(ka + 1, kb):
        y = a.y + (b.y - a.y) * ((k - a.x) / dx)
        buf.max_y[k] = y
        buf.min_y[k] = y
    buf.max_y[kb] = b.y
    buf.min_y[kb] = b.y
