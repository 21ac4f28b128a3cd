"""Independent brute-force checks the implementation is tested against.

Nothing here goes through the horizon band: visibility is decided by
point-in-union-of-quadrilaterals tests (crossing parity), and ordering
safety by an explicit prefix-maximum scan of the dominance rectangle.
"""

import numpy as np


def points_in_union(points: np.ndarray, quads: np.ndarray) -> np.ndarray:
    """Which points lie strictly inside the union of quadrilaterals.

    points: (p, 2); quads: (q, 4, 2) with vertices in boundary order.
    Crossing-parity test, vectorized over points x quads x edges.
    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if len(quads) == 0:
        return np.zeros(len(points), dtype=bool)
    quads = np.asarray(quads, dtype=np.float64).reshape(-1, 4, 2)
    px = points[:, None, None, 0]
    py = points[:, None, None, 1]
    v0 = quads[None, :, :, :]
    v1 = np.roll(quads, -1, axis=1)[None, :, :, :]
    x0, y0 = v0[..., 0], v0[..., 1]
    x1, y1 = v1[..., 0], v1[..., 1]
    straddles = (y0 > py) != (y1 > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        x_cross = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
    crossings = straddles & (px < x_cross)
    inside = crossings.sum(axis=2) % 2 == 1
    return inside.any(axis=1)


def dominance_violation_count(order: list[tuple[int, int]], m: int, n: int) -> int:
    """Violations of: every patch southwest of (i, j) precedes (i, j).

    Positions are scanned with a 2-D prefix maximum, so a patch passes
    exactly when its own position is the largest over its dominance
    rectangle.  Exhaustive and independent of how the order was built.
    """
    pos = np.full((m + 1, n + 1), -1, dtype=np.int64)
    for p, (i, j) in enumerate(order):
        pos[i, j] = p
    grid = pos[2:, 2:]
    prefix = np.maximum.accumulate(np.maximum.accumulate(grid, axis=0), axis=1)
    return int((prefix != grid).sum())


def polyline_length(points: np.ndarray) -> float:
    pts = np.asarray(points, dtype=np.float64)
    return float(np.sqrt(((pts[1:] - pts[:-1]) ** 2).sum(axis=1)).sum())


def segment_lengths(rows: np.ndarray) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.float64).reshape(-1, 4)
    return np.hypot(rows[:, 2] - rows[:, 0], rows[:, 3] - rows[:, 1])


def band_distance(x: float, y: float, max_y: np.ndarray, min_y: np.ndarray) -> float:
    """Vertical distance from (x, y) to the nearest band curve value over
    the point's column and immediate neighbors; inf if none is touched."""
    kx = len(max_y)
    k0 = int(np.floor(x + 0.5))
    best = np.inf
    for k in (k0 - 1, k0, k0 + 1):
        if 0 <= k < kx and max_y[k] != -1.0:
            best = min(best, abs(y - max_y[k]), abs(y - min_y[k]))
    return best
