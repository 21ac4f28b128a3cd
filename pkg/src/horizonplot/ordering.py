"""Patch enumeration orders that never draw an occluder after what it occludes.

With the observer's footprint southwest of the domain, a surface point can
only be hidden by points strictly to its southwest.  Any enumeration of the
grid patches that respects the componentwise partial order (i', j') <= (i, j)
is therefore safe to draw front to back.  Two such orders are provided; both
are exact permutations of the patch set.

Patch (i, j) is the cell whose northeast corner is grid sample (i, j), so
patch indices run 2..m by 2..n (1-based, matching sample indexing).
"""

from __future__ import annotations

from enum import Enum

import numpy as np


class OrderingStrategy(Enum):
    ROW_MAJOR_FRONT = "row"
    CANTOR_DIAGONAL = "cantor"


def row_major_order(m: int, n: int) -> list[tuple[int, int]]:
    """Front row first, then west to east within each row."""
    _check_counts(m, n)
    return [(i, j) for j in range(2, n + 1) for i in range(2, m + 1)]


def cantor_order(m: int, n: int) -> list[tuple[int, int]]:
    """Anti-diagonal sweep: increasing i + j, increasing i within a diagonal."""
    _check_counts(m, n)
    out = []
    for s in range(4, m + n + 1):
        for i in range(max(2, s - n), min(m, s - 2) + 1):
            out.append((i, s - i))
    return out


def leading_edge_sequence(m: int, n: int) -> list[tuple[int, int]]:
    """Down the west column, then east along the front row; m + n - 1 points.

    Joined consecutively these form the two leading edges of the surface,
    which are entirely visible from a southwest observer and seed the
    horizon band.
    """
    _check_counts(m, n)
    return [(1, j) for j in range(n, 0, -1)] + [(i, 1) for i in range(2, m + 1)]


def patch_order(strategy: OrderingStrategy, m: int, n: int) -> list[tuple[int, int]]:
    if strategy is OrderingStrategy.CANTOR_DIAGONAL:
        return cantor_order(m, n)
    return row_major_order(m, n)


def patch_order_array(strategy: OrderingStrategy, m: int, n: int) -> np.ndarray:
    """Same order as patch_order, as an (p, 2) int64 array of 0-based indices.

    Built vectorized so large grids do not pay per-patch Python overhead.
    """
    _check_counts(m, n)
    ii, jj = np.meshgrid(np.arange(1, m), np.arange(1, n), indexing="ij")
    ids = np.column_stack([ii.ravel(order="F"), jj.ravel(order="F")]).astype(np.int64)
    if strategy is OrderingStrategy.CANTOR_DIAGONAL:
        order = np.lexsort((ids[:, 0], ids[:, 0] + ids[:, 1]))
        ids = ids[order]
    return ids


def leading_edge_array(m: int, n: int) -> np.ndarray:
    """leading_edge_sequence as an (m + n - 1, 2) int64 array, 0-based."""
    _check_counts(m, n)
    left = np.column_stack([np.zeros(n, dtype=np.int64), np.arange(n - 1, -1, -1)])
    front = np.column_stack([np.arange(1, m, dtype=np.int64), np.zeros(m - 1, dtype=np.int64)])
    return np.vstack([left, front])


def _check_counts(m: int, n: int) -> None:
    if m < 2 or n < 2:
        raise ValueError(f"grid must be at least 2x2, got {m}x{n}")
