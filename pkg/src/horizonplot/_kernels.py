"""Compiled hot path for the per-patch drawing loop.

Mirrors horizon.py operation for operation (same expressions, same
evaluation order) so rendering through the kernel is bitwise identical to
the pure-Python reference; tests assert that equivalence.  Keep the two in
lockstep when touching either.

Each edge emits at most one segment, so the caller preallocates the output
as a (capacity, 4) array and gets the filled row count back.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

UNTOUCHED = -1.0


@njit(cache=True)
def _column_of(x: float, kx: int) -> int:
    k = int(math.floor(x + 0.5))
    if k < 0:
        return 0
    if k >= kx:
        return kx - 1
    return k


@njit(cache=True)
def _apply(max_y, min_y, k, y):
    if max_y[k] == UNTOUCHED:
        max_y[k] = y
        min_y[k] = y
        return
    if y > max_y[k]:
        max_y[k] = y
    if y < min_y[k]:
        min_y[k] = y


@njit(cache=True)
def _update_band(max_y, min_y, ax, ay, bx, by, kx):
    ka = _column_of(ax, kx)
    kb = _column_of(bx, kx)
    if ka == kb:
        _apply(max_y, min_y, ka, ay)
        _apply(max_y, min_y, ka, by)
        return
    if ka > kb:
        ax, ay, bx, by = bx, by, ax, ay
        ka, kb = kb, ka
    _apply(max_y, min_y, ka, ay)
    dx = bx - ax
    for k in range(ka + 1, kb):
        _apply(max_y, min_y, k, ay + (by - ay) * ((k - ax) / dx))
    _apply(max_y, min_y, kb, by)


@njit(cache=True)
def _set_span(max_y, min_y, ax, ay, bx, by, kx):
    ka = _column_of(ax, kx)
    kb = _column_of(bx, kx)
    if ka == kb:
        max_y[ka] = ay
        min_y[ka] = ay
        max_y[ka] = by
        min_y[ka] = by
        return
    if ka > kb:
        ax, ay, bx, by = bx, by, ax, ay
        ka, kb = kb, ka
    max_y[ka] = ay
    min_y[ka] = ay
    dx = bx - ax
    for k in range(ka + 1, kb):
        y = ay + (by - ay) * ((k - ax) / dx)
        max_y[k] = y
        min_y[k] = y
    max_y[kb] = by
    min_y[kb] = by


@njit(cache=True)
def _visible(max_y, min_y, x, y, kx) -> bool:
    k = _column_of(x, kx)
    return y >= max_y[k] or y <= min_y[k]


@njit(cache=True)
def _first_visible(max_y, min_y, ax, ay, bx, by, kx):
    """Returns (found, cx, cy); requires (ax, ay) hidden."""
    ka = _column_of(ax, kx)
    kb = _column_of(bx, kx)
    if ka != kb:
        step = 1 if kb > ka else -1
        dx = bx - ax
        k = ka + step
        while k != kb:
            y = ay + (by - ay) * ((k - ax) / dx)
            if y >= max_y[k] or y <= min_y[k]:
                return True, float(k), y
            k += step
    if _visible(max_y, min_y, bx, by, kx):
        return True, bx, by
    return False, 0.0, 0.0


@njit(cache=True)
def _draw_edge(max_y, min_y, ax, ay, bx, by, kx, out, n):
    va = _visible(max_y, min_y, ax, ay, kx)
    vb = _visible(max_y, min_y, bx, by, kx)
    if va and vb:
        out[n, 0] = ax
        out[n, 1] = ay
        out[n, 2] = bx
        out[n, 3] = by
        n += 1
        _update_band(max_y, min_y, ax, ay, bx, by, kx)
    elif va:
        found, cx, cy = _first_visible(max_y, min_y, bx, by, ax, ay, kx)
        if found:
            out[n, 0] = cx
            out[n, 1] = cy
            out[n, 2] = ax
            out[n, 3] = ay
            n += 1
            _update_band(max_y, min_y, cx, cy, ax, ay, kx)
    elif vb:
        found, cx, cy = _first_visible(max_y, min_y, ax, ay, bx, by, kx)
        if found:
            out[n, 0] = cx
            out[n, 1] = cy
            out[n, 2] = bx
            out[n, 3] = by
            n += 1
            _update_band(max_y, min_y, cx, cy, bx, by, kx)
    return n


@njit(cache=True)
def render_piece_arrays(dev_x, dev_y, valid, lead, patches, max_y, min_y, out, n):
    """Leading edges then ordered patch edges, masked edges suppressed.

    dev_x/dev_y: (m, n) device coordinates of every sample.
    valid: (m, n) membership mask.
    lead: (L, 2) 0-based sample indices of the leading-edge polyline.
    patches: (p, 2) 0-based patch corner indices in draw order.
    Returns the new segment count in out.
    """
    kx = len(max_y)
    npts = lead.shape[0]
    for t in range(npts):
        i0 = lead[t, 0]
        j0 = lead[t, 1]
        if not valid[i0, j0]:
            continue
        prev_ok = t > 0 and valid[lead[t - 1, 0], lead[t - 1, 1]]
        next_ok = t + 1 < npts and valid[lead[t + 1, 0], lead[t + 1, 1]]
        if next_ok:
            i1 = lead[t + 1, 0]
            j1 = lead[t + 1, 1]
            ax = dev_x[i0, j0]
            ay = dev_y[i0, j0]
            bx = dev_x[i1, j1]
            by = dev_y[i1, j1]
            out[n, 0] = ax
            out[n, 1] = ay
            out[n, 2] = bx
            out[n, 3] = by
            n += 1
            _set_span(max_y, min_y, ax, ay, bx, by, kx)
        elif not prev_ok:
            # Isolated point: no segment, but it still claims its column.
            ax = dev_x[i0, j0]
            ay = dev_y[i0, j0]
            _set_span(max_y, min_y, ax, ay, ax, ay, kx)
    for p in range(patches.shape[0]):
        i = patches[p, 0]
        j = patches[p, 1]
        ok = valid[i, j]
        if ok and valid[i - 1, j]:
            n = _draw_edge(max_y, min_y,
                           dev_x[i, j], dev_y[i, j],
                           dev_x[i - 1, j], dev_y[i - 1, j],
                           kx, out, n)
        if ok and valid[i, j - 1]:
            n = _draw_edge(max_y, min_y,
                           dev_x[i, j], dev_y[i, j],
                           dev_x[i, j - 1], dev_y[i, j - 1],
                           kx, out, n)
    return n
