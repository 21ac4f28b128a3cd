"""Surface constructors: convex-domain masking, sphere splitting, and the
builtin catalog used by the CLI and the render service.

A function over a convex region is drawn by extending it to the bounding
rectangle with an out-of-range sentinel height and masking the padding
samples; every edge touching a masked sample is suppressed at draw time, so
only the true surface is painted.  Multi-valued surfaces such as spheres are
split by a horizontal plane into single-valued sheets rendered through one
shared horizon band, nearest sheet first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import EmptySurface
from .grid import DomainRect, SurfaceGrid, sample_function

Membership = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ConvexMaskSpec:
    """Membership predicate for a convex region, with the sentinel height
    used at padding samples.  z0=None picks one safely above the sampled
    range; a supplied z0 must itself be out of range."""

    membership: Membership
    z0: float | None = None


def extend_convex_domain(
    f: Callable, domain: DomainRect, m: int, n: int, spec: ConvexMaskSpec
) -> SurfaceGrid:
    """Sample f over the rectangle, masking samples outside the region.

    Masked samples hold the sentinel height so the grid stays finite and
    rectangular; they are never drawn.  Raises EmptySurface when the region
    misses every sample.
    """
    base = sample_function(f, domain, m, n)
    xx, yy = np.meshgrid(base.xs, base.ys, indexing="ij")
    inside = np.asarray(spec.membership(xx, yy), dtype=bool)
    if inside.shape != base.z.shape:
        raise ValueError("membership predicate must evaluate elementwise")
    if not inside.any():
        raise EmptySurface("no grid sample lies inside the masked region")
    z_lo = float(base.z[inside].min())
    z_hi = float(base.z[inside].max())
    if spec.z0 is None:
        z0 = z_hi + 10.0 * (z_hi - z_lo + 1.0)
    else:
        z0 = float(spec.z0)
        if z_lo <= z0 <= z_hi:
            raise ValueError(f"sentinel height {z0:g} lies inside the sampled range")
    z = np.where(inside, base.z, z0)
    return SurfaceGrid(xs=base.xs, ys=base.ys, z=z, mask=inside)


def split_sphere(
    center: tuple[float, float, float],
    radius: float,
    m: int,
    n: int,
    view_height: float | None = None,
) -> tuple[SurfaceGrid, SurfaceGrid, bool]:
    """Split a sphere into upper and lower hemispheres over its disk.

    Both sheets are masked outside the disk and agree exactly on the
    equator.  The flag says whether the upper sheet should be drawn first,
    which is the case when the observer sits above the split plane (the
    default when no height is given).
    """
    if radius <= 0.0:
        raise ValueError(f"sphere radius must be positive, got {radius}")
    cx, cy, cz = (float(c) for c in center)
    r2 = radius * radius
    domain = DomainRect(cx - radius, cx + radius, cy - radius, cy + radius)

    def inside(x, y):
        return (x - cx) ** 2 + (y - cy) ** 2 <= r2

    def cap(x, y):
        rho2 = (x - cx) ** 2 + (y - cy) ** 2
        return np.sqrt(np.maximum(r2 - rho2, 0.0))

    spec_hi = ConvexMaskSpec(membership=inside)
    upper = extend_convex_domain(lambda x, y: cz + cap(x, y), domain, m, n, spec_hi)
    lower = extend_convex_domain(lambda x, y: cz - cap(x, y), domain, m, n, spec_hi)
    upper_first = True if view_height is None else view_height > cz
    return upper, lower, upper_first


# --- builtin catalog ---------------------------------------------------------


@dataclass(frozen=True)
class SurfaceSpec:
    """What to render: a builtin surface by name, with parameter overrides."""

    kind: str
    parameters: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class _Builtin:
    name: str
    defaults: dict[str, float]
    shared_band: bool = False


_CATALOG = [
    _Builtin("plane", {"ax": 0.0, "by": 0.0, "extent": 1.0}),
    _Builtin("saddle", {"extent": 1.0}),
    _Builtin("ripple", {"c": 10.0, "extent": 1.0}),
    _Builtin("gauss", {"c": 4.0, "extent": 1.0}),
    _Builtin("disk", {"radius": 1.0, "height": 1.0}),
    _Builtin("sphere", {"radius": 1.0}, shared_band=True),
]


def surface_catalog() -> list[dict]:
    """Stable listing of builtin names and their parameter defaults."""
    return [{"name": b.name, "parameters": dict(b.defaults)} for b in _CATALOG]


def build_surface(
    spec: SurfaceSpec, m: int, n: int, view_height: float | None = None
) -> tuple[list[SurfaceGrid], bool]:
    """Instantiate a builtin surface at the given sampling density.

    Returns the grids in draw order and whether they must share one horizon
    band (true only for multi-sheet surfaces).
    """
    builtin = next((b for b in _CATALOG if b.name == spec.kind), None)
    if builtin is None:
        known = ", ".join(b.name for b in _CATALOG)
        raise ValueError(f"unknown surface {spec.kind!r} (builtins: {known})")
    unknown = set(spec.parameters) - set(builtin.defaults)
    if unknown:
        raise ValueError(f"unknown parameters for {spec.kind!r}: {sorted(unknown)}")
    p = dict(builtin.defaults)
    p.update({k: float(v) for k, v in spec.parameters.items()})

    if spec.kind == "sphere":
        upper, lower, upper_first = split_sphere(
            (0.0, 0.0, 0.0), p["radius"], m, n, view_height
        )
        pieces = [upper, lower] if upper_first else [lower, upper]
        return pieces, True

    if spec.kind == "disk":
        radius = p["radius"]
        height = p["height"]
        domain = DomainRect(-radius, radius, -radius, radius)
        spec_mask = ConvexMaskSpec(membership=lambda x, y: x * x + y * y <= radius * radius)
        grid = extend_convex_domain(
            lambda x, y: height * (1.0 - (x * x + y * y) / (radius * radius)),
            domain, m, n, spec_mask,
        )
        return [grid], False

    extent = p["extent"]
    domain = DomainRect(-extent, extent, -extent, extent)
    if spec.kind == "plane":
        ax, by = p["ax"], p["by"]
        f = lambda x, y: ax * x + by * y + np.zeros_like(x)
    elif spec.kind == "saddle":
        f = lambda x, y: x * x - y * y
    elif spec.kind == "ripple":
        c = p["c"]

        def f(x, y):
            rho = c * np.sqrt(x * x + y * y)
            return np.where(rho > 0.0, np.divide(np.sin(rho), np.where(rho > 0.0, rho, 1.0)), 1.0)

    else:  # gauss
        c = p["c"]
        f = lambda x, y: np.exp(-c * (x * x + y * y))
    return [sample_function(f, domain, m, n)], False
