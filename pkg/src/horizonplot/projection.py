"""Perspective projection onto the plane through the origin normal to the view ray.

The image plane carries an orthonormal frame (x_axis, y_axis) chosen so that
the vertical image axis is the perspective image of the world z-axis.  That
choice is what lets a height field's covered image region stay bounded by two
single-valued curves downstream, so it is load-bearing, not cosmetic.

For an observer V = (v1, v2, v3) with d = |V| and d1 = |(v1, v2)|:

    x_axis = (-v2, v1, 0) / d1
    y_axis = (-v1*v3, -v2*v3, d1^2) / (d * d1)

A point A images at B = V + r*(A - V) with r = d^2 / (d^2 - A.V), giving the
closed forms used here:

    u = r * (a2*v1 - a1*v2) / d1
    v = (v3 + r*(a3 - v3)) * d / d1
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import BehindEye, DegenerateViewpoint, PointAtEyePlane

# Relative d1/d threshold below which the observer counts as on the z-axis.
EPS_DEGENERATE = 1e-6
# Relative tolerance for the projection denominator d^2 - A.V.
EPS_RAY = 1e-12
# Points with r outside (0, R_MAX) are behind the eye or hugging its plane.
R_MAX = 1e6


@dataclass(frozen=True)
class Viewpoint:
    """Observer position with its cached norms.

    ``d`` is the distance to the origin and ``d1`` the distance of the
    footprint (v1, v2, 0) to the origin; both are derived, not supplied.
    """

    v1: float
    v2: float
    v3: float
    d: float = field(init=False)
    d1: float = field(init=False)

    def __post_init__(self) -> None:
        v1 = float(self.v1)
        v2 = float(self.v2)
        v3 = float(self.v3)
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)
        object.__setattr__(self, "v3", v3)
        d = math.sqrt(v1 * v1 + v2 * v2 + v3 * v3)
        if d == 0.0:
            raise DegenerateViewpoint("viewpoint at the origin")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "d1", math.sqrt(v1 * v1 + v2 * v2))

    @property
    def footprint(self) -> tuple[float, float]:
        """Vertical projection (v1, v2) onto the ground plane."""
        return (self.v1, self.v2)

    @property
    def on_z_axis(self) -> bool:
        return self.d1 < EPS_DEGENERATE * self.d

    def nudged_off_axis(self) -> "Viewpoint":
        """Replacement for an observer sitting on the z-axis.

        Moves the footprint to (2 * EPS_DEGENERATE * d, v2); the factor two
        keeps the result clear of the degeneracy threshold, which a nudge of
        exactly EPS_DEGENERATE * d would touch.  Deterministic so a given
        degenerate viewpoint always renders the same picture.
        """
        return Viewpoint(2.0 * EPS_DEGENERATE * self.d, self.v2, self.v3)

    def translated(self, dx: float, dy: float) -> "Viewpoint":
        return Viewpoint(self.v1 + dx, self.v2 + dy, self.v3)

    def as_array(self) -> np.ndarray:
        return np.array([self.v1, self.v2, self.v3], dtype=np.float64)


@dataclass(frozen=True)
class ProjectionBasis:
    """Orthonormal frame on the image plane; y_axis images the world z-axis."""

    x_axis: np.ndarray
    y_axis: np.ndarray


class ImagePoint(NamedTuple):
    u: float
    v: float


def basis_from_viewpoint(view: Viewpoint) -> ProjectionBasis:
    """Build the image-plane frame for a viewpoint.

    Raises DegenerateViewpoint when the observer is on the z-axis (d1
    vanishes relative to d); callers should substitute
    ``view.nudged_off_axis()`` and retry.
    """
    if view.on_z_axis:
        raise DegenerateViewpoint(
            f"viewpoint ({view.v1}, {view.v2}, {view.v3}) is on the z-axis; "
            "nudge it off-axis before projecting"
        )
    x_axis = np.array([-view.v2 / view.d1, view.v1 / view.d1, 0.0])
    y_axis = np.array(
        [-view.v1 * view.v3, -view.v2 * view.v3, view.d1 * view.d1]
    ) / (view.d * view.d1)
    return ProjectionBasis(x_axis=x_axis, y_axis=y_axis)


def project_point(point, view: Viewpoint) -> ImagePoint:
    """Project one world point to image coordinates (u, v).

    The basis is implicit: the closed forms above already encode it, so no
    frame object needs to be threaded through.  Raises PointAtEyePlane when
    the denominator vanishes and BehindEye when r falls outside (0, R_MAX).
    """
    a1, a2, a3 = (float(point[0]), float(point[1]), float(point[2]))
    if view.on_z_axis:
        raise DegenerateViewpoint("viewpoint on the z-axis; nudge before projecting")
    d2 = view.d * view.d
    denom = d2 - (a1 * view.v1 + a2 * view.v2 + a3 * view.v3)
    if abs(denom) < EPS_RAY * d2:
        raise PointAtEyePlane(f"point ({a1}, {a2}, {a3}) lies on the eye plane")
    r = d2 / denom
    if r <= 0.0 or r >= R_MAX:
        raise BehindEye(f"point ({a1}, {a2}, {a3}) projects with r={r:g}")
    u = r * (a2 * view.v1 - a1 * view.v2) / view.d1
    v = (view.v3 + r * (a3 - view.v3)) * view.d / view.d1
    return ImagePoint(u, v)


def project_points(points: np.ndarray, view: Viewpoint) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Project an (n, 3) array of points; returns (u, v, r) arrays.

    No range policing is applied here: callers inspect r themselves, which
    lets the pipeline distinguish "everything behind the eye" from "one bad
    sample".  The arithmetic matches project_point term for term so scalar
    and batched projections agree bitwise.
    """
    if view.on_z_axis:
        raise DegenerateViewpoint("viewpoint on the z-axis; nudge before projecting")
    pts = np.asarray(points, dtype=np.float64)
    d2 = view.d * view.d
    denom = d2 - (pts[:, 0] * view.v1 + pts[:, 1] * view.v2 + pts[:, 2] * view.v3)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = d2 / denom
        u = r * (pts[:, 1] * view.v1 - pts[:, 0] * view.v2) / view.d1
        v = (view.v3 + r * (pts[:, 2] - view.v3)) * view.d / view.d1
    return u, v, r
