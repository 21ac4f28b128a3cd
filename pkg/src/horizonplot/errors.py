"""Failure types for the render pipeline.

Every exception carries a ``stage`` tag naming the pipeline phase it belongs
to, so front ends (CLI, HTTP service) can report where a render failed
without string-matching messages.
"""


class RenderError(Exception):
    """Base class for all rendering failures."""

    stage = "render"


class DegenerateViewpoint(RenderError):
    """Viewpoint on (or at) the z-axis: no horizontal image axis exists."""

    stage = "projection"


class PointAtEyePlane(RenderError):
    """Point lies on the plane through the eye parallel to the image plane."""

    stage = "projection"


class BehindEye(RenderError):
    """Point projects behind the observer or unboundedly close to the eye plane."""

    stage = "projection"


class NonFiniteSample(RenderError):
    """Height function produced NaN or infinity at a grid sample."""

    stage = "sampling"


class EmptySurface(RenderError):
    """Masked sampling left no sample inside the surface."""

    stage = "masking"


class SplitTooClose(RenderError):
    """Partition line falls within half a grid cell of the domain edge."""

    stage = "partition"


class DegenerateImage(RenderError):
    """Projected image has zero extent in both axes; nothing to frame."""

    stage = "framing"


class EmptyRender(RenderError):
    """Every sample point projects behind the observer."""

    stage = "render"
