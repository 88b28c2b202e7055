"""
Inversive Duality Module

Circle inversion and the pole/polar correspondence with respect to an
inversion circle centred at the pedal point, the polar dual of a conic,
and the closed form of the negative pedal of a circle.

The negative pedal of a circle ``c`` with respect to ``d`` is the conic
centred at the center of ``c`` with a focus at ``d``, its focal axis along
the diameter through ``d`` and its semi-major axis equal to the radius.
It equals the polar dual of the inverse of ``c``, whatever the inversion
radius.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from pedal_porism.exceptions import (
    CenterInversion,
    DegenerateConic,
    LineThroughCenter,
    NonFiniteValue,
    PointOnCircle,
)
from pedal_porism.geometry import (
    DEFAULT_TOLERANCE,
    Circle,
    Conic,
    Line,
    Point,
    Tolerance,
    conic_from_matrix,
)

# Inversion circle
###########################


@dataclass(frozen=True)
class InversionCircle:
    """Inversion circle of center D and squared radius k**2."""

    center: Point
    radius_sq: float = 1.0

    def __post_init__(self):
        radius_sq = float(self.radius_sq)
        if not math.isfinite(radius_sq) or radius_sq <= 0.0:
            raise NonFiniteValue(
                f"Inversion radius_sq must be positive and finite, got: {radius_sq}"
            )
        object.__setattr__(self, "radius_sq", radius_sq)

    @property
    def radius(self) -> float:
        """Inversion radius k."""
        return math.sqrt(self.radius_sq)


# Public API
# ===============


def invert_point(
    p: Point, inv: InversionCircle, tol: Tolerance = DEFAULT_TOLERANCE
) -> Point:
    """Inverse of *p*: same ray from the center, distances multiplying to k**2.

    Raises:
        CenterInversion: If *p* is the inversion center.
    """
    offset = p - inv.center
    dist_sq = offset.dot(offset)
    if math.sqrt(dist_sq) <= tol.eps:
        raise CenterInversion(f"Cannot invert the inversion center {inv.center}")
    return inv.center + offset * (inv.radius_sq / dist_sq)


def invert_circle(
    c: Circle, inv: InversionCircle, tol: Tolerance = DEFAULT_TOLERANCE
) -> Union[Circle, Line]:
    """Inverse of a circle: a circle, or a line when *c* passes through D."""
    offset = c.center - inv.center
    dist = offset.norm()
    if abs(dist - c.radius) <= tol.eps:
        # Through the center: the image is the line (X - D).u = k**2 / (2r)
        normal = offset.unit()
        return Line(
            normal.x,
            normal.y,
            -(normal.dot(inv.center) + inv.radius_sq / (2.0 * c.radius)),
        )
    factor = inv.radius_sq / (dist * dist - c.radius**2)
    return Circle(inv.center + offset * factor, abs(factor) * c.radius)


def polar_of_point(
    p: Point, inv: InversionCircle, tol: Tolerance = DEFAULT_TOLERANCE
) -> Line:
    """Polar line ``{X : (X - D).(p - D) = k**2}`` of *p*.

    Raises:
        CenterInversion: If *p* is the inversion center.
    """
    normal = p - inv.center
    if normal.norm() <= tol.eps:
        raise CenterInversion(f"The inversion center {inv.center} has no polar")
    return Line(normal.x, normal.y, -(normal.dot(inv.center) + inv.radius_sq))


def pole_of_line(
    line: Line, inv: InversionCircle, tol: Tolerance = DEFAULT_TOLERANCE
) -> Point:
    """Pole of *line*, the point whose polar is *line*.

    Raises:
        LineThroughCenter: If *line* passes through the inversion center.
    """
    dist = line.value(inv.center)
    if abs(dist) <= tol.eps:
        raise LineThroughCenter(f"Line through the inversion center: {line}")
    return inv.center - line.normal * (inv.radius_sq / dist)


def dual_of_conic(
    k: Conic, inv: InversionCircle, tol: Tolerance = DEFAULT_TOLERANCE
) -> Conic:
    """Polar dual of a conic: the locus of the poles of its tangents.

    Computed as ``B adj(M) B`` where ``B`` is the inversion circle matrix,
    in a frame centred at D and moved back afterwards.

    Raises:
        DegenerateConic: If *k* is degenerate.
    """
    k.require_nondegenerate()
    # Global to D-centred coordinates
    to_local = np.array(
        [
            [1.0, 0.0, -inv.center.x],
            [0.0, 1.0, -inv.center.y],
            [0.0, 0.0, 1.0],
        ]
    )
    local_adj = to_local @ k.adjugate() @ to_local.T
    frame = np.diag([1.0, 1.0, -inv.radius_sq])
    dual = to_local.T @ frame @ local_adj @ frame @ to_local
    return conic_from_matrix(dual, tol=tol)


def negative_pedal_of_circle(
    c: Circle, d: Point, tol: Tolerance = DEFAULT_TOLERANCE
) -> Conic:
    """Envelope of the perpendiculars at P to PD, for P on *c*.

    The result is centred at the circle center with a focus at *d*: an
    ellipse when *d* is inside *c*, a hyperbola outside, *c* itself when
    *d* is the center.

    Raises:
        PointOnCircle: If *d* lies on *c*.
    """
    offset = d - c.center
    spread = offset.norm()
    if abs(spread - c.radius) <= tol.eps:
        raise PointOnCircle(f"Pedal point {d} lies on the circle {c}")
    direction = offset.unit() if spread > tol.eps else Point(1.0, 0.0)
    b_sq = c.radius**2 - spread**2
    if b_sq == 0.0:
        raise DegenerateConic(f"Negative pedal of {c} collapses")
    return Conic.from_axes(c.center, direction, c.radius, b_sq, tol=tol)
