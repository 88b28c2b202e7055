"""Pedal, negative-pedal and polar triangles of a reference triangle.

Given a triangle ``ABC`` and a pedal point ``D`` that is neither on a side
line nor on the circumcircle, this module builds:

- the pedal triangle (feet of ``D`` on the sides) and its circumcircle,
  the pedal circle;
- the inconic focused at ``D``, negative pedal of the pedal circle;
- the negative-pedal triangle (sides through each vertex, perpendicular
  to the line joining it to ``D``) and its circumcircle;
- the polar triangle (poles of the sides with respect to an inversion
  circle centred at ``D``);
- the homothety report comparing the last two triangles.

Vertex correspondence: the derived vertex "opposite A" always comes from
side ``BC`` (foot on BC, pole of BC, intersection of the perpendiculars
at B and C). The ``*_vertices`` functions keep that order; the
triangle builders return counterclockwise ``Triangle`` objects, which swap
the last two labels when that order is clockwise.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from pedal_porism.duality import InversionCircle, negative_pedal_of_circle, pole_of_line
from pedal_porism.exceptions import (
    DegenerateOutput,
    DegenerateTriangle,
    GeometryError,
    ValidationError,
)
from pedal_porism.geometry import (
    Circle,
    Conic,
    Point,
    Tolerance,
    Triangle,
    circumcircle,
    foot_of_perpendicular,
    perpendicular_at,
)

FAR_VERTEX_FACTOR = 1e6
SIDE_NAMES = ("BC", "CA", "AB")


# Pedal configuration
###########################


@dataclass(frozen=True)
class PedalConfig:
    """Reference triangle with its pedal point.

    The tolerance defaults to the circumcircle diameter as scene length.

    Raises:
        ValidationError: If the pedal point lies on a side line or on the
            circumcircle. The error ``field_path`` is ``pedal_point``.
    """

    triangle: Triangle
    pedal_point: Point
    tol: Optional[Tolerance] = field(default=None, compare=False)

    def __post_init__(self):
        circle = circumcircle(self.triangle)
        if self.tol is None:
            object.__setattr__(self, "tol", Tolerance(scale=circle.diameter))

        for name, side in zip(SIDE_NAMES, self.triangle.sides()):
            if side.distance_to(self.pedal_point) <= self.tol.eps:
                raise ValidationError(
                    f"pedal point on side {name}", field_path="pedal_point"
                )
        if circle.defect(self.pedal_point) <= self.tol.eps:
            raise ValidationError("pedal point on circumcircle", field_path="pedal_point")

    @property
    def circumcircle(self) -> Circle:
        """Circumcircle of the reference triangle."""
        return circumcircle(self.triangle)

    @property
    def scene_diameter(self) -> float:
        """Scene length used for far-vertex rejection."""
        return self.circumcircle.diameter


def _as_triangle(vertices: List[Point], what: str) -> Triangle:
    try:
        return Triangle(*vertices)
    except DegenerateTriangle as err:
        raise DegenerateOutput(f"Degenerate {what} triangle: {err}") from err


# Pedal triangle and inconic
###########################


def pedal_vertices(cfg: PedalConfig) -> List[Point]:
    """Feet of the pedal point on BC, CA and AB, in that order."""
    return [foot_of_perpendicular(cfg.pedal_point, side) for side in cfg.triangle.sides()]


def pedal_triangle(cfg: PedalConfig) -> Triangle:
    """Triangle of the feet of the pedal point on the sides.

    Labels may differ from :func:`pedal_vertices` when that order is
    clockwise.

    Raises:
        DegenerateOutput: If the feet are collinear.
    """
    return _as_triangle(pedal_vertices(cfg), "pedal")


def pedal_circle(cfg: PedalConfig) -> Circle:
    """Circumcircle of the pedal triangle."""
    return circumcircle(pedal_triangle(cfg))


def inconic_focused(cfg: PedalConfig) -> Conic:
    """Inconic with a focus at the pedal point.

    It is the negative pedal of the pedal circle, tangent to the three
    side lines of the reference triangle.
    """
    return negative_pedal_of_circle(pedal_circle(cfg), cfg.pedal_point, tol=cfg.tol)


# Negative-pedal triangle
###########################


def negative_pedal_vertices(cfg: PedalConfig) -> List[Point]:
    """Vertices opposite A, B and C of the negative-pedal triangle.

    Raises:
        DegenerateOutput: If two perpendiculars are parallel, or meet
            farther than ``FAR_VERTEX_FACTOR`` scene diameters away.
    """
    perps = [
        perpendicular_at(vertex, cfg.pedal_point, tol=cfg.tol)
        for vertex in cfg.triangle.vertices
    ]
    limit = FAR_VERTEX_FACTOR * cfg.scene_diameter
    center = cfg.circumcircle.center
    vertices = []
    for idx in range(3):
        first, second = perps[(idx + 1) % 3], perps[(idx + 2) % 3]
        vertex = first.intersect(second)
        if vertex is None or vertex.distance_to(center) > limit:
            raise DegenerateOutput(
                f"Negative-pedal vertex {'ABC'[idx]}' is at infinity"
            )
        vertices.append(vertex)
    return vertices


def negative_pedal_triangle(cfg: PedalConfig) -> Triangle:
    """Triangle formed by the perpendiculars at each vertex to its line to D.

    Its pedal triangle with respect to D is the reference triangle. Labels
    may differ from :func:`negative_pedal_vertices`, see the module notes.
    """
    return _as_triangle(negative_pedal_vertices(cfg), "negative-pedal")


def negative_pedal_circle(cfg: PedalConfig) -> Circle:
    """Circumcircle of the negative-pedal triangle."""
    return circumcircle(negative_pedal_triangle(cfg))


# Polar triangle
###########################


def _check_inversion(cfg: PedalConfig, inv: InversionCircle) -> None:
    if inv.center.distance_to(cfg.pedal_point) > cfg.tol.eps:
        raise GeometryError(
            f"Inversion circle must be centred at the pedal point {cfg.pedal_point}"
        )


def polar_vertices(cfg: PedalConfig, inv: InversionCircle) -> List[Point]:
    """Poles of BC, CA and AB, in that order."""
    _check_inversion(cfg, inv)
    return [pole_of_line(side, inv, tol=cfg.tol) for side in cfg.triangle.sides()]


def polar_triangle(cfg: PedalConfig, inv: InversionCircle) -> Triangle:
    """Triangle of the poles of the sides.

    Its circumcircle is the inverse of the pedal circle, and its sides are
    the polars of the reference vertices. Use :func:`polar_vertices` for
    the label-stable order.

    Raises:
        LineThroughCenter: If a side passes through the pedal point.
    """
    return _as_triangle(polar_vertices(cfg, inv), "polar")


# Homothety
###########################


@dataclass(frozen=True)
class HomothetyReport:
    """Comparison of the negative-pedal and polar triangles.

    Attributes:
        parallel_defect (float): Largest sine of the angle between
            corresponding sides.
        ratios (tuple): Signed side ratios polar / negative-pedal, for the
            sides opposite A, B and C.
        ratio_spread (float): (max - min) / mean of the absolute ratios.
        circle_ratio (float): Circumradius ratio polar / negative-pedal.
        circle_ratio_gap (float): Relative gap between ``circle_ratio``
            and the mean absolute side ratio.
    """

    parallel_defect: float
    ratios: Tuple[float, float, float]
    ratio_spread: float
    circle_ratio: float
    circle_ratio_gap: float

    def passes(self, parallel_tol: float = 1e-9, spread_tol: float = 1e-7) -> bool:
        """True when the triangles are homothetic within tolerance."""
        return (
            self.parallel_defect <= parallel_tol
            and self.ratio_spread <= spread_tol
            and self.circle_ratio_gap <= spread_tol
        )

    def as_dict(self) -> dict:
        """Plain dictionary view for reports."""
        return {
            "parallel_defect": self.parallel_defect,
            "ratios": list(self.ratios),
            "ratio_spread": self.ratio_spread,
            "circle_ratio": self.circle_ratio,
            "circle_ratio_gap": self.circle_ratio_gap,
        }


def homothety_report(cfg: PedalConfig, inv: InversionCircle) -> HomothetyReport:
    """Measure how homothetic the negative-pedal and polar triangles are.

    Corresponding sides are those perpendicular to the same line from D to
    a reference vertex.
    """
    outer = negative_pedal_vertices(cfg)
    polar = polar_vertices(cfg, inv)

    parallel_defect = 0.0
    ratios = []
    for idx in range(3):
        nxt, prev = (idx + 1) % 3, (idx + 2) % 3
        outer_side = outer[prev] - outer[nxt]
        polar_side = polar[prev] - polar[nxt]
        parallel_defect = max(
            parallel_defect, abs(outer_side.unit().cross(polar_side.unit()))
        )
        ratios.append(polar_side.dot(outer_side) / outer_side.dot(outer_side))

    sizes = [abs(r) for r in ratios]
    mean = sum(sizes) / 3.0
    circle_ratio = (
        circumcircle(_as_triangle(polar, "polar")).radius
        / circumcircle(_as_triangle(outer, "negative-pedal")).radius
    )
    return HomothetyReport(
        parallel_defect=parallel_defect,
        ratios=tuple(ratios),
        ratio_spread=(max(sizes) - min(sizes)) / mean,
        circle_ratio=circle_ratio,
        circle_ratio_gap=abs(circle_ratio - mean) / mean,
    )
