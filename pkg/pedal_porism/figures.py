"""SVG figures of porism scenes.

A ``FigureSpec`` lists the scene objects to draw, the triangles to
construct and style overrides. Presets reproduce the usual pictures:

- ``pedal``: circumcircle, pedal circle, inconic, infertile arcs and two
  triangles of the pedal family;
- ``polar``: the same family with its polar triangles, the polar circle
  and the polar caustic;
- ``negative-pedal``: negative-pedal triangles with their circle and
  caustic;
- ``homothety``: the seed triangle with its negative-pedal and polar
  triangles and their circumcircles.

The seed triangle carries the scene labels at its vertices.

Output is SVG 1.1 built with ElementTree. Scene coordinates are used as
user units with the y axis flipped, and numbers are written with six
decimals so the same input always yields the same bytes.
"""

import json
import logging
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pedal_porism.exceptions import ConstructionError, ParseError, SceneError, ValidationError
from pedal_porism.geometry import TWO_PI, Circle, Conic, ConicKind, Point, Triangle
from pedal_porism.porism import Algorithm, FertileArcs, construct, fertile_arcs
from pedal_porism.scene import PorismScene

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"

CIRCLE_ELEMENTS = (
    "circumcircle",
    "pedal_circle",
    "polar_circle",
    "negative_pedal_circle",
)
CONIC_ELEMENTS = ("inconic", "polar_caustic", "negative_pedal_caustic")
TRIANGLE_ELEMENTS = (
    "seed_triangle",
    "pedal_triangle",
    "polar_triangle",
    "negative_pedal_triangle",
)
ELEMENTS = CIRCLE_ELEMENTS + CONIC_ELEMENTS + TRIANGLE_ELEMENTS + ("infertile_arcs", "pedal_point")

DEFAULT_STYLES: Dict[str, Dict[str, str]] = {
    "frame": {"fill": "white", "stroke": "#cccccc"},
    "axis": {"stroke": "#dddddd"},
    "circumcircle": {"fill": "none", "stroke": "black"},
    "pedal_circle": {"fill": "none", "stroke": "#1f77b4"},
    "polar_circle": {"fill": "none", "stroke": "#9467bd"},
    "negative_pedal_circle": {"fill": "none", "stroke": "#2ca02c"},
    "inconic": {"fill": "none", "stroke": "#d62728"},
    "polar_caustic": {"fill": "none", "stroke": "#8c564b"},
    "negative_pedal_caustic": {"fill": "none", "stroke": "#e377c2"},
    "infertile_arcs": {"fill": "none", "stroke": "#ff7f0e"},
    "seed_triangle": {"stroke": "black"},
    "family": {"stroke": "#17becf"},
    "companion": {"stroke": "#bcbd22"},
    "pedal_point": {"fill": "black"},
    "label": {"text-anchor": "middle", "dominant-baseline": "middle"},
}

# Relative to the scene diameter
CHORD_DEVIATION = 1e-3
STROKE_WIDTH = 3e-3
MARGIN = 0.1
LABEL_OFFSET = 0.08
LABEL_SIZE = 0.04


# Figure specification
###########################


@dataclass(frozen=True)
class TriangleRequest:
    """A triangle to construct: algorithm and start angle.

    A ``None`` start picks an angle automatically inside the fertile arcs.
    """

    algorithm: Algorithm
    start: Optional[float] = None


@dataclass
class FigureSpec:
    """What to draw and how.

    Attributes:
        show (list): Scene elements, from ``ELEMENTS``.
        triangles (list): Constructed triangles.
        styles (dict): SVG attribute overrides by element name.
        width (int): Output width in pixels.
    """

    show: List[str] = field(default_factory=list)
    triangles: List[TriangleRequest] = field(default_factory=list)
    styles: Dict[str, Dict[str, str]] = field(default_factory=dict)
    width: int = 800

    def __post_init__(self):
        for idx, name in enumerate(self.show):
            if name not in ELEMENTS:
                raise ParseError(f"Unknown element '{name}'", field_path=f"show[{idx}]")
        for idx, request in enumerate(self.triangles):
            if request.start is not None and not 0.0 <= request.start < TWO_PI:
                raise ValidationError(
                    f"Start angle must lie in [0, 2*pi), got: {request.start}",
                    field_path=f"triangles[{idx}].start",
                )

    @classmethod
    def parse_config(cls, value: Union[str, Dict[str, Any]]) -> "FigureSpec":
        """Parse a JSON figure description.

        Raises:
            ParseError: If the description is malformed.
            ValidationError: If a start angle is out of range.
        """
        if isinstance(value, str):
            try:
                value = json.loads(value)
            except json.JSONDecodeError as err:
                raise ParseError(
                    f"Invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}"
                ) from err
        if not isinstance(value, dict):
            raise ParseError(f"Expected a JSON object, got: {type(value).__name__}")

        show = value.get("show", [])
        if not isinstance(show, list) or not all(isinstance(s, str) for s in show):
            raise ParseError("Expected a list of element names", field_path="show")

        triangles = []
        for idx, item in enumerate(value.get("triangles", [])):
            if not isinstance(item, dict) or "algorithm" not in item:
                raise ParseError("Expected {algorithm, start}", field_path=f"triangles[{idx}]")
            start = item.get("start")
            if start is not None and (isinstance(start, bool) or not isinstance(start, (int, float))):
                raise ParseError("Expected a number", field_path=f"triangles[{idx}].start")
            try:
                algorithm = Algorithm.parse(item["algorithm"])
            except SceneError as err:
                raise ParseError(str(err), field_path=f"triangles[{idx}].algorithm") from err
            triangles.append(TriangleRequest(algorithm, None if start is None else float(start)))

        styles = value.get("styles", {})
        if not isinstance(styles, dict) or not all(isinstance(s, dict) for s in styles.values()):
            raise ParseError("Expected a mapping of attribute mappings", field_path="styles")

        width = value.get("width", 800)
        if isinstance(width, bool) or not isinstance(width, int) or width <= 0:
            raise ParseError("Expected a positive integer", field_path="width")
        return cls(show=list(show), triangles=triangles, styles=styles, width=width)

    def style(self, name: str) -> Dict[str, str]:
        """Default style of *name* merged with overrides."""
        ret = dict(DEFAULT_STYLES.get(name, {}))
        ret.update({k: str(v) for k, v in self.styles.get(name, {}).items()})
        return ret


PRESETS: Dict[str, FigureSpec] = {
    "pedal": FigureSpec(
        show=["circumcircle", "pedal_circle", "inconic", "infertile_arcs"],
        triangles=[TriangleRequest(Algorithm.PEDAL), TriangleRequest(Algorithm.PEDAL)],
    ),
    "polar": FigureSpec(
        show=["circumcircle", "pedal_circle", "polar_circle", "polar_caustic"],
        triangles=[TriangleRequest(Algorithm.POLAR), TriangleRequest(Algorithm.POLAR)],
    ),
    "negative-pedal": FigureSpec(
        show=[
            "circumcircle",
            "negative_pedal_circle",
            "negative_pedal_caustic",
            "infertile_arcs",
        ],
        triangles=[
            TriangleRequest(Algorithm.NEGATIVE_PEDAL),
            TriangleRequest(Algorithm.NEGATIVE_PEDAL),
        ],
    ),
    "homothety": FigureSpec(
        show=[
            "circumcircle",
            "seed_triangle",
            "negative_pedal_triangle",
            "polar_triangle",
            "negative_pedal_circle",
            "polar_circle",
        ],
    ),
}


# Rendering helpers
###########################


def _fmt(value: float) -> str:
    text = f"{value:.6f}"
    return "0.000000" if text == "-0.000000" else text


def _svg_xy(p: Point) -> Tuple[str, str]:
    return _fmt(p.x), _fmt(-p.y)


def _points_attr(points: Sequence[Point]) -> str:
    return " ".join(",".join(_svg_xy(p)) for p in points)


@dataclass(frozen=True)
class _Box:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    @classmethod
    def around(cls, points: Sequence[Point]) -> "_Box":
        return cls(
            min(p.x for p in points),
            min(p.y for p in points),
            max(p.x for p in points),
            max(p.y for p in points),
        )

    def grown(self, amount: float) -> "_Box":
        return _Box(self.xmin - amount, self.ymin - amount, self.xmax + amount, self.ymax + amount)

    def contains(self, p: Point) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin


def _circle_extent(circle: Circle) -> List[Point]:
    c, r = circle.center, circle.radius
    return [c + Point(r, r), c - Point(r, r)]


def _conic_extent(conic: Conic) -> List[Point]:
    """Bounding corners of an ellipse; unbounded conics add nothing."""
    if conic.kind not in (ConicKind.ELLIPSE, ConicKind.CIRCLE):
        return []
    axes = conic.axes()
    u, v = axes.direction, axes.direction.perp()
    half = Point(math.hypot(axes.a * u.x, axes.b * v.x), math.hypot(axes.a * u.y, axes.b * v.y))
    return [axes.center + half, axes.center - half]


def _adaptive_samples(curve, t0: float, t1: float, tolerance: float, depth: int = 12) -> List[Point]:
    """Sample *curve* on [t0, t1] until chords deviate less than *tolerance*."""
    seeds = [t0 + (t1 - t0) * i / 64.0 for i in range(65)]
    points = [curve(seeds[0])]
    for a, b in zip(seeds, seeds[1:]):
        points.extend(_refine(curve, a, b, curve(a), curve(b), tolerance, depth))
    return points


def _refine(curve, a, b, pa, pb, tolerance, depth) -> List[Point]:
    mid = 0.5 * (a + b)
    pm = curve(mid)
    chord = pb - pa
    length = chord.norm()
    deviation = abs(chord.cross(pm - pa)) / length if length > 0.0 else pm.distance_to(pa)
    if deviation <= tolerance or depth == 0:
        return [pb]
    return _refine(curve, a, mid, pa, pm, tolerance, depth - 1) + _refine(
        curve, mid, b, pm, pb, tolerance, depth - 1
    )


def _clip_runs(points: Sequence[Point], box: _Box) -> List[List[Point]]:
    """Split a polyline into the runs that stay inside *box*."""
    runs: List[List[Point]] = []
    current: List[Point] = []
    for p in points:
        if box.contains(p):
            current.append(p)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return [run for run in runs if len(run) > 1]


def conic_polylines(conic: Conic, box: _Box, tolerance: float) -> List[List[Point]]:
    """Sampled branches of *conic* clipped to *box*."""
    axes = conic.axes()
    if conic.kind in (ConicKind.ELLIPSE, ConicKind.CIRCLE):
        points = _adaptive_samples(conic.point_at, 0.0, TWO_PI, tolerance)
        return _clip_runs(points, box)

    reach = max(
        Point(x, y).distance_to(axes.center)
        for x in (box.xmin, box.xmax)
        for y in (box.ymin, box.ymax)
    )
    limit = math.acosh(max(reach / axes.a, 1.0)) + 1.0
    runs = []
    for branch in (1, -1):
        points = _adaptive_samples(
            lambda t, side=branch: conic.point_at(t, branch=side), -limit, limit, tolerance
        )
        runs.extend(_clip_runs(points, box))
    return runs


# Rendering
###########################


class FigureRenderer:
    """Render a scene and a FigureSpec into an SVG document."""

    def __init__(self, scene: PorismScene, spec: FigureSpec):
        self.scene = scene
        self.spec = spec
        self.diameter = scene.circumcircle.diameter
        self.arcs: Optional[FertileArcs] = None
        self.constructed: List[Tuple[TriangleRequest, Triangle, Optional[Triangle]]] = []

    def _fertile_arcs(self) -> FertileArcs:
        if self.arcs is None:
            self.arcs = fertile_arcs(self.scene.circumcircle, self.scene.inconic)
        return self.arcs

    def _auto_angles(self, count: int) -> List[float]:
        """Angles spread over the longest fertile interval."""
        arcs = self._fertile_arcs()
        if not arcs.intervals:
            return []
        start, end = max(arcs.intervals, key=lambda iv: iv[1] - iv[0])
        return [start + (end - start) * (idx + 1) / (count + 1) for idx in range(count)]

    def _construct_all(self) -> None:
        auto = [r for r in self.spec.triangles if r.start is None]
        auto_angles = iter(self._auto_angles(len(auto)))
        for request in self.spec.triangles:
            angle = request.start if request.start is not None else next(auto_angles, None)
            if angle is None:
                logger.warning("No fertile start for %s triangle", request.algorithm.value)
                continue
            try:
                result = construct(self.scene, request.algorithm, angle)
            except ConstructionError as err:
                logger.warning("Skipping %s triangle at %.6f: %s", request.algorithm.value, angle, err)
                continue
            self.constructed.append((request, result.triangle, result.companion))

    def _view_box(self) -> _Box:
        points = _circle_extent(self.scene.circumcircle) + [self.scene.pedal_point]
        for name in self.spec.show:
            if name in CIRCLE_ELEMENTS:
                points += _circle_extent(getattr(self.scene, name))
            elif name in CONIC_ELEMENTS:
                points += _conic_extent(getattr(self.scene, name))
            elif name in TRIANGLE_ELEMENTS:
                points += list(self._scene_triangle(name).vertices)
        for _, triangle, companion in self.constructed:
            points += list(triangle.vertices)
            if companion is not None:
                points += list(companion.vertices)
        box = _Box.around(points)
        return box.grown(MARGIN * max(box.width, box.height))

    def _scene_triangle(self, name: str) -> Triangle:
        if name == "seed_triangle":
            return self.scene.seed_triangle
        return getattr(self.scene, name)

    def _styled(self, parent: ET.Element, tag: str, style: str, **attrs: str) -> ET.Element:
        node = ET.SubElement(parent, tag, attrs)
        for key, value in self.spec.style(style).items():
            node.set(key, value)
        return node

    def _segment(self, parent: ET.Element, p: Point, q: Point, css: str, style: str) -> None:
        x1, y1 = _svg_xy(p)
        x2, y2 = _svg_xy(q)
        attrs = {"class": css, "x1": x1, "y1": y1, "x2": x2, "y2": y2}
        self._styled(parent, "line", style, **attrs)

    def _triangle(self, parent: ET.Element, triangle: Triangle, ident: str, style: str) -> None:
        group = ET.SubElement(parent, "g", {"id": ident, "class": "triangle"})
        verts = triangle.vertices
        for idx in range(3):
            self._segment(group, verts[idx], verts[(idx + 1) % 3], "edge", style)

    def _labels(self, parent: ET.Element, triangle: Triangle) -> None:
        """Vertex labels, pushed outward from the circumcenter."""
        center = self.scene.circumcircle.center
        for key, vertex in zip("ABC", triangle.vertices):
            text = self.scene.labels.get(key)
            if not text:
                continue
            at = vertex + (vertex - center) * LABEL_OFFSET
            x, y = _svg_xy(at)
            attrs = {"class": "label", "x": x, "y": y, "font-size": _fmt(LABEL_SIZE * self.diameter)}
            node = self._styled(parent, "text", "label", **attrs)
            node.text = text

    def render(self) -> ET.Element:
        """Build the SVG element tree."""
        self._construct_all()
        box = self._view_box()
        height = int(round(self.spec.width * box.height / box.width))
        root = ET.Element(
            "svg",
            {
                "xmlns": SVG_NS,
                "version": "1.1",
                "width": str(self.spec.width),
                "height": str(height),
                "viewBox": " ".join(_fmt(v) for v in (box.xmin, -box.ymax, box.width, box.height)),
                "stroke-width": _fmt(STROKE_WIDTH * self.diameter),
            },
        )
        self._styled(
            root,
            "rect",
            "frame",
            **{
                "class": "frame",
                "x": _fmt(box.xmin),
                "y": _fmt(-box.ymax),
                "width": _fmt(box.width),
                "height": _fmt(box.height),
            },
        )
        axes = []
        if box.ymin <= 0.0 <= box.ymax:
            axes.append((Point(box.xmin, 0.0), Point(box.xmax, 0.0)))
        if box.xmin <= 0.0 <= box.xmax:
            axes.append((Point(0.0, box.ymin), Point(0.0, box.ymax)))
        for start, end in axes:
            self._segment(root, start, end, "axis", "axis")

        tolerance = CHORD_DEVIATION * self.diameter
        for name in self.spec.show:
            if name in CIRCLE_ELEMENTS:
                circle = getattr(self.scene, name)
                cx, cy = _svg_xy(circle.center)
                attrs = {"class": name, "cx": cx, "cy": cy, "r": _fmt(circle.radius)}
                self._styled(root, "circle", name, **attrs)
            elif name in CONIC_ELEMENTS:
                group = ET.SubElement(
                    root, "g", {"id": name.replace("_", "-"), "class": "conic"}
                )
                for run in conic_polylines(getattr(self.scene, name), box, tolerance):
                    self._styled(group, "polyline", name, points=_points_attr(run))
            elif name in TRIANGLE_ELEMENTS:
                style = "seed_triangle" if name == "seed_triangle" else "companion"
                triangle = self._scene_triangle(name)
                self._triangle(root, triangle, name.replace("_", "-"), style)
                if name == "seed_triangle":
                    self._labels(root, triangle)
            elif name == "infertile_arcs":
                circle = self.scene.circumcircle
                for start, end in self._fertile_arcs().infertile_intervals():
                    points = _adaptive_samples(circle.point_at, start, end, tolerance)
                    attrs = {"class": "infertile-arc", "points": _points_attr(points)}
                    self._styled(root, "polyline", name, **attrs)

        counters: Dict[str, int] = {}
        for request, triangle, companion in self.constructed:
            prefix = request.algorithm.value.replace("_", "-")
            idx = counters.get(prefix, 0)
            counters[prefix] = idx + 1
            self._triangle(root, triangle, f"{prefix}-family-{idx}", "family")
            if companion is not None:
                self._triangle(root, companion, f"{prefix}-triangle-{idx}", "companion")

        if "pedal_point" in self.spec.show:
            size = 0.01 * self.diameter
            d = self.scene.pedal_point
            marker = [d + Point(size, 0.0), d + Point(0.0, size), d - Point(size, 0.0), d - Point(0.0, size)]
            self._styled(root, "polygon", "pedal_point", **{"class": "pedal-point", "points": _points_attr(marker)})
        return root


def render_svg(scene: PorismScene, spec: Optional[FigureSpec] = None) -> str:
    """SVG text of *scene* drawn according to *spec*."""
    root = FigureRenderer(scene, spec or FigureSpec()).render()
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def write_svg(scene: PorismScene, spec: Optional[FigureSpec], path: str) -> None:
    """Write the SVG of *scene* to *path*.

    Raises:
        OSError: If the file cannot be written.
    """
    text = render_svg(scene, spec)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    logger.info("Figure written to %s", path)
