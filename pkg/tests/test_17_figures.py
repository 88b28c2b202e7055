"""
Unit tests for figure specifications and SVG rendering.
"""

import logging
import xml.etree.ElementTree as ET

import pytest

from pedal_porism.exceptions import ParseError, ValidationError
from pedal_porism.figures import (
    PRESETS,
    FigureSpec,
    _Box,
    conic_polylines,
    render_svg,
    write_svg,
)
from pedal_porism.geometry import ConicKind, Point
from pedal_porism.porism import Algorithm, fertile_arcs
from pedal_porism.scene import PorismScene

NS = {"svg": "http://www.w3.org/2000/svg"}

PEDAL_FIGURE = {
    "show": ["circumcircle", "pedal_circle", "inconic"],
    "triangles": [
        {"algorithm": "pedal", "start": 0.5},
        {"algorithm": "pedal", "start": 2.0},
    ],
}


def parse(text):
    """Root element of an SVG document."""
    return ET.fromstring(text)


def by_class(root, css):
    """Every element of *root* with the given class."""
    return [node for node in root.iter() if node.get("class") == css]


def group(root, ident):
    """The group with id *ident*."""
    return root.find(f".//svg:g[@id='{ident}']", NS)


def edge_directions(node):
    """Direction vectors of the edges of a triangle group."""
    ret = []
    for line in node.findall("svg:line", NS):
        x1, y1, x2, y2 = (float(line.get(k)) for k in ("x1", "y1", "x2", "y2"))
        ret.append(Point(x2 - x1, y2 - y1))
    return ret


class TestFigureSpec:
    """Tests for figure descriptions."""

    def test_parse(self):
        """Algorithms and starts are read."""
        spec = FigureSpec.parse_config(PEDAL_FIGURE)
        assert spec.show == ["circumcircle", "pedal_circle", "inconic"]
        assert [r.algorithm for r in spec.triangles] == [Algorithm.PEDAL, Algorithm.PEDAL]
        assert spec.triangles[1].start == 2.0
        assert spec.width == 800

    def test_auto_start(self):
        """A missing start is left for the renderer."""
        spec = FigureSpec.parse_config('{"triangles": [{"algorithm": "polar"}]}')
        assert spec.triangles[0].start is None

    @pytest.mark.parametrize(
        "content,field_path",
        [
            ({"show": ["circumcircle", "ellipse"]}, "show[1]"),
            ({"show": "circumcircle"}, "show"),
            ({"triangles": [{"start": 1.0}]}, "triangles[0]"),
            ({"triangles": [{"algorithm": "orthic"}]}, "triangles[0].algorithm"),
            ({"triangles": [{"algorithm": "pedal", "start": "1"}]}, "triangles[0].start"),
            ({"styles": {"inconic": "red"}}, "styles"),
            ({"width": 0}, "width"),
        ],
    )
    def test_parse_errors(self, content, field_path):
        """Malformed descriptions name the offending field."""
        with pytest.raises(ParseError) as info:
            FigureSpec.parse_config(content)
        assert info.value.field_path == field_path

    def test_start_range(self):
        """Start angles must lie in [0, 2*pi)."""
        with pytest.raises(ValidationError) as info:
            FigureSpec.parse_config({"triangles": [{"algorithm": "pedal", "start": 7.0}]})
        assert info.value.field_path == "triangles[0].start"

    def test_style_override(self):
        """Overrides are merged over the defaults."""
        spec = FigureSpec.parse_config({"styles": {"inconic": {"stroke": "red", "opacity": 0.5}}})
        assert spec.style("inconic") == {"fill": "none", "stroke": "red", "opacity": "0.5"}
        assert spec.style("unknown") == {}


class TestRender:
    """Tests for SVG output."""

    def test_pedal_figure(self, equilateral_scene):
        """Two circles, one inconic and two triangles."""
        root = parse(render_svg(equilateral_scene, FigureSpec.parse_config(PEDAL_FIGURE)))
        assert root.tag == "{http://www.w3.org/2000/svg}svg"
        assert len(root.findall("svg:circle", NS)) == 2
        assert len(group(root, "inconic").findall("svg:polyline", NS)) == 1
        assert len(by_class(root, "edge")) == 6
        assert group(root, "pedal-family-0") is not None
        assert group(root, "pedal-family-1") is not None

    def test_deterministic(self, hyperbolic_scene):
        """The same input gives the same bytes."""
        spec = PRESETS["pedal"]
        assert render_svg(hyperbolic_scene, spec) == render_svg(hyperbolic_scene, spec)

    def test_empty(self, equilateral_scene):
        """Without content only the frame and the axes are drawn."""
        root = parse(render_svg(equilateral_scene))
        assert len(by_class(root, "frame")) == 1
        assert len(by_class(root, "axis")) == 2
        assert len(list(root)) == 3

    def test_large_caustic_in_view(self, equilateral_triangle):
        """An ellipse reaching past the circumcircle stays whole in the view box."""
        scene = PorismScene.from_triangle(
            equilateral_triangle, Point(0.0, 0.5), inversion_radius_sq=4.0
        )
        caustic = scene.polar_caustic
        assert caustic.kind == ConicKind.ELLIPSE
        assert caustic.axes().a == pytest.approx(16.0 / 3.0)
        root = parse(render_svg(scene, FigureSpec(show=["polar_caustic"])))
        runs = group(root, "polar-caustic").findall("svg:polyline", NS)
        assert len(runs) == 1
        xmin, ymin, width, height = (float(v) for v in root.get("viewBox").split())
        for pair in runs[0].get("points").split():
            x, y = (float(v) for v in pair.split(","))
            assert xmin <= x <= xmin + width
            assert ymin <= y <= ymin + height

    def test_circle_attributes(self, equilateral_scene):
        """Circles use scene units with the y axis flipped."""
        spec = FigureSpec(show=["pedal_circle"])
        circle = parse(render_svg(equilateral_scene, spec)).find("svg:circle", NS)
        assert circle.get("class") == "pedal_circle"
        assert circle.get("cx") == "0.000000"
        assert circle.get("cy") == "0.000000"
        assert circle.get("r") == "0.500000"

    @pytest.mark.parametrize("name", list(PRESETS))
    def test_presets(self, hyperbolic_scene, name):
        """Every preset renders."""
        root = parse(render_svg(hyperbolic_scene, PRESETS[name]))
        assert by_class(root, "frame")

    def test_infertile_arcs(self, hyperbolic_scene):
        """The pedal preset marks the infertile arcs."""
        root = parse(render_svg(hyperbolic_scene, PRESETS["pedal"]))
        arcs = fertile_arcs(hyperbolic_scene.circumcircle, hyperbolic_scene.inconic)
        assert len(by_class(root, "infertile-arc")) == len(arcs.infertile_intervals())
        assert group(root, "pedal-family-1") is not None

    def test_companions(self, hyperbolic_scene):
        """Polar triangles are drawn next to their family triangles."""
        root = parse(render_svg(hyperbolic_scene, PRESETS["polar"]))
        for idx in range(2):
            assert group(root, f"polar-family-{idx}") is not None
            assert group(root, f"polar-triangle-{idx}") is not None

    def test_homothety_parallel(self, hyperbolic_scene):
        """Negative-pedal and polar triangles have parallel sides."""
        root = parse(render_svg(hyperbolic_scene, PRESETS["homothety"]))
        outer = edge_directions(group(root, "negative-pedal-triangle"))
        polar = edge_directions(group(root, "polar-triangle"))
        for edge in outer:
            cross = min(abs(edge.cross(other)) / (edge.norm() * other.norm()) for other in polar)
            assert cross < 1e-4

    def test_infertile_start_skipped(self, hyperbolic_scene, caplog):
        """An explicit infertile start is skipped with a warning."""
        arcs = fertile_arcs(hyperbolic_scene.circumcircle, hyperbolic_scene.inconic)
        start, end = max(arcs.infertile_intervals(), key=lambda iv: iv[1] - iv[0])
        spec = FigureSpec.parse_config(
            {"triangles": [{"algorithm": "pedal", "start": 0.5 * (start + end)}]}
        )
        with caplog.at_level(logging.WARNING, logger="pedal_porism.figures"):
            root = parse(render_svg(hyperbolic_scene, spec))
        assert group(root, "pedal-family-0") is None
        assert "Skipping pedal triangle" in caplog.text

    def test_labels(self, right_triangle):
        """Seed vertices carry the scene labels."""
        scene = PorismScene.from_triangle(
            right_triangle, Point(1.0, 1.0), labels={"A": "P", "C": "R"}
        )
        root = parse(render_svg(scene, FigureSpec(show=["seed_triangle"])))
        assert [node.text for node in by_class(root, "label")] == ["P", "R"]

    def test_no_labels(self, equilateral_scene):
        """Scenes without labels draw no text."""
        root = parse(render_svg(equilateral_scene, PRESETS["homothety"]))
        assert not by_class(root, "label")

    def test_pedal_point_marker(self, equilateral_scene):
        """The pedal point is drawn only on request."""
        root = parse(render_svg(equilateral_scene, FigureSpec(show=["pedal_point"])))
        assert len(by_class(root, "pedal-point")) == 1

    def test_write(self, equilateral_scene, tmp_path):
        """The file holds the rendered text."""
        target = tmp_path / "figure.svg"
        write_svg(equilateral_scene, PRESETS["pedal"], str(target))
        assert target.read_text(encoding="utf-8") == render_svg(equilateral_scene, PRESETS["pedal"])


class TestConicPolylines:
    """Tests for conic sampling."""

    def test_circle_single_run(self, equilateral_scene):
        """A conic inside the box is one closed run."""
        runs = conic_polylines(equilateral_scene.inconic, _Box(-1.0, -1.0, 1.0, 1.0), 1e-3)
        assert len(runs) == 1
        assert runs[0][0].distance_to(runs[0][-1]) < 1e-12
        assert all(abs(p.norm() - 0.5) < 1e-12 for p in runs[0])

    def test_hyperbola_clipped(self, hyperbolic_scene):
        """Hyperbola runs stay inside the box and on the curve."""
        inconic = hyperbolic_scene.inconic
        assert inconic.kind == ConicKind.HYPERBOLA
        box = _Box(-3.0, -3.0, 3.0, 3.0)
        runs = conic_polylines(inconic, box, 1e-3)
        assert runs
        for run in runs:
            assert all(box.contains(p) and inconic.contains(p) for p in run)
