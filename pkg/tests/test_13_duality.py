"""
Unit tests for inversion, poles and polars, and conic duality.
"""

import math

import numpy as np
import pytest

from pedal_porism.duality import (
    InversionCircle,
    dual_of_conic,
    invert_circle,
    invert_point,
    negative_pedal_of_circle,
    polar_of_point,
    pole_of_line,
)
from pedal_porism.geometry import (
    TWO_PI,
    Circle,
    Conic,
    ConicKind,
    Line,
    Point,
    line_conic_tangency_defect,
    perpendicular_at,
)


@pytest.fixture
def unit_inversion():
    """Unit inversion circle at the origin."""
    return InversionCircle(Point(0.0, 0.0), 1.0)


class TestInversion:
    """Tests for point and circle inversion."""

    def test_point(self, unit_inversion):
        """(2, 0) inverts to (1/2, 0)."""
        assert invert_point(Point(2.0, 0.0), unit_inversion) == Point(0.5, 0.0)

    def test_involution(self):
        """Inverting twice gives the point back."""
        inv = InversionCircle(Point(1.0, -1.0), 2.5)
        p = Point(3.2, 0.7)
        assert invert_point(invert_point(p, inv), inv).distance_to(p) < 1e-12

    def test_circle(self, unit_inversion):
        """Circle (3, 0), r = 1 inverts to center (3/8, 0), r = 1/8."""
        image = invert_circle(Circle(Point(3.0, 0.0), 1.0), unit_inversion)
        assert isinstance(image, Circle)
        assert image.center.distance_to(Point(0.375, 0.0)) < 1e-15
        assert image.radius == pytest.approx(0.125)

    def test_circle_around_center(self, unit_inversion):
        """A circle around the inversion center inverts to a concentric circle."""
        image = invert_circle(Circle(Point(0.0, 0.0), 2.0), unit_inversion)
        assert image.center == Point(0.0, 0.0)
        assert image.radius == pytest.approx(0.5)

    def test_circle_through_center(self, unit_inversion):
        """Circle (1, 0), r = 1 through the center inverts to x = 1/2."""
        image = invert_circle(Circle(Point(1.0, 0.0), 1.0), unit_inversion)
        assert isinstance(image, Line)
        assert image.homogeneous() == pytest.approx([1.0, 0.0, -0.5])

    def test_circle_points(self):
        """Inverted points of a circle lie on the inverted circle."""
        inv = InversionCircle(Point(0.3, 0.2), 0.7)
        circle = Circle(Point(-1.0, 0.5), 0.6)
        image = invert_circle(circle, inv)
        for t in np.linspace(0.0, TWO_PI, 17):
            assert image.defect(invert_point(circle.point_at(t), inv)) < 1e-12


class TestPoles:
    """Tests for poles and polars."""

    def test_polar(self, unit_inversion):
        """The polar of (2, 0) is x = 1/2."""
        polar = polar_of_point(Point(2.0, 0.0), unit_inversion)
        assert polar.homogeneous() == pytest.approx([1.0, 0.0, -0.5])

    def test_pole(self, unit_inversion):
        """The pole of x = 2 is (1/2, 0)."""
        pole = pole_of_line(Line(1.0, 0.0, -2.0), unit_inversion)
        assert pole.distance_to(Point(0.5, 0.0)) < 1e-15

    def test_pole_of_polar(self):
        """Pole and polar are inverse maps."""
        inv = InversionCircle(Point(-0.4, 1.1), 3.0)
        p = Point(2.0, -0.5)
        assert pole_of_line(polar_of_point(p, inv), inv).distance_to(p) < 1e-12

    def test_reciprocity(self):
        """p lies on the polar of q when q lies on the polar of p."""
        inv = InversionCircle(Point(0.5, 0.5), 2.0)
        p = Point(3.0, 1.0)
        polar = polar_of_point(p, inv)
        q = polar.intersect(Line(0.0, 1.0, 4.0))
        assert polar_of_point(q, inv).distance_to(p) < 1e-12

    def test_point_on_inversion_circle(self, unit_inversion):
        """A point of the inversion circle lies on its own polar, the tangent."""
        p = Point.from_polar(Point(0.0, 0.0), 1.0, 0.8)
        polar = polar_of_point(p, unit_inversion)
        assert polar.distance_to(p) < 1e-15
        assert polar.distance_to(Point(0.0, 0.0)) == pytest.approx(1.0)


class TestDualConic:
    """Tests for polar duals and negative pedals."""

    def test_dual_of_circle(self, unit_inversion):
        """A circle of radius 2 around the center has dual radius 1/2."""
        dual = dual_of_conic(Circle(Point(0.0, 0.0), 2.0).as_conic(), unit_inversion)
        expected = Circle(Point(0.0, 0.0), 0.5).as_conic()
        assert dual.kind == ConicKind.CIRCLE
        assert dual.matrix_gap(expected) < 1e-12

    def test_dual_involution(self):
        """The dual of the dual is the original conic."""
        inv = InversionCircle(Point(0.2, -0.1), 1.7)
        conic = Conic.from_axes(Point(0.5, 0.3), Point(1.0, 2.0), 2.0, 0.8)
        again = dual_of_conic(dual_of_conic(conic, inv), inv)
        assert again.matrix_gap(conic) < 1e-12

    def test_dual_poles(self):
        """Poles of tangents to a conic lie on its dual."""
        inv = InversionCircle(Point(0.1, 0.2), 1.0)
        conic = Conic.from_axes(Point(0.0, 0.0), Point(1.0, 0.0), 2.0, 1.0)
        dual = dual_of_conic(conic, inv)
        for t in np.linspace(0.1, TWO_PI, 11):
            tangent = conic.tangent_at(conic.point_at(t))
            assert dual.contains(pole_of_line(tangent, inv))

    def test_negative_pedal_ellipse(self):
        """Circle r = 2, d = (1, 0): x**2/4 + y**2/3 = 1."""
        conic = negative_pedal_of_circle(Circle(Point(0.0, 0.0), 2.0), Point(1.0, 0.0))
        expected = Conic.from_axes(Point(0.0, 0.0), Point(1.0, 0.0), 2.0, 3.0)
        assert conic.kind == ConicKind.ELLIPSE
        assert conic.matrix_gap(expected) < 1e-15

    def test_negative_pedal_hyperbola(self):
        """Circle r = 1, d = (2, 0): x**2 - y**2/3 = 1."""
        conic = negative_pedal_of_circle(Circle(Point(0.0, 0.0), 1.0), Point(2.0, 0.0))
        expected = Conic.from_axes(Point(0.0, 0.0), Point(1.0, 0.0), 1.0, -3.0)
        assert conic.kind == ConicKind.HYPERBOLA
        assert conic.matrix_gap(expected) < 1e-15
        assert min(f.distance_to(Point(2.0, 0.0)) for f in conic.foci()) < 1e-12

    def test_negative_pedal_at_center(self):
        """From the center the negative pedal is the circle itself."""
        circle = Circle(Point(1.0, 1.0), 2.0)
        conic = negative_pedal_of_circle(circle, Point(1.0, 1.0))
        assert conic.matrix_gap(circle.as_conic()) < 1e-15

    @pytest.mark.parametrize("spread", [0.3, 0.8, 1.5, 2.5])
    def test_envelope(self, spread):
        """Perpendiculars at P to PD touch the negative pedal."""
        circle = Circle(Point(0.5, -0.5), 1.2)
        d = circle.center + Point.from_polar(Point(0.0, 0.0), spread * circle.radius, 0.9)
        conic = negative_pedal_of_circle(circle, d)
        for t in np.linspace(0.0, TWO_PI, 37):
            p = circle.point_at(t)
            if p.distance_to(d) < 1e-3:
                continue
            line = perpendicular_at(p, d)
            assert line_conic_tangency_defect(line, conic) < 1e-7

    @pytest.mark.parametrize("radius_sq", [0.25, 1.0, 40.0])
    def test_closed_form_matches_dual_of_inverse(self, radius_sq):
        """The closed form equals the dual of the inverse for any inversion radius."""
        circle = Circle(Point(0.3, 0.1), 1.5)
        d = Point(-0.4, 0.6)
        inv = InversionCircle(d, radius_sq)
        via_dual = dual_of_conic(invert_circle(circle, inv).as_conic(), inv)
        assert negative_pedal_of_circle(circle, d).matrix_gap(via_dual) < 1e-9

    def test_focus(self):
        """The pedal point is a focus of the negative pedal."""
        circle = Circle(Point(0.0, 0.0), 3.0)
        d = Point(1.0, math.sqrt(2.0))
        foci = negative_pedal_of_circle(circle, d).foci()
        assert min(f.distance_to(d) for f in foci) < 1e-12
