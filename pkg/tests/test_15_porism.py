"""
Unit tests for the porism constructions, fertile arcs and sweeps.
"""

import io
import math

import numpy as np
import pytest

from pedal_porism.exceptions import GeometryError, InfertileStart, SceneError
from pedal_porism.geometry import (
    TWO_PI,
    Circle,
    Conic,
    Point,
    Triangle,
    circumcircle,
    tangent_count,
)
from pedal_porism.porism import (
    CSV_COLUMNS,
    Algorithm,
    Outcome,
    SampleRecord,
    construct,
    cross_family_consistency,
    evaluate_start,
    fertile_arcs,
    negative_pedal_porism_step,
    pedal_porism_step,
    polar_porism_step,
    run_sweep,
)
from pedal_porism.scene import PorismScene
from scenes import fertile_starts, random_scene

ALGORITHMS = list(Algorithm)


def equilateral_at(t, radius=1.0):
    """Equilateral triangle inscribed in a centered circle, one vertex at *t*."""
    center = Point(0.0, 0.0)
    return Triangle(*(Point.from_polar(center, radius, t + k * TWO_PI / 3) for k in range(3)))


def infertile_angle(scene):
    """Middle of the longest infertile interval."""
    arcs = fertile_arcs(scene.circumcircle, scene.inconic)
    start, end = max(arcs.infertile_intervals(), key=lambda iv: iv[1] - iv[0])
    return 0.5 * (start + end)


class TestAlgorithm:
    """Tests for algorithm names."""

    @pytest.mark.parametrize(
        "name,expected",
        [
            ("pedal", Algorithm.PEDAL),
            ("Polar", Algorithm.POLAR),
            ("negative-pedal", Algorithm.NEGATIVE_PEDAL),
            ("negative_pedal", Algorithm.NEGATIVE_PEDAL),
            (Algorithm.POLAR, Algorithm.POLAR),
        ],
    )
    def test_parse(self, name, expected):
        """Dashes, underscores and case are accepted."""
        assert Algorithm.parse(name) == expected

    def test_unknown(self):
        """Unknown names report the algorithm field."""
        with pytest.raises(SceneError) as info:
            Algorithm.parse("orthic")
        assert info.value.field_path == "algorithm"


class TestFertileArcs:
    """Tests for the fertile-arc computation."""

    def test_concentric_full(self):
        """Unit circle around a concentric circle of radius 1/2: all fertile."""
        circle = Circle(Point(0.0, 0.0), 1.0)
        arcs = fertile_arcs(circle, Circle(Point(0.0, 0.0), 0.5).as_conic())
        assert arcs.is_full
        assert arcs.fraction == pytest.approx(1.0)
        assert not arcs.infertile_intervals()

    def test_tangent_hyperbola(self):
        """x**2 - y**2/3 = 1 touches the unit circle at (+-1, 0) only."""
        circle = Circle(Point(0.0, 0.0), 1.0)
        hyperbola = Conic.from_axes(Point(0.0, 0.0), Point(1.0, 0.0), 1.0, -3.0)
        arcs = fertile_arcs(circle, hyperbola)
        assert arcs.fraction > 0.999
        assert arcs.contains(math.pi / 2)
        assert arcs.contains(3 * math.pi / 2)

    def test_enclosing_circle(self):
        """A circle inside a larger conic is entirely infertile."""
        circle = Circle(Point(0.0, 0.0), 1.0)
        arcs = fertile_arcs(circle, Circle(Point(0.0, 0.0), 2.0).as_conic())
        assert arcs.intervals == ()
        assert arcs.fraction == 0.0

    def test_seed_vertices_fertile(self, random_scenes):
        """Seed vertices always lie on fertile arcs."""
        for scene in random_scenes:
            arcs = fertile_arcs(scene.circumcircle, scene.inconic)
            for angle in scene.start_angles():
                assert arcs.contains(angle)

    def test_against_tangent_count(self, hyperbolic_scene):
        """Membership matches the number of tangents away from boundaries."""
        circle, conic = hyperbolic_scene.circumcircle, hyperbolic_scene.inconic
        arcs = fertile_arcs(circle, conic)
        bounds = [b for iv in arcs.intervals for b in iv]
        for t in np.linspace(0.0, TWO_PI, 360, endpoint=False):
            if min(abs(t - b) for b in bounds) < 1e-6:
                continue
            assert arcs.contains(t) == (tangent_count(circle.point_at(t), conic) == 2)

    def test_hyperbolic_intervals(self, hyperbolic_scene):
        """Intervals are sorted, disjoint and end on the inconic."""
        arcs = fertile_arcs(hyperbolic_scene.circumcircle, hyperbolic_scene.inconic)
        assert 0.0 < arcs.fraction < 1.0
        flat = [b for iv in arcs.intervals for b in iv]
        assert flat == sorted(flat)
        assert all(0.0 <= b <= TWO_PI for b in flat)
        for start, end in arcs.intervals:
            for angle in (start, end):
                if angle in (0.0, TWO_PI):
                    continue
                point = hyperbolic_scene.circumcircle.point_at(angle)
                assert hyperbolic_scene.inconic.contains(point)
        gaps = math.fsum(e - s for s, e in arcs.infertile_intervals())
        assert gaps + arcs.total_length == pytest.approx(TWO_PI)
        assert arcs.as_list() == [list(iv) for iv in arcs.intervals]


class TestEquilateral:
    """Tests on the concentric equilateral family."""

    @pytest.mark.parametrize("t", [0.0, 0.3, 1.7, 4.0, 6.2])
    def test_pedal(self, equilateral_scene, t):
        """Vertices at t and t +- 2*pi/3."""
        triangle = construct(equilateral_scene, Algorithm.PEDAL, t).triangle
        assert triangle.vertex_gap(equilateral_at(t)) < 1e-9

    @pytest.mark.parametrize("t", [0.0, 0.3, 1.7, 4.0, 6.2])
    def test_polar(self, equilateral_scene, t):
        """The polar triangle is equilateral, concentric, circumradius 2."""
        result = construct(equilateral_scene, Algorithm.POLAR, t)
        assert result.triangle.vertex_gap(equilateral_at(t)) < 1e-9
        assert result.companion.vertex_gap(equilateral_at(t + math.pi, 2.0)) < 1e-9

    @pytest.mark.parametrize("t", [0.0, 0.3, 1.7, 4.0, 6.2])
    def test_negative_pedal(self, equilateral_scene, t):
        """The negative-pedal triangle is tangential, on the circle of radius 2."""
        result = construct(equilateral_scene, Algorithm.NEGATIVE_PEDAL, t)
        assert result.triangle.vertex_gap(equilateral_at(t)) < 1e-9
        outer = circumcircle(result.companion)
        assert outer.center.norm() < 1e-9
        assert outer.radius == pytest.approx(2.0, abs=1e-9)

    @pytest.mark.parametrize("algorithm", ALGORITHMS)
    def test_sweep(self, equilateral_scene, algorithm):
        """Every start closes and passes the thresholds."""
        report = run_sweep(equilateral_scene, algorithm, 360)
        assert report.n_samples == 360
        assert report.count(Outcome.CONSTRUCTED) == 360
        assert report.count(Outcome.INFERTILE) == 0
        assert report.passed
        assert report.disagreements == 0


class TestSteps:
    """Tests of each construction against its contract."""

    def test_pedal_reproduces_seed(self, random_scenes):
        """Starting from a seed vertex gives the seed triangle back."""
        for scene in random_scenes:
            for vertex in scene.seed_triangle.vertices:
                triangle = pedal_porism_step(scene, vertex)
                assert triangle.vertex_gap(scene.seed_triangle) < 1e-9 * scene.radius
                assert triangle.c == vertex

    def test_polar_reproduces_seed(self, random_scenes):
        """The polar step rebuilds the seed and its polar triangle."""
        for scene in random_scenes:
            vertex = scene.seed_triangle.a
            triangle, polar = polar_porism_step(scene, vertex)
            assert triangle.a == vertex
            assert triangle.vertex_gap(scene.seed_triangle) < 1e-9 * scene.radius
            assert polar.vertex_gap(scene.polar_triangle) < 1e-8 * scene.radius

    def test_negative_pedal_reproduces_seed(self, random_scenes):
        """The negative-pedal step rebuilds the seed's negative-pedal triangle."""
        for scene in random_scenes:
            vertex = scene.seed_triangle.b
            triangle, outer = negative_pedal_porism_step(scene, vertex)
            assert triangle.vertex_gap(scene.seed_triangle) < 1e-9 * scene.radius
            assert outer.vertex_gap(scene.negative_pedal_triangle) < 1e-8 * scene.radius

    def test_counterclockwise(self, random_scenes):
        """Constructed triangles keep the start as their labelled vertex."""
        scene = random_scenes[0]
        angle = scene.start_angles()[0]
        start = scene.circumcircle.point_at(angle)
        assert pedal_porism_step(scene, start).c == start
        assert polar_porism_step(scene, start)[0].a == start
        assert negative_pedal_porism_step(scene, start)[0].a == start

    def test_start_off_circle(self, equilateral_scene):
        """The start point must lie on the circumcircle."""
        with pytest.raises(GeometryError):
            pedal_porism_step(equilateral_scene, Point(0.5, 0.0))

    @pytest.mark.parametrize("algorithm", ALGORITHMS)
    def test_infertile(self, hyperbolic_scene, algorithm):
        """A start inside the inconic admits no triangle."""
        angle = infertile_angle(hyperbolic_scene)
        with pytest.raises(InfertileStart):
            construct(hyperbolic_scene, algorithm, angle)
        record, result = evaluate_start(hyperbolic_scene, algorithm, angle)
        assert record.outcome == Outcome.INFERTILE
        assert result is None
        assert record.tangency_defect is None

    @pytest.mark.parametrize("algorithm", ALGORITHMS)
    def test_random_fertile_starts(self, random_scenes, algorithm):
        """Two hundred fertile starts on each random scene close within thresholds."""
        for scene in random_scenes:
            arcs = fertile_arcs(scene.circumcircle, scene.inconic)
            for angle in fertile_starts(arcs, 200):
                record, result = evaluate_start(scene, algorithm, angle, arcs)
                assert record.outcome == Outcome.CONSTRUCTED, record.message
                assert record.tangency_defect < 1e-7
                limit = 1e-7 * scene.radius
                assert record.center_err < limit
                assert record.radius_err < limit
                assert record.closure_defect < limit
                assert result.triangle is not None


class TestClassicalCases:
    """Tests against closed-form triangle geometry."""

    def test_incircle_family(self, rng):
        """With D at the incenter, every member has D as incenter (Euler-Chapple)."""
        for _ in range(20):
            angles = np.sort(rng.uniform(0.0, TWO_PI, 3))
            if np.diff(np.append(angles, angles[0] + TWO_PI)).min() < 0.5:
                continue
            seed = Triangle(*(Point.from_polar(Point(0.0, 0.0), 1.0, t) for t in angles))
            scene = PorismScene.from_triangle(seed, seed.incenter())
            big_r, d = scene.radius, scene.pedal_point
            for t in np.linspace(0.0, TWO_PI, 24, endpoint=False):
                triangle = construct(scene, Algorithm.PEDAL, t).triangle
                r = triangle.inradius()
                for side in triangle.sides():
                    assert abs(side.distance_to(d) - r) < 1e-7 * big_r
                chapple = d.dot(d) - big_r * (big_r - 2.0 * r)
                assert abs(chapple) < 1e-7 * big_r**2

    def test_right_triangle_incircle(self, incircle_scene):
        """3-4-5 with its incenter: the inconic is the unit incircle."""
        center_err, radius_err = incircle_scene.pedal_circle.gap(Circle(Point(1.0, 1.0), 1.0))
        assert center_err < 1e-12
        assert radius_err < 1e-12
        report = run_sweep(incircle_scene, Algorithm.PEDAL, 90)
        assert report.count(Outcome.CONSTRUCTED) == 90
        assert report.passed


class TestSweeps:
    """Tests for sweep reports."""

    @pytest.mark.parametrize("algorithm", ALGORITHMS)
    def test_infertile_fraction(self, hyperbolic_scene, algorithm):
        """Infertile share matches the arc length within 1%."""
        report = run_sweep(hyperbolic_scene, algorithm, 1000)
        arcs = report.arcs
        assert report.count(Outcome.INFERTILE) > 0
        assert abs(report.infertile_fraction - (1.0 - arcs.fraction)) < 0.01
        assert report.disagreements <= 2

    def test_csv(self, hyperbolic_scene):
        """The CSV has a header and one row per sample."""
        report = run_sweep(hyperbolic_scene, Algorithm.PEDAL, 40)
        lines = report.to_csv().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 41
        stream = io.StringIO()
        report.write_csv(stream)
        assert stream.getvalue() == report.to_csv()
        for line, record in zip(lines[1:], report.records):
            fields = line.split(",")
            assert fields[1] == record.outcome.value
            if record.outcome == Outcome.INFERTILE:
                assert fields[2:] == ["", "", "", ""]

    def test_summary(self, equilateral_scene):
        """The summary counts every outcome."""
        summary = run_sweep(equilateral_scene, "polar", 12).summary()
        assert summary["algorithm"] == "polar"
        assert summary["samples"] == 12
        assert summary["constructed"] == 12
        assert summary["infertile"] == 0
        assert "max_tangency_defect" in summary

    def test_angles(self, equilateral_scene):
        """Samples are uniform from angle zero."""
        report = run_sweep(equilateral_scene, Algorithm.PEDAL, 8)
        assert [r.start_angle for r in report.records] == pytest.approx(
            [TWO_PI * i / 8 for i in range(8)]
        )

    def test_no_samples(self, equilateral_scene):
        """At least one sample is needed."""
        with pytest.raises(SceneError):
            run_sweep(equilateral_scene, Algorithm.PEDAL, 0)

    def test_deterministic(self, hyperbolic_scene):
        """Two sweeps give the same CSV."""
        first = run_sweep(hyperbolic_scene, Algorithm.NEGATIVE_PEDAL, 100).to_csv()
        second = run_sweep(hyperbolic_scene, Algorithm.NEGATIVE_PEDAL, 100).to_csv()
        assert first == second

    @pytest.mark.parametrize(
        "outcome,expected,disagrees",
        [
            (Outcome.INFERTILE, True, True),
            (Outcome.INFERTILE, False, False),
            (Outcome.CONSTRUCTED, False, True),
            (Outcome.FAILED, False, True),
            (Outcome.DEGENERATE, True, False),
            (Outcome.CONSTRUCTED, None, False),
        ],
    )
    def test_disagrees(self, outcome, expected, disagrees):
        """Only contradictions with the arcs count as disagreements."""
        record = SampleRecord(start_angle=0.0, outcome=outcome, expected_fertile=expected)
        assert record.disagrees is disagrees
        assert record.as_dict()["outcome"] == outcome.value


class TestCrossFamily:
    """Tests for the agreement of the three families."""

    def test_seed(self, random_scenes):
        """At seed vertices every identity holds."""
        for scene in random_scenes:
            limit = 1e-7 * scene.radius
            for vertex in scene.seed_triangle.vertices:
                record = cross_family_consistency(scene, vertex)
                assert record.passes(limit), record.as_dict()

    def test_random_starts(self, rng):
        """Five fertile starts on each of twenty scenes."""
        for _ in range(20):
            scene = random_scene(rng)
            arcs = fertile_arcs(scene.circumcircle, scene.inconic)
            for angle in fertile_starts(arcs, 5):
                start = scene.circumcircle.point_at(angle)
                record = cross_family_consistency(scene, start)
                assert record.passes(1e-7 * scene.radius), record.as_dict()

    def test_equilateral_ratio(self, equilateral_scene):
        """Concentric case: homothety ratio one."""
        record = cross_family_consistency(equilateral_scene, Point(0.0, 1.0))
        assert record.homothety.circle_ratio == pytest.approx(1.0)
        assert record.algorithm_gap < 1e-12

    def test_inversion_radius(self, random_scenes):
        """Rescaling the inversion radius leaves the polar family unchanged."""
        for scene in random_scenes[:5]:
            rescaled = scene.with_inversion_radius_sq(100.0)
            arcs = fertile_arcs(scene.circumcircle, scene.inconic)
            for angle in fertile_starts(arcs, 10):
                start = scene.circumcircle.point_at(angle)
                first, _ = polar_porism_step(scene, start)
                second, _ = polar_porism_step(rescaled, start)
                assert first.vertex_gap(second) < 1e-9 * scene.radius
