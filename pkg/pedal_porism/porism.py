"""Porism engine: constructions, fertile arcs and sweeps.

Three constructions start from a point of the circumcircle and close a
triangle of the family of the scene:

- ``pedal``: triangles sharing the pedal circle, their sides tangent to
  the inconic focused at the pedal point;
- ``polar``: the same triangles reached through their polar triangles,
  inscribed in the polar circle;
- ``negative_pedal``: the same triangles reached through their
  negative-pedal triangles, inscribed in the negative-pedal circle.

A start point inside the inconic admits no triangle: it lies on an
infertile arc. ``run_sweep`` samples the whole circumcircle, records each
outcome with its defects, and checks the infertile classifications
against ``fertile_arcs``.
"""

import csv
import io
import logging
import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, TextIO, Tuple, Union

from pedal_porism.duality import pole_of_line, polar_of_point
from pedal_porism.exceptions import (
    DegenerateOutput,
    GeometryError,
    InfertileStart,
    SceneError,
)
from pedal_porism.geometry import (
    TWO_PI,
    Circle,
    Conic,
    Line,
    Point,
    Triangle,
    circle_circle_intersection,
    circle_conic_intersection,
    circle_line_intersection,
    circumcircle,
    foot_of_perpendicular,
    line_conic_tangency_defect,
    line_through,
    normalize_angle,
    perpendicular_at,
    tangent_count,
)
from pedal_porism.pedal import (
    HomothetyReport,
    PedalConfig,
    homothety_report,
    negative_pedal_circle,
    negative_pedal_triangle,
)
from pedal_porism.scene import PorismScene

logger = logging.getLogger(__name__)

REMEET_FACTOR = 10.0
CSV_COLUMNS = (
    "start_angle",
    "outcome",
    "tangency_defect",
    "center_err",
    "radius_err",
    "closure_defect",
)


class Algorithm(str, Enum):
    """Porism construction families."""

    PEDAL = "pedal"
    POLAR = "polar"
    NEGATIVE_PEDAL = "negative_pedal"

    @classmethod
    def parse(cls, value: Union[str, "Algorithm"]) -> "Algorithm":
        """Accept enum members and dashed or underscored names."""
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower().replace("-", "_"))
        except ValueError as err:
            choices = ", ".join(a.value for a in cls)
            raise SceneError(
                f"Unknown algorithm '{value}', expected one of: {choices}",
                field_path="algorithm",
            ) from err


# Fertile arcs
###########################


@dataclass(frozen=True)
class FertileArcs:
    """Counterclockwise half-open angular intervals of a circle.

    Intervals are disjoint, sorted and inside [0, 2*pi); an arc crossing
    angle zero is stored as two intervals.
    """

    circle: Circle
    intervals: Tuple[Tuple[float, float], ...]

    def contains(self, angle: float) -> bool:
        """True if *angle* falls in a fertile interval."""
        angle = normalize_angle(angle)
        return any(start <= angle < end for start, end in self.intervals)

    @property
    def total_length(self) -> float:
        """Sum of the interval lengths, in radians."""
        return math.fsum(end - start for start, end in self.intervals)

    @property
    def fraction(self) -> float:
        """Fertile share of the circle."""
        return self.total_length / TWO_PI

    @property
    def is_full(self) -> bool:
        """True if the whole circle is fertile."""
        return self.intervals == ((0.0, TWO_PI),)

    def infertile_intervals(self) -> Tuple[Tuple[float, float], ...]:
        """Complement of the fertile intervals in [0, 2*pi)."""
        gaps = []
        cursor = 0.0
        for start, end in self.intervals:
            if start > cursor:
                gaps.append((cursor, start))
            cursor = end
        if cursor < TWO_PI:
            gaps.append((cursor, TWO_PI))
        return tuple(gaps)

    def as_list(self) -> List[List[float]]:
        """Intervals as nested lists for reports."""
        return [[start, end] for start, end in self.intervals]


def fertile_arcs(c: Circle, k: Conic) -> FertileArcs:
    """Arcs of *c* from which two tangents to *k* can be drawn.

    Boundary angles come from the circle/conic intersection; each arc
    between consecutive boundaries is classified at its midpoint.

    Raises:
        DegenerateConic: If *k* is degenerate.
    """
    k.require_nondegenerate()
    angles = sorted(c.angle_of(p) for p in circle_conic_intersection(c, k))

    if not angles:
        fertile = tangent_count(c.point_at(0.0), k) == 2
        return FertileArcs(c, ((0.0, TWO_PI),) if fertile else ())

    # Arcs between consecutive boundaries, the last one wrapping around
    arcs = []
    for idx, start in enumerate(angles):
        end = angles[idx + 1] if idx + 1 < len(angles) else angles[0] + TWO_PI
        if tangent_count(c.point_at(0.5 * (start + end)), k) == 2:
            if arcs and arcs[-1][1] == start:
                arcs[-1] = (arcs[-1][0], end)
            else:
                arcs.append((start, end))
    if len(arcs) > 1 and arcs[-1][1] == arcs[0][0] + TWO_PI:
        arcs[0] = (arcs[-1][0], arcs[0][1] + TWO_PI)
        arcs.pop()
    if len(arcs) == 1 and arcs[0][1] - arcs[0][0] >= TWO_PI:
        return FertileArcs(c, ((0.0, TWO_PI),))

    intervals = []
    for start, end in arcs:
        if end > TWO_PI:
            intervals.append((start, TWO_PI))
            intervals.append((0.0, end - TWO_PI))
        else:
            intervals.append((start, end))
    return FertileArcs(c, tuple(sorted(intervals)))


# Constructions
###########################


@contextmanager
def _degenerate_guard(what: str) -> Iterator[None]:
    """Turn primitive failures inside a construction into DegenerateOutput."""
    try:
        yield
    except (InfertileStart, DegenerateOutput):
        raise
    except GeometryError as err:
        raise DegenerateOutput(f"{what}: {err}") from err


def _check_start(scene: PorismScene, start: Point) -> None:
    if scene.circumcircle.defect(start) > scene.tol.eps * REMEET_FACTOR:
        raise GeometryError(f"Start point {start} is not on the circumcircle")


def _remeet(points: List[Point], known: Point, scene: PorismScene) -> Point:
    """Of two intersection points, the one away from *known*."""
    guard = REMEET_FACTOR * scene.tol.eps
    if len(points) < 2:
        raise DegenerateOutput(f"Tangent chord at {known}")
    _, far = sorted(points, key=known.distance_to)
    if far.distance_to(known) <= guard:
        raise DegenerateOutput(f"Both intersections collapse on {known}")
    return far


def _ccw_pair(start: Point, first: Point, second: Point, scene: PorismScene) -> Tuple[Point, Point]:
    """Order two new vertices so that (start, first, second) is counterclockwise."""
    if first.distance_to(second) <= REMEET_FACTOR * scene.tol.eps:
        raise DegenerateOutput("Constructed vertices coincide")
    if (first - start).cross(second - start) < 0.0:
        return second, first
    return first, second


def pedal_porism_step(scene: PorismScene, start: Point) -> Triangle:
    """Close a triangle of the pedal family from vertex *start*.

    The circle of diameter [start, D] meets the pedal circle at the feet
    of D on the two sides through *start*; those sides meet the
    circumcircle again at the other two vertices.

    Returns:
        Triangle: (A, B, start), counterclockwise.

    Raises:
        InfertileStart: If the start point lies inside the inconic.
        DegenerateOutput: If the construction collapses.
    """
    _check_start(scene, start)
    tol = scene.tol
    with _degenerate_guard("pedal construction"):
        thales = Circle.thales(start, scene.pedal_point, tol)
        feet = circle_circle_intersection(thales, scene.pedal_circle, tol)
        if len(feet) < 2:
            raise InfertileStart(f"Infertile start {start}: {len(feet)} foot found")

        others = []
        for foot in feet:
            if foot.distance_to(start) <= REMEET_FACTOR * tol.eps:
                side = perpendicular_at(foot, scene.pedal_point, tol)
            else:
                side = line_through(start, foot, tol)
            hits = circle_line_intersection(scene.circumcircle, side, tol)
            others.append(_remeet(hits, start, scene))

        a, b = _ccw_pair(start, *others, scene)
        return Triangle(a, b, start)


def polar_porism_step(scene: PorismScene, start: Point) -> Tuple[Triangle, Triangle]:
    """Close a triangle through its polar triangle, from vertex *start*.

    The polar of *start* meets the polar circle at two polar vertices;
    their polars pass through *start* and meet the circumcircle again at
    the other two vertices.

    Returns:
        tuple: (ABC with A = start, polar triangle of ABC).

    Raises:
        InfertileStart: If the polar of the start point misses the polar circle.
        DegenerateOutput: If the construction collapses.
    """
    _check_start(scene, start)
    tol, inv = scene.tol, scene.inversion
    with _degenerate_guard("polar construction"):
        polar = polar_of_point(start, inv, tol)
        poles = circle_line_intersection(scene.polar_circle, polar, tol)
        if len(poles) < 2:
            raise InfertileStart(f"Infertile start {start}: polar misses the polar circle")

        others = []
        for pole in poles:
            hits = circle_line_intersection(scene.circumcircle, polar_of_point(pole, inv, tol), tol)
            others.append(_remeet(hits, start, scene))

        b, c = _ccw_pair(start, *others, scene)
        triangle = Triangle(start, b, c)
        polar_triangle = Triangle(*(pole_of_line(side, inv, tol) for side in triangle.sides()))
        return triangle, polar_triangle


def negative_pedal_porism_step(
    scene: PorismScene, start: Point
) -> Tuple[Triangle, Triangle]:
    """Close a triangle through its negative-pedal triangle, from *start*.

    The perpendicular at *start* to the line to D meets the negative-pedal
    circle at B' and C'. The circles of diameters [B', D] and [C', D]
    pass through *start* and meet the circumcircle again at C and B.

    Returns:
        tuple: (ABC with A = start, negative-pedal triangle A'B'C').

    Raises:
        InfertileStart: If the perpendicular misses the negative-pedal circle.
        DegenerateOutput: If the construction collapses.
    """
    _check_start(scene, start)
    tol, d = scene.tol, scene.pedal_point
    with _degenerate_guard("negative-pedal construction"):
        side = perpendicular_at(start, d, tol)
        outer = circle_line_intersection(scene.negative_pedal_circle, side, tol)
        if len(outer) < 2:
            raise InfertileStart(
                f"Infertile start {start}: perpendicular misses the negative-pedal circle"
            )

        # Each outer vertex leads to the reference vertex opposite to it
        images = []
        for vertex in outer:
            hits = circle_circle_intersection(Circle.thales(vertex, d, tol), scene.circumcircle, tol)
            images.append(_remeet(hits, start, scene))

        if images[0].distance_to(images[1]) <= REMEET_FACTOR * tol.eps:
            raise DegenerateOutput("Constructed vertices coincide")
        if (images[1] - start).cross(images[0] - start) >= 0.0:
            # outer[0] is B' and leads to C
            b, c, b_out, c_out = images[1], images[0], outer[0], outer[1]
        else:
            b, c, b_out, c_out = images[0], images[1], outer[1], outer[0]

        apex = line_through(b, c_out, tol).intersect(line_through(c, b_out, tol))
        if apex is None:
            raise DegenerateOutput("Negative-pedal vertex at infinity")
        return Triangle(start, b, c), Triangle(apex, b_out, c_out)


# Measurements
###########################


def _pedal_circle_of(triangle: Triangle, d: Point) -> Circle:
    """Pedal circle of *d* without pedal configuration checks."""
    feet = [foot_of_perpendicular(d, side) for side in triangle.sides()]
    return circumcircle(Triangle(*feet))


def _circle_errors(found: Circle, expected: Circle) -> Tuple[float, float]:
    return found.gap(expected)


def _max_tangency(lines: Tuple[Line, ...], conic: Conic) -> float:
    return max(line_conic_tangency_defect(line, conic) for line in lines)


class Outcome(str, Enum):
    """Classification of one sweep sample."""

    CONSTRUCTED = "constructed"
    INFERTILE = "infertile"
    DEGENERATE = "degenerate"
    FAILED = "failed"


@dataclass
class StepResult:
    """Triangles built from one start point."""

    triangle: Triangle
    companion: Optional[Triangle] = None


@dataclass
class SampleRecord:
    """Outcome and defects of one start point.

    Defects are None unless a triangle was constructed. ``tangency_defect``
    is dimensionless; the other defects are lengths.
    """

    start_angle: float
    outcome: Outcome
    tangency_defect: Optional[float] = None
    center_err: Optional[float] = None
    radius_err: Optional[float] = None
    closure_defect: Optional[float] = None
    expected_fertile: Optional[bool] = None
    message: str = ""

    def as_dict(self) -> Dict[str, object]:
        """JSON-friendly view."""
        return {
            "start_angle": self.start_angle,
            "outcome": self.outcome.value,
            "tangency_defect": self.tangency_defect,
            "center_err": self.center_err,
            "radius_err": self.radius_err,
            "closure_defect": self.closure_defect,
            "expected_fertile": self.expected_fertile,
            "message": self.message,
        }

    @property
    def disagrees(self) -> bool:
        """True if the outcome contradicts the fertile-arc membership."""
        if self.expected_fertile is None:
            return False
        if self.outcome == Outcome.INFERTILE:
            return self.expected_fertile
        if self.outcome in (Outcome.CONSTRUCTED, Outcome.FAILED):
            return not self.expected_fertile
        return False


def _measure(
    scene: PorismScene, algorithm: Algorithm, result: StepResult
) -> Tuple[float, float, float, float]:
    """Return (tangency, center error, radius error, closure defect)."""
    triangle, companion = result.triangle, result.companion
    d = scene.pedal_point

    if algorithm == Algorithm.PEDAL:
        tangency = _max_tangency(triangle.sides(), scene.inconic)
        center_err, radius_err = _circle_errors(_pedal_circle_of(triangle, d), scene.pedal_circle)
        # The closing side AB must touch the pedal circle at the foot of D
        closing = line_through(triangle.a, triangle.b, scene.tol)
        closure = scene.pedal_circle.defect(foot_of_perpendicular(d, closing))
        return tangency, center_err, radius_err, closure

    if algorithm == Algorithm.POLAR:
        tangency = _max_tangency(companion.sides(), scene.polar_caustic)
        center_err, radius_err = _circle_errors(_pedal_circle_of(triangle, d), scene.pedal_circle)
        closure = max(scene.polar_circle.defect(p) for p in companion.vertices)
        # Mutual polarity: each polar vertex lies on the polars of two reference vertices
        for vertex in triangle.vertices:
            polar = polar_of_point(vertex, scene.inversion, scene.tol)
            closure = max(closure, sorted(polar.distance_to(p) for p in companion.vertices)[1])
        return tangency, center_err, radius_err, closure

    tangency = _max_tangency(companion.sides(), scene.negative_pedal_caustic)
    center_err, radius_err = _circle_errors(circumcircle(companion), scene.negative_pedal_circle)
    closure = max(scene.negative_pedal_circle.defect(p) for p in companion.vertices)
    center_gap, radius_gap = _circle_errors(_pedal_circle_of(companion, d), scene.circumcircle)
    closure = max(closure, center_gap, radius_gap)
    cfg = PedalConfig(triangle, d, tol=scene.tol)
    closure = max(closure, negative_pedal_triangle(cfg).vertex_gap(companion))
    return tangency, center_err, radius_err, closure


def construct(scene: PorismScene, algorithm: Union[str, Algorithm], start_angle: float) -> StepResult:
    """Run one construction from the circumcircle point at *start_angle*.

    Raises:
        InfertileStart: On an infertile start.
        DegenerateOutput: If the construction collapses.
    """
    algorithm = Algorithm.parse(algorithm)
    start = scene.circumcircle.point_at(start_angle)
    if algorithm == Algorithm.PEDAL:
        return StepResult(pedal_porism_step(scene, start))
    if algorithm == Algorithm.POLAR:
        return StepResult(*polar_porism_step(scene, start))
    return StepResult(*negative_pedal_porism_step(scene, start))


def evaluate_start(
    scene: PorismScene,
    algorithm: Union[str, Algorithm],
    start_angle: float,
    arcs: Optional[FertileArcs] = None,
) -> Tuple[SampleRecord, Optional[StepResult]]:
    """Construct from *start_angle* and measure the result, never raising
    for construction failures."""
    algorithm = Algorithm.parse(algorithm)
    expected = arcs.contains(start_angle) if arcs is not None else None
    record = SampleRecord(start_angle=start_angle, outcome=Outcome.CONSTRUCTED, expected_fertile=expected)
    try:
        result = construct(scene, algorithm, start_angle)
    except InfertileStart as err:
        record.outcome, record.message = Outcome.INFERTILE, str(err)
        return record, None
    except (DegenerateOutput, GeometryError) as err:
        record.outcome, record.message = Outcome.DEGENERATE, str(err)
        return record, None

    try:
        (
            record.tangency_defect,
            record.center_err,
            record.radius_err,
            record.closure_defect,
        ) = _measure(scene, algorithm, result)
    except (GeometryError, DegenerateOutput, SceneError) as err:
        record.outcome, record.message = Outcome.FAILED, f"measurement failed: {err}"
        return record, result

    limit = scene.tol.defect_rel * scene.radius
    failures = []
    if record.tangency_defect > scene.tol.defect_rel:
        failures.append("tangency_defect")
    for name in ("center_err", "radius_err", "closure_defect"):
        if getattr(record, name) > limit:
            failures.append(name)
    if failures:
        record.outcome = Outcome.FAILED
        record.message = "above threshold: " + ", ".join(failures)
    return record, result


# Sweeps
###########################


@dataclass
class PorismSweepReport:
    """Per-sample outcomes of a sweep, in start-angle order."""

    algorithm: Algorithm
    records: List[SampleRecord] = field(default_factory=list)
    arcs: Optional[FertileArcs] = None

    def count(self, outcome: Outcome) -> int:
        """Number of samples with *outcome*."""
        return sum(1 for record in self.records if record.outcome == outcome)

    @property
    def n_samples(self) -> int:
        """Number of samples."""
        return len(self.records)

    @property
    def infertile_fraction(self) -> float:
        """Share of infertile samples."""
        return self.count(Outcome.INFERTILE) / self.n_samples

    @property
    def disagreements(self) -> int:
        """Samples whose outcome contradicts the fertile arcs."""
        return sum(1 for record in self.records if record.disagrees)

    @property
    def passed(self) -> bool:
        """True if every constructed sample is within thresholds."""
        return self.count(Outcome.FAILED) == 0

    def max_defect(self, name: str) -> float:
        """Largest value of a defect column over constructed samples."""
        values = [getattr(r, name) for r in self.records if getattr(r, name) is not None]
        return max(values, default=0.0)

    def summary(self) -> Dict[str, object]:
        """Counts and worst defects."""
        return {
            "algorithm": self.algorithm.value,
            "samples": self.n_samples,
            **{outcome.value: self.count(outcome) for outcome in Outcome},
            "disagreements": self.disagreements,
            **{f"max_{name}": self.max_defect(name) for name in CSV_COLUMNS[2:]},
        }

    def write_csv(self, stream: TextIO) -> None:
        """Write one row per sample with a header row."""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for record in self.records:
            row = [f"{record.start_angle:.17g}", record.outcome.value]
            for name in CSV_COLUMNS[2:]:
                value = getattr(record, name)
                row.append("" if value is None else f"{value:.6e}")
            writer.writerow(row)

    def to_csv(self) -> str:
        """CSV text of the report."""
        buffer = io.StringIO()
        self.write_csv(buffer)
        return buffer.getvalue()


def run_sweep(
    scene: PorismScene, algorithm: Union[str, Algorithm], n_samples: int
) -> PorismSweepReport:
    """Sample *n_samples* uniform start angles and record every outcome.

    Raises:
        SceneError: If *n_samples* is below 1.
    """
    algorithm = Algorithm.parse(algorithm)
    if n_samples < 1:
        raise SceneError(f"Need at least one sample, got: {n_samples}", field_path="samples")

    arcs = fertile_arcs(scene.circumcircle, scene.inconic)
    report = PorismSweepReport(algorithm=algorithm, arcs=arcs)
    for idx in range(n_samples):
        record, _ = evaluate_start(scene, algorithm, TWO_PI * idx / n_samples, arcs)
        if record.outcome != Outcome.CONSTRUCTED:
            logger.debug("Sample %.6f: %s (%s)", record.start_angle, record.outcome.value, record.message)
        report.records.append(record)

    logger.info(
        "Sweep %s: %d samples, %d constructed, %d infertile, %d degenerate, %d failed, %d disagreements",
        algorithm.value,
        n_samples,
        report.count(Outcome.CONSTRUCTED),
        report.count(Outcome.INFERTILE),
        report.count(Outcome.DEGENERATE),
        report.count(Outcome.FAILED),
        report.disagreements,
    )
    return report


# Cross-family consistency
###########################


@dataclass
class ConsistencyRecord:
    """Agreement of the three families at one start point.

    Attributes:
        start_angle (float): Start angle on the circumcircle.
        algorithm_gap (float): Vertex-set distance between the pedal and
            polar constructions.
        center_err (float): Center distance between the constructed
            triangle's negative-pedal circle and the scene's.
        radius_err (float): Radius difference of the same circles.
        homothety (HomothetyReport): Negative-pedal vs polar triangles.
    """

    start_angle: float
    algorithm_gap: float
    center_err: float
    radius_err: float
    homothety: HomothetyReport

    def passes(self, limit: float) -> bool:
        """True if every length gap is within *limit* and homothety holds."""
        return (
            max(self.algorithm_gap, self.center_err, self.radius_err) <= limit
            and self.homothety.passes()
        )

    def as_dict(self) -> Dict[str, object]:
        """JSON-friendly view."""
        return {
            "start_angle": self.start_angle,
            "algorithm_gap": self.algorithm_gap,
            "center_err": self.center_err,
            "radius_err": self.radius_err,
            "homothety": self.homothety.as_dict(),
        }


def cross_family_consistency(scene: PorismScene, start: Point) -> ConsistencyRecord:
    """Check that the pedal and polar families agree at *start*.

    The triangle built by the pedal construction must equal the polar
    construction's, its negative-pedal circle must be the scene's, and its
    negative-pedal and polar triangles must be homothetic.

    Raises:
        InfertileStart: If *start* is infertile.
        DegenerateOutput: If a construction collapses.
        ValidationError: If the pedal point lies on a side of the triangle.
    """
    triangle = pedal_porism_step(scene, start)
    polar_family, _ = polar_porism_step(scene, start)

    cfg = PedalConfig(triangle, scene.pedal_point, tol=scene.tol)
    center_err, radius_err = negative_pedal_circle(cfg).gap(scene.negative_pedal_circle)
    return ConsistencyRecord(
        start_angle=scene.circumcircle.angle_of(start),
        algorithm_gap=triangle.vertex_gap(polar_family),
        center_err=center_err,
        radius_err=radius_err,
        homothety=homothety_report(cfg, scene.inversion),
    )
