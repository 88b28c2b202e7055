"""Plane geometry primitives for pedal and polar constructions.

This module provides the floating-point building blocks every porism
construction is made of:

- Tolerance: scene-scaled thresholds shared by all predicates
- Point, Line, Circle: immutable Cartesian primitives
- Conic: canonically scaled symmetric 3x3 matrix with a classification tag
- Triangle: three non-collinear vertices stored counterclockwise

and the operations that connect them (lines through points, perpendicular
feet, circumcircles, circle/line, circle/circle and circle/conic
intersections, tangents from a point and the tangency defect of a line).

Two tolerance tiers are used. ``Tolerance.eps`` (1e-9 of the scene length)
decides incidence for primitives; ``Tolerance.defect`` (1e-7 of the scene
length) bounds errors accumulated along a construction chain.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from itertools import permutations
from typing import ClassVar, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from pedal_porism.exceptions import (
    CoincidentCircles,
    CoincidentCurves,
    CoincidentPoints,
    DegenerateConic,
    DegenerateTriangle,
    GeometryError,
    NonFiniteValue,
    ZeroMatrix,
)

TWO_PI = 2.0 * math.pi

# Relative thresholds on dimensionless quantities
CLASSIFY_RTOL = 1e-10
CIRCLE_RTOL = 1e-9
CENTER_RTOL = 1e-14
SIGN_RTOL = 1e-12
PENCIL_RTOL = 1e-12
ON_CURVE_RTOL = 1e-9
ROOT_IMAG_RTOL = 1e-6
ROOT_MERGE_ANGLE = 1e-8
NEWTON_STEPS = 3


# Tolerances
###########################


@dataclass(frozen=True)
class Tolerance:
    """Scene-scaled tolerances.

    Args:
        scale (float): Scene length L, usually the circumcircle diameter.
        eps_rel (float): Incidence threshold relative to L.
        defect_rel (float): Construction-chain threshold relative to L.
    """

    scale: float = 1.0
    eps_rel: float = 1e-9
    defect_rel: float = 1e-7

    @property
    def eps(self) -> float:
        """Absolute incidence threshold."""
        return self.eps_rel * self.scale

    @property
    def defect(self) -> float:
        """Absolute construction-chain threshold."""
        return self.defect_rel * self.scale

    def for_scale(self, scale: float) -> "Tolerance":
        """Return the same relative thresholds for another scene length."""
        if not math.isfinite(scale) or scale <= 0:
            raise GeometryError(f"Tolerance scale must be positive, got: {scale}")
        return replace(self, scale=float(scale))

    def relaxed(self, factor: float) -> "Tolerance":
        """Return a tolerance whose defect threshold is multiplied by *factor*."""
        if not math.isfinite(factor) or factor <= 0:
            raise GeometryError(f"Tolerance factor must be positive, got: {factor}")
        return replace(self, defect_rel=self.defect_rel * factor)


DEFAULT_TOLERANCE = Tolerance()


def normalize_angle(theta: float) -> float:
    """Map an angle to [0, 2*pi)."""
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    if theta >= TWO_PI:
        theta = 0.0
    return theta


# Points and lines
###########################


@dataclass(frozen=True)
class Point:
    """Cartesian point in scene units."""

    x: float
    y: float

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise NonFiniteValue(f"Point coordinates must be finite, got: ({x}, {y})")
        # Drop negative zeros so reports and canonical forms are stable
        object.__setattr__(self, "x", x + 0.0)
        object.__setattr__(self, "y", y + 0.0)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, factor: float) -> "Point":
        return Point(self.x * factor, self.y * factor)

    __rmul__ = __mul__

    def __truediv__(self, factor: float) -> "Point":
        return Point(self.x / factor, self.y / factor)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def dot(self, other: "Point") -> float:
        """Scalar product."""
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> float:
        """Z component of the cross product."""
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        """Euclidean length."""
        return math.hypot(self.x, self.y)

    def distance_to(self, other: "Point") -> float:
        """Euclidean distance to *other*."""
        return math.hypot(self.x - other.x, self.y - other.y)

    def unit(self) -> "Point":
        """Unit vector with the same direction."""
        length = self.norm()
        if length == 0.0:
            raise GeometryError("Zero vector has no direction")
        return Point(self.x / length, self.y / length)

    def perp(self) -> "Point":
        """Vector rotated by +90 degrees."""
        return Point(-self.y, self.x)

    def angle(self) -> float:
        """Polar angle in [0, 2*pi)."""
        return normalize_angle(math.atan2(self.y, self.x))

    def homogeneous(self) -> np.ndarray:
        """Homogeneous coordinates (x, y, 1)."""
        return np.array([self.x, self.y, 1.0])

    def as_tuple(self) -> Tuple[float, float]:
        """Coordinates as a plain tuple."""
        return (self.x, self.y)

    @classmethod
    def from_homogeneous(cls, vec: Sequence[float]) -> "Point":
        """Build a point from homogeneous coordinates.

        Raises:
            GeometryError: If the point is at infinity.
        """
        x, y, w = (float(v) for v in vec)
        if w == 0.0 or not math.isfinite(x / w) or not math.isfinite(y / w):
            raise GeometryError("Point at infinity")
        return cls(x / w, y / w)

    @classmethod
    def from_polar(cls, center: "Point", radius: float, angle: float) -> "Point":
        """Point at *angle* on the circle of *radius* around *center*."""
        return cls(
            center.x + radius * math.cos(angle), center.y + radius * math.sin(angle)
        )


@dataclass(frozen=True)
class Line:
    """Line ``a*x + b*y + c = 0`` stored with ``a**2 + b**2 == 1``.

    The sign is fixed so that the first nonzero of ``(a, b)`` is positive,
    which makes two constructions of the same line compare equal.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = float(self.a), float(self.b), float(self.c)
        norm = math.hypot(a, b)
        if not (math.isfinite(norm) and math.isfinite(c)) or norm == 0.0:
            raise GeometryError(f"Invalid line coefficients: ({a}, {b}, {c})")
        a, b, c = a / norm, b / norm, c / norm
        flip = a < 0.0 if abs(a) > SIGN_RTOL else b < 0.0
        if flip:
            a, b, c = -a, -b, -c
        object.__setattr__(self, "a", a + 0.0)
        object.__setattr__(self, "b", b + 0.0)
        object.__setattr__(self, "c", c + 0.0)

    @property
    def normal(self) -> Point:
        """Unit normal (a, b)."""
        return Point(self.a, self.b)

    @property
    def direction(self) -> Point:
        """Unit direction vector."""
        return Point(-self.b, self.a)

    def value(self, p: Point) -> float:
        """Signed distance of *p* to the line."""
        return self.a * p.x + self.b * p.y + self.c

    def distance_to(self, p: Point) -> float:
        """Unsigned distance of *p* to the line."""
        return abs(self.value(p))

    def contains(self, p: Point, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        """True if *p* lies on the line within ``tol.eps``."""
        return self.distance_to(p) <= tol.eps

    def homogeneous(self) -> np.ndarray:
        """Coefficient vector (a, b, c)."""
        return np.array([self.a, self.b, self.c])

    def intersect(self, other: "Line") -> Optional[Point]:
        """Intersection point, or None for parallel lines."""
        vec = np.cross(self.homogeneous(), other.homogeneous())
        if abs(vec[2]) <= SIGN_RTOL:
            return None
        return Point(vec[0] / vec[2], vec[1] / vec[2])

    @classmethod
    def from_homogeneous(cls, vec: Sequence[float]) -> "Line":
        """Build a line from a homogeneous coefficient vector."""
        a, b, c = (float(v) for v in vec)
        return cls(a, b, c)


def line_through(p: Point, q: Point, tol: Tolerance = DEFAULT_TOLERANCE) -> Line:
    """Return the line through two distinct points.

    Raises:
        CoincidentPoints: If the points are closer than ``tol.eps``.
    """
    if p.distance_to(q) <= tol.eps:
        raise CoincidentPoints(f"Cannot draw a line through coincident points {p}")
    a = p.y - q.y
    b = q.x - p.x
    return Line(a, b, -(a * p.x + b * p.y))


def perpendicular_at(
    p: Point, through: Point, tol: Tolerance = DEFAULT_TOLERANCE
) -> Line:
    """Return the line through *p* perpendicular to the segment (through, p).

    Raises:
        CoincidentPoints: If *p* and *through* coincide.
    """
    normal = p - through
    if normal.norm() <= tol.eps:
        raise CoincidentPoints(f"Perpendicular direction undefined at {p}")
    return Line(normal.x, normal.y, -normal.dot(p))


def foot_of_perpendicular(d: Point, line: Line) -> Point:
    """Orthogonal projection of *d* on *line*."""
    return d - line.normal * line.value(d)


# Circles
###########################


@dataclass(frozen=True)
class Circle:
    """Circle given by center and radius."""

    center: Point
    radius: float

    def __post_init__(self):
        radius = float(self.radius)
        if not math.isfinite(radius):
            raise NonFiniteValue(f"Circle radius must be finite, got: {radius}")
        if radius <= 0.0:
            raise GeometryError(f"Circle radius must be positive, got: {radius}")
        object.__setattr__(self, "radius", radius)

    @classmethod
    def thales(
        cls, p: Point, q: Point, tol: Tolerance = DEFAULT_TOLERANCE
    ) -> "Circle":
        """Circle of diameter [p, q].

        Raises:
            CoincidentPoints: If *p* and *q* coincide.
        """
        if p.distance_to(q) <= tol.eps:
            raise CoincidentPoints(f"Thales circle of a single point {p}")
        return cls((p + q) * 0.5, 0.5 * p.distance_to(q))

    @property
    def diameter(self) -> float:
        """Twice the radius."""
        return 2.0 * self.radius

    def point_at(self, angle: float) -> Point:
        """Point of the circle at polar *angle* around the center."""
        return Point.from_polar(self.center, self.radius, angle)

    def angle_of(self, p: Point) -> float:
        """Polar angle of *p* seen from the center, in [0, 2*pi)."""
        return (p - self.center).angle()

    def defect(self, p: Point) -> float:
        """Distance of *p* to the circle."""
        return abs(p.distance_to(self.center) - self.radius)

    def contains(self, p: Point, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        """True if *p* lies on the circle within ``tol.eps``."""
        return self.defect(p) <= tol.eps

    def power(self, p: Point) -> float:
        """Power of *p* with respect to the circle."""
        return (p - self.center).dot(p - self.center) - self.radius**2

    def matrix(self) -> np.ndarray:
        """Homogeneous matrix of ``(x-cx)**2 + (y-cy)**2 - r**2``."""
        cx, cy = self.center.x, self.center.y
        return np.array(
            [
                [1.0, 0.0, -cx],
                [0.0, 1.0, -cy],
                [-cx, -cy, cx * cx + cy * cy - self.radius**2],
            ]
        )

    def as_conic(self, tol: Tolerance = DEFAULT_TOLERANCE) -> "Conic":
        """Lossless conversion to a Conic."""
        return conic_from_matrix(self.matrix(), tol=tol)

    def gap(self, other: "Circle") -> Tuple[float, float]:
        """Return (center distance, radius difference) to *other*."""
        return (
            self.center.distance_to(other.center),
            abs(self.radius - other.radius),
        )


def _order_ccw(center: Point, points: List[Point]) -> List[Point]:
    """Order two points counterclockwise as seen from *center*."""
    if len(points) < 2:
        return points
    first, second = points
    turn = (first - center).cross(second - center)
    if turn < 0.0 or (turn == 0.0 and second.as_tuple() < first.as_tuple()):
        return [second, first]
    return [first, second]


def circle_line_intersection(
    circle: Circle, line: Line, tol: Tolerance = DEFAULT_TOLERANCE
) -> List[Point]:
    """Intersect a circle and a line.

    Returns:
        list: Zero, one (tangency within ``tol.eps``) or two points, the
            latter ordered counterclockwise around the circle center.
    """
    dist = line.value(circle.center)
    foot = circle.center - line.normal * dist
    if abs(abs(dist) - circle.radius) <= tol.eps:
        return [foot]
    if abs(dist) > circle.radius:
        return []
    half_chord = math.sqrt(circle.radius**2 - dist**2)
    points = [
        foot + line.direction * half_chord,
        foot - line.direction * half_chord,
    ]
    return _order_ccw(circle.center, points)


def circle_circle_intersection(
    first: Circle, second: Circle, tol: Tolerance = DEFAULT_TOLERANCE
) -> List[Point]:
    """Intersect two circles.

    Returns:
        list: Zero, one or two points, ordered counterclockwise around the
            center of *first*.

    Raises:
        CoincidentCircles: If both circles are the same within ``tol.eps``.
    """
    delta = second.center - first.center
    dist = delta.norm()
    r1, r2 = first.radius, second.radius
    if dist <= tol.eps:
        if abs(r1 - r2) <= tol.eps:
            raise CoincidentCircles(f"Circles coincide: {first}")
        return []
    axis = delta / dist
    along = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist)
    base = first.center + axis * along
    if abs(dist - (r1 + r2)) <= tol.eps or abs(dist - abs(r1 - r2)) <= tol.eps:
        return [base]
    if dist > r1 + r2 or dist < abs(r1 - r2):
        return []
    half_chord = math.sqrt(max(r1 * r1 - along * along, 0.0))
    points = [base + axis.perp() * half_chord, base - axis.perp() * half_chord]
    return _order_ccw(first.center, points)


# Conics
###########################


class ConicKind(str, Enum):
    """Classification tag of a conic."""

    ELLIPSE = "ellipse"
    HYPERBOLA = "hyperbola"
    PARABOLA = "parabola"
    CIRCLE = "circle"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ConicAxes:
    """Principal data of a central conic.

    Attributes:
        center (Point): Center of symmetry.
        direction (Point): Unit vector of the focal (major/transverse) axis.
        a (float): Semi-major (ellipse) or semi-transverse (hyperbola) axis.
        b_sq (float): Squared semi-minor axis, negative for hyperbolas.
    """

    center: Point
    direction: Point
    a: float
    b_sq: float

    @property
    def b(self) -> float:
        """Semi-minor or semi-conjugate axis length."""
        return math.sqrt(abs(self.b_sq))

    @property
    def linear_eccentricity(self) -> float:
        """Distance from the center to each focus."""
        return math.sqrt(max(self.a * self.a - self.b_sq, 0.0))


def _adjugate(m: np.ndarray) -> np.ndarray:
    """Adjugate of a 3x3 matrix (defined for singular matrices too)."""
    cols = [m[:, 0], m[:, 1], m[:, 2]]
    return np.array(
        [
            np.cross(cols[1], cols[2]),
            np.cross(cols[2], cols[0]),
            np.cross(cols[0], cols[1]),
        ]
    )


def _canonical_matrix(m: Sequence[Sequence[float]]) -> np.ndarray:
    """Symmetric, Frobenius-normalized matrix whose largest entry is positive."""
    m = np.array(m, dtype=float)
    if m.shape != (3, 3):
        raise GeometryError(f"Conic matrix must be 3x3, got shape: {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteValue("Conic matrix must be finite")
    peak = np.abs(m).max()
    if peak == 0.0:
        raise ZeroMatrix("Conic matrix is zero")
    if np.abs(m - m.T).max() > 1e-9 * peak:
        raise GeometryError("Conic matrix must be symmetric")
    m = 0.5 * (m + m.T)
    m = m / np.linalg.norm(m)

    # Largest entry, ties broken by position, decides the sign
    flat = np.abs(m).ravel()
    lead = int(np.flatnonzero(flat >= (1.0 - 1e-6) * flat.max())[0])
    if m.ravel()[lead] < 0.0:
        m = -m
    m = m + 0.0
    m.setflags(write=False)
    return m


def _classify(m: np.ndarray, tol: Tolerance) -> ConicKind:
    """Classify a canonical matrix.

    A central conic is judged by the constant left once its center is moved
    to the origin, so neither its position nor its size matter. Conics
    without a center are judged in a frame rescaled by the scene length.
    """
    block = m[:2, :2]
    block_sv = np.linalg.svd(block, compute_uv=False)
    if block_sv[-1] <= CLASSIFY_RTOL * block_sv[0]:
        return _classify_noncentral(m, tol)

    linear = m[:2, 2]
    center = -np.linalg.solve(block, linear)
    shift = float(linear @ center)
    # Centered form: X^T block X + constant = 0
    constant = float(m[2, 2]) + shift
    if abs(constant) <= CENTER_RTOL * max(abs(float(m[2, 2])), abs(shift)):
        return ConicKind.DEGENERATE
    if np.linalg.det(block) < 0.0:
        return ConicKind.HYPERBOLA

    trace = block[0, 0] + block[1, 1]
    # Same signs everywhere: no real point
    if constant * trace > 0.0:
        return ConicKind.DEGENERATE
    if (
        abs(block[0, 0] - block[1, 1]) <= CIRCLE_RTOL * abs(trace)
        and abs(block[0, 1]) <= CIRCLE_RTOL * abs(trace)
    ):
        return ConicKind.CIRCLE
    return ConicKind.ELLIPSE


def _classify_noncentral(m: np.ndarray, tol: Tolerance) -> ConicKind:
    """Parabola, or degenerate when the rescaled matrix is singular."""
    frame = np.diag([tol.scale, tol.scale, 1.0])
    scaled = frame @ m @ frame
    scaled = scaled / np.linalg.norm(scaled)

    sv = np.linalg.svd(scaled, compute_uv=False)
    if sv[-1] <= CLASSIFY_RTOL * sv[0]:
        return ConicKind.DEGENERATE
    return ConicKind.PARABOLA


@dataclass(frozen=True, eq=False)
class Conic:
    """Conic ``X^T m X = 0`` in homogeneous coordinates.

    Build instances with :func:`conic_from_matrix` or :meth:`from_axes`;
    both apply the canonical scaling that makes two constructions of the
    same conic comparable with :meth:`matrix_gap`.
    """

    m: np.ndarray
    kind: ConicKind

    @classmethod
    def from_matrix(
        cls, m: Sequence[Sequence[float]], tol: Tolerance = DEFAULT_TOLERANCE
    ) -> "Conic":
        """Alias of :func:`conic_from_matrix`."""
        return conic_from_matrix(m, tol=tol)

    @classmethod
    def from_axes(
        cls,
        center: Point,
        direction: Point,
        a: float,
        b_sq: float,
        tol: Tolerance = DEFAULT_TOLERANCE,
    ) -> "Conic":
        """Build ``u**2/a**2 + v**2/b_sq = 1`` in the frame of *direction*.

        A negative *b_sq* gives a hyperbola whose transverse axis is
        *direction*.
        """
        if not (a > 0.0 and math.isfinite(a)):
            raise GeometryError(f"Semi-axis must be positive, got: {a}")
        if b_sq == 0.0 or not math.isfinite(b_sq):
            raise DegenerateConic(f"Squared semi-axis must be nonzero, got: {b_sq}")
        u = direction.unit()
        v = u.perp()
        # Global to local frame: (u, v) coordinates relative to the center
        frame = np.array(
            [
                [u.x, u.y, -u.dot(center)],
                [v.x, v.y, -v.dot(center)],
                [0.0, 0.0, 1.0],
            ]
        )
        local = np.diag([1.0 / (a * a), 1.0 / b_sq, -1.0])
        return conic_from_matrix(frame.T @ local @ frame, tol=tol)

    @property
    def is_degenerate(self) -> bool:
        """True when the conic has no usable real curve."""
        return self.kind in (ConicKind.DEGENERATE, ConicKind.PARABOLA)

    def require_nondegenerate(self) -> None:
        """Raise :class:`DegenerateConic` unless the conic is proper and central."""
        if self.kind == ConicKind.DEGENERATE:
            raise DegenerateConic("Operation requires a non-degenerate conic")
        if self.kind == ConicKind.PARABOLA:
            raise DegenerateConic("Parabolic conic: ambiguous within tolerance")

    def value(self, p: Point) -> float:
        """Quadratic form at *p*."""
        vec = p.homogeneous()
        return float(vec @ self.m @ vec)

    def form_scale(self, p: Point) -> float:
        """Magnitude against which :meth:`value` at *p* is compared."""
        vec = p.homogeneous()
        return float(np.linalg.norm(self.m) * (vec @ vec))

    def adjugate(self) -> np.ndarray:
        """Adjugate matrix, the dual conic in line coordinates."""
        return _adjugate(self.m)

    def contains(self, p: Point, rtol: float = ON_CURVE_RTOL) -> bool:
        """True if *p* satisfies the equation within a relative tolerance."""
        return abs(self.value(p)) <= rtol * self.form_scale(p)

    def tangent_at(self, p: Point) -> Line:
        """Polar line of *p*, the tangent when *p* is on the conic."""
        return Line.from_homogeneous(self.m @ p.homogeneous())

    def matrix_gap(self, other: "Conic") -> float:
        """Largest entrywise difference between canonical matrices, sign-blind."""
        return float(
            min(np.abs(self.m - other.m).max(), np.abs(self.m + other.m).max())
        )

    def axes(self) -> ConicAxes:
        """Center, focal axis and semi-axes of an ellipse or hyperbola.

        Raises:
            DegenerateConic: For degenerate or parabolic conics.
        """
        self.require_nondegenerate()
        block = self.m[:2, :2]
        lin = self.m[:2, 2]
        center = -np.linalg.solve(block, lin)
        at_center = self.m[2, 2] + lin @ center
        evals, evecs = np.linalg.eigh(block)
        squares = -at_center / evals

        if self.kind == ConicKind.HYPERBOLA:
            focal = 0 if squares[0] > 0.0 else 1
        else:
            focal = int(np.argmax(squares))
        other = 1 - focal

        if self.kind == ConicKind.CIRCLE:
            direction = Point(1.0, 0.0)
        else:
            vec = evecs[:, focal]
            lead = vec[0] if abs(vec[0]) > SIGN_RTOL else vec[1]
            direction = Point(vec[0], vec[1]) * (1.0 if lead > 0.0 else -1.0)
        return ConicAxes(
            center=Point(center[0], center[1]),
            direction=direction.unit(),
            a=math.sqrt(squares[focal]),
            b_sq=float(squares[other]),
        )

    def foci(self) -> Tuple[Point, Point]:
        """The two foci, along the focal axis."""
        axes = self.axes()
        offset = axes.direction * axes.linear_eccentricity
        return (axes.center + offset, axes.center - offset)

    def point_at(self, t: float, branch: int = 1) -> Point:
        """Point of the conic for parameter *t*.

        Ellipses use the eccentric angle; hyperbolas the hyperbolic
        parameter on the branch selected by the sign of *branch*.
        """
        axes = self.axes()
        u, v = axes.direction, axes.direction.perp()
        if self.kind == ConicKind.HYPERBOLA:
            side = 1.0 if branch >= 0 else -1.0
            return (
                axes.center
                + u * (side * axes.a * math.cosh(t))
                + v * (axes.b * math.sinh(t))
            )
        return axes.center + u * (axes.a * math.cos(t)) + v * (axes.b * math.sin(t))

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(f"{x:.6g}" for x in row) for row in self.m)
        return f"Conic({self.kind.value}, [{rows}])"


def conic_from_matrix(
    m: Sequence[Sequence[float]], tol: Tolerance = DEFAULT_TOLERANCE
) -> Conic:
    """Canonically scale and classify a symmetric 3x3 matrix.

    Raises:
        ZeroMatrix: If every entry is zero.
        GeometryError: If the matrix is not symmetric or not 3x3.
    """
    canon = _canonical_matrix(m)
    return Conic(m=canon, kind=_classify(canon, tol))


def line_conic_tangency_defect(line: Line, conic: Conic) -> float:
    """Normalized dual-conic residual of *line*; zero iff tangent.

    Raises:
        DegenerateConic: If the conic is degenerate.
    """
    conic.require_nondegenerate()
    vec = line.homogeneous()
    dual = conic.adjugate()
    return float(abs(vec @ dual @ vec) / ((vec @ vec) * np.linalg.norm(dual)))


def _tangent_pencil(p: Point, conic: Conic) -> Tuple[np.ndarray, np.ndarray, tuple]:
    """Quadratic form of the dual conic on the pencil of lines through *p*."""
    conic.require_nondegenerate()
    dual = conic.adjugate()
    vertical = np.array([1.0, 0.0, -p.x])
    horizontal = np.array([0.0, 1.0, -p.y])
    alpha = float(vertical @ dual @ vertical)
    beta = float(vertical @ dual @ horizontal)
    gamma = float(horizontal @ dual @ horizontal)
    return vertical, horizontal, (alpha, beta, gamma)


def _pencil_discriminant(alpha: float, beta: float, gamma: float) -> Tuple[float, float]:
    disc = beta * beta - alpha * gamma
    size = max(beta * beta, abs(alpha * gamma), np.finfo(float).tiny)
    return disc, size


def tangent_count(p: Point, conic: Conic) -> int:
    """Number of real tangents from *p* to *conic*: 2 outside, 1 on, 0 inside.

    Inside means in the same component of the plane as a focus.
    """
    _, _, (alpha, beta, gamma) = _tangent_pencil(p, conic)
    disc, size = _pencil_discriminant(alpha, beta, gamma)
    if abs(disc) <= PENCIL_RTOL * size:
        return 1
    return 2 if disc > 0.0 else 0


def tangents_from_point(p: Point, conic: Conic) -> List[Line]:
    """Tangent lines from *p* to *conic*, sorted by normal angle.

    Raises:
        DegenerateConic: If the conic is degenerate.
    """
    vertical, horizontal, (alpha, beta, gamma) = _tangent_pencil(p, conic)
    disc, size = _pencil_discriminant(alpha, beta, gamma)

    if abs(disc) <= PENCIL_RTOL * size:
        first, second = (-beta, alpha), (gamma, -beta)
        pick = first if math.hypot(*first) >= math.hypot(*second) else second
        if math.hypot(*pick) == 0.0:
            pick = (1.0, 0.0) if abs(alpha) <= abs(gamma) else (0.0, 1.0)
        weights = [pick]
    elif disc < 0.0:
        return []
    else:
        root = math.copysign(math.sqrt(disc), beta) if beta != 0.0 else math.sqrt(disc)
        q = -(beta + root)
        weights = [(q, alpha), (gamma, q)]

    lines = [
        Line.from_homogeneous(u * vertical + v * horizontal) for u, v in weights
    ]
    return sorted(lines, key=lambda line: line.normal.angle())


def circle_conic_intersection(
    circle: Circle, conic: Conic, tol: Tolerance = DEFAULT_TOLERANCE
) -> List[Point]:
    """Intersect a circle with a conic.

    The circle is parametrized by the tangent of the half angle, measured
    from the point opposite to where the conic form is largest, which turns
    the conic equation into a quartic without a root at infinity. The
    quartic is solved through companion-matrix eigenvalues and each real
    root polished with Newton steps on the angular form.

    Returns:
        list: Up to four points, sorted by angle on the circle.

    Raises:
        DegenerateConic: If the conic is degenerate.
        CoincidentCurves: If the circle lies on the conic.
    """
    conic.require_nondegenerate()
    del tol  # Incidence is decided on the dimensionless residual below

    samples = [TWO_PI * i / 8.0 for i in range(8)]
    residuals = [
        abs(conic.value(circle.point_at(t))) / conic.form_scale(circle.point_at(t))
        for t in samples
    ]
    if max(residuals) <= ON_CURVE_RTOL:
        raise CoincidentCurves("Circle lies on the conic")
    offset = samples[int(np.argmax(residuals))] - math.pi

    cx, cy, r = circle.center.x, circle.center.y, circle.radius
    cos0, sin0 = math.cos(offset), math.sin(offset)
    weight = np.array([1.0, 0.0, 1.0])
    cos_half = np.array([1.0, 0.0, -1.0])
    sin_half = np.array([0.0, 2.0, 0.0])
    coords = [
        cx * weight + r * (cos0 * cos_half - sin0 * sin_half),
        cy * weight + r * (sin0 * cos_half + cos0 * sin_half),
        weight,
    ]
    quartic = np.zeros(5)
    for i in range(3):
        for j in range(3):
            quartic = npoly.polyadd(
                quartic, conic.m[i, j] * npoly.polymul(coords[i], coords[j])
            )
    quartic = np.trim_zeros(quartic, "b")

    def form(theta: float) -> Tuple[float, float]:
        point = circle.point_at(theta).homogeneous()
        speed = np.array([-r * math.sin(theta), r * math.cos(theta), 0.0])
        grad = conic.m @ point
        return float(point @ grad), float(2.0 * grad @ speed)

    angles = []
    for root in npoly.polyroots(quartic):
        if abs(root.imag) > ROOT_IMAG_RTOL * (1.0 + abs(root)):
            continue
        theta = offset + 2.0 * math.atan(root.real)
        for _ in range(NEWTON_STEPS):
            val, slope = form(theta)
            if slope == 0.0:
                break
            theta -= val / slope
        point = circle.point_at(theta)
        if abs(conic.value(point)) > ON_CURVE_RTOL * conic.form_scale(point):
            continue
        angles.append(normalize_angle(theta))

    angles.sort()
    merged: List[float] = []
    for theta in angles:
        if merged and theta - merged[-1] <= ROOT_MERGE_ANGLE:
            continue
        merged.append(theta)
    if len(merged) > 1 and merged[0] + TWO_PI - merged[-1] <= ROOT_MERGE_ANGLE:
        merged.pop()
    return [circle.point_at(theta) for theta in merged]


# Triangles
###########################


@dataclass(frozen=True)
class Triangle:
    """Non-degenerate triangle with vertices stored counterclockwise.

    A clockwise input is reoriented by swapping ``b`` and ``c``.

    Raises:
        DegenerateTriangle: If twice the signed area is below
            ``degeneracy_rel`` times the squared longest side.
    """

    a: Point
    b: Point
    c: Point

    degeneracy_rel: ClassVar[float] = 1e-9

    def __post_init__(self):
        area2 = (self.b - self.a).cross(self.c - self.a)
        longest = max(
            self.a.distance_to(self.b),
            self.b.distance_to(self.c),
            self.c.distance_to(self.a),
        )
        if longest == 0.0 or abs(area2) <= self.degeneracy_rel * longest * longest:
            raise DegenerateTriangle(
                f"Collinear vertices: {self.a}, {self.b}, {self.c}"
            )
        if area2 < 0.0:
            b, c = self.b, self.c
            object.__setattr__(self, "b", c)
            object.__setattr__(self, "c", b)

    @property
    def vertices(self) -> Tuple[Point, Point, Point]:
        """Vertices (A, B, C)."""
        return (self.a, self.b, self.c)

    @property
    def area(self) -> float:
        """Unsigned area."""
        return 0.5 * abs((self.b - self.a).cross(self.c - self.a))

    @property
    def side_lengths(self) -> Tuple[float, float, float]:
        """Lengths of the sides opposite A, B and C."""
        return (
            self.b.distance_to(self.c),
            self.c.distance_to(self.a),
            self.a.distance_to(self.b),
        )

    @property
    def diameter(self) -> float:
        """Longest side."""
        return max(self.side_lengths)

    def sides(self) -> Tuple[Line, Line, Line]:
        """Side lines opposite A, B and C."""
        return (
            line_through(self.b, self.c),
            line_through(self.c, self.a),
            line_through(self.a, self.b),
        )

    def circumcircle(self) -> Circle:
        """Circumscribed circle."""
        return circumcircle(self)

    def centroid(self) -> Point:
        """Barycenter of the vertices."""
        return (self.a + self.b + self.c) / 3.0

    def incenter(self) -> Point:
        """Center of the inscribed circle, from side-length weights."""
        la, lb, lc = self.side_lengths
        return (self.a * la + self.b * lb + self.c * lc) / (la + lb + lc)

    def inradius(self) -> float:
        """Radius of the inscribed circle."""
        return 2.0 * self.area / sum(self.side_lengths)

    def orthocenter(self) -> Point:
        """Intersection of the altitudes."""
        center = self.circumcircle().center
        return self.a + self.b + self.c - center * 2.0

    def vertex_gap(self, other: "Triangle") -> float:
        """Largest vertex distance under the best relabeling of *other*."""
        return min(
            max(p.distance_to(q) for p, q in zip(self.vertices, perm))
            for perm in permutations(other.vertices)
        )


def circumcircle(triangle: Triangle) -> Circle:
    """Circumscribed circle of a triangle.

    Raises:
        DegenerateTriangle: If the vertices are collinear.
    """
    origin = triangle.a
    b = triangle.b - origin
    c = triangle.c - origin
    denom = 2.0 * b.cross(c)
    if denom == 0.0:
        raise DegenerateTriangle(f"Collinear vertices: {triangle}")
    b2, c2 = b.dot(b), c.dot(c)
    offset = Point((c.y * b2 - b.y * c2) / denom, (b.x * c2 - c.x * b2) / denom)
    return Circle(origin + offset, offset.norm())
