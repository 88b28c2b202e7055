"""
Pedal Porism Exceptions Module

This module defines the exception hierarchy used by the pedal porism library.
Geometric primitives raise ``GeometryError`` subclasses, porism constructions
raise ``ConstructionError`` subclasses and scene ingestion raises
``SceneError`` subclasses carrying the path of the offending field.
"""

from typing import Optional

# Custom exceptions
###########################


class PorismError(Exception):
    """Base exception for all pedal porism errors."""


# Geometry
# ===============


class GeometryError(PorismError):
    """Raised when a geometric primitive receives inputs it cannot handle."""


class NonFiniteValue(GeometryError):
    """Raised when a coordinate or radius is NaN or infinite."""


class CoincidentPoints(GeometryError):
    """Raised when two points that must be distinct coincide."""


class CoincidentCircles(GeometryError):
    """Raised when two circles that must be distinct coincide."""


class CoincidentCurves(GeometryError):
    """Raised when a circle lies entirely on the conic it is intersected with."""


class ZeroMatrix(GeometryError):
    """Raised when a conic matrix is zero."""


class DegenerateConic(GeometryError):
    """Raised when an operation needs a non-degenerate conic."""


class DegenerateTriangle(GeometryError):
    """Raised when three points are collinear within tolerance."""


class CenterInversion(GeometryError):
    """Raised when inverting, or taking the polar of, the inversion center."""


class LineThroughCenter(GeometryError):
    """Raised when taking the pole of a line through the inversion center."""


class PointOnCircle(GeometryError):
    """Raised when a pedal point lies on the circle whose negative pedal is asked."""


# Constructions
# ===============


class ConstructionError(PorismError):
    """Raised when a porism construction cannot produce a triangle."""


class DegenerateOutput(ConstructionError):
    """Raised when a construction collapses (coincident or far-away vertices)."""


class InfertileStart(ConstructionError):
    """Raised when a start point lies on an infertile arc."""


# Scenes
# ===============


class SceneError(PorismError):
    """Raised when there's an error in a scene description.

    Optional ``field_path`` names the offending field, for instance
    ``triangle[1][0]`` or ``pedal_point``.
    """

    def __init__(self, message: str, field_path: Optional[str] = None):
        if field_path:
            message = f"{field_path}: {message}"
        super().__init__(message)
        self.field_path = field_path


class ParseError(SceneError):
    """Raised when a scene or figure description is malformed."""


class ValidationError(SceneError):
    """Raised when a scene violates a geometric precondition."""


class SceneResolutionError(SceneError):
    """Raised when the scene construction graph cannot be resolved."""
