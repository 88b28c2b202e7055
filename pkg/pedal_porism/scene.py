"""Porism scene construction.

A scene is a seed triangle, a pedal point and an inversion circle centred
at that point. Everything else is derived:

- the pedal circle and the inconic focused at the pedal point;
- the polar circle, inverse of the pedal circle;
- the two caustics of the circumcircle: its polar dual, circumscribed by
  the polar triangles, and its negative pedal, circumscribed by the
  negative-pedal triangles;
- the negative-pedal circle and the seed's polar and negative-pedal
  triangles.

Derived objects are declared in a recipe table with their dependencies.
``SceneBuilder`` resolves the table once in topological order, computes
each object, and can print or export the graph for debugging.
"""

import logging
from dataclasses import dataclass, field
from graphlib import TopologicalSorter
from typing import Any, Dict, List, Optional, Tuple

try:
    import pydot

    HAS_PYDOT = True
except ImportError:
    pydot = None
    HAS_PYDOT = False

from pedal_porism.duality import (
    InversionCircle,
    dual_of_conic,
    invert_circle,
    negative_pedal_of_circle,
)
from pedal_porism.exceptions import (
    ConstructionError,
    GeometryError,
    SceneResolutionError,
    ValidationError,
)
from pedal_porism.geometry import (
    Circle,
    Conic,
    ConicKind,
    Point,
    Tolerance,
    Triangle,
    circumcircle,
)
from pedal_porism.pedal import (
    PedalConfig,
    negative_pedal_triangle,
    pedal_triangle,
    polar_triangle,
)

logger = logging.getLogger(__name__)

CENTRAL_KINDS = (ConicKind.ELLIPSE, ConicKind.HYPERBOLA, ConicKind.CIRCLE)


# Scene
###########################


@dataclass(frozen=True, eq=False)
class PorismScene:
    """Seed triangle, pedal point and every derived object.

    Attributes:
        circumcircle (Circle): Circumcircle of the seed triangle.
        pedal_point (Point): The pedal point D.
        seed_triangle (Triangle): Reference triangle, counterclockwise.
        inversion (InversionCircle): Inversion circle centred at D.
        tol (Tolerance): Tolerance scaled to the circumcircle diameter.
        pedal_circle (Circle): Circumcircle of the pedal triangle.
        polar_circle (Circle): Inverse of the pedal circle.
        inconic (Conic): Negative pedal of the pedal circle, focused at D.
        polar_caustic (Conic): Polar dual of the circumcircle.
        negative_pedal_caustic (Conic): Negative pedal of the circumcircle.
        negative_pedal_circle (Circle): Circumcircle of the seed's
            negative-pedal triangle.
    """

    circumcircle: Circle
    pedal_point: Point
    seed_triangle: Triangle
    inversion: InversionCircle
    tol: Tolerance
    config: PedalConfig
    pedal_triangle: Triangle
    pedal_circle: Circle
    polar_circle: Circle
    inconic: Conic
    polar_caustic: Conic
    negative_pedal_caustic: Conic
    negative_pedal_triangle: Triangle
    negative_pedal_circle: Circle
    polar_triangle: Triangle
    tolerance_scale: float = 1.0
    labels: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_triangle(
        cls,
        triangle: Triangle,
        pedal_point: Point,
        inversion_radius_sq: float = 1.0,
        tolerance_scale: float = 1.0,
        labels: Optional[Dict[str, str]] = None,
    ) -> "PorismScene":
        """Build and validate a scene from its seed data.

        Raises:
            ValidationError: If the pedal point violates a precondition.
        """
        builder = SceneBuilder(
            triangle,
            pedal_point,
            inversion_radius_sq=inversion_radius_sq,
            tolerance_scale=tolerance_scale,
            labels=labels,
        )
        return builder.build()

    @property
    def radius(self) -> float:
        """Circumradius R."""
        return self.circumcircle.radius

    def with_inversion_radius_sq(self, radius_sq: float) -> "PorismScene":
        """Same scene with another inversion radius."""
        return PorismScene.from_triangle(
            self.seed_triangle,
            self.pedal_point,
            inversion_radius_sq=radius_sq,
            tolerance_scale=self.tolerance_scale,
            labels=self.labels,
        )

    def start_angles(self) -> Tuple[float, float, float]:
        """Angles of the seed vertices on the circumcircle."""
        return tuple(self.circumcircle.angle_of(p) for p in self.seed_triangle.vertices)

    def invariant_gaps(self) -> Dict[str, float]:
        """Cross-check derived objects computed along independent paths.

        Returns:
            dict: ``inconic_vs_dual_polar_circle`` compares the inconic with
                the dual of the polar circle; ``negative_pedal_vs_dual_inverse``
                compares the negative-pedal caustic with the dual of the
                inverse of the circumcircle. Both are canonical matrix gaps.
        """
        gaps = {
            "inconic_vs_dual_polar_circle": self.inconic.matrix_gap(
                dual_of_conic(self.polar_circle.as_conic(self.tol), self.inversion, self.tol)
            )
        }
        inverse = invert_circle(self.circumcircle, self.inversion, self.tol)
        if isinstance(inverse, Circle):
            gaps["negative_pedal_vs_dual_inverse"] = self.negative_pedal_caustic.matrix_gap(
                dual_of_conic(inverse.as_conic(self.tol), self.inversion, self.tol)
            )
        return gaps

    def summary(self) -> Dict[str, Any]:
        """Plain dictionary description of the scene."""
        return {
            "triangle": [list(p.as_tuple()) for p in self.seed_triangle.vertices],
            "pedal_point": list(self.pedal_point.as_tuple()),
            "inversion_radius_sq": self.inversion.radius_sq,
            "circumcircle": _circle_dict(self.circumcircle),
            "pedal_circle": _circle_dict(self.pedal_circle),
            "polar_circle": _circle_dict(self.polar_circle),
            "negative_pedal_circle": _circle_dict(self.negative_pedal_circle),
            "inconic": self.inconic.kind.value,
            "polar_caustic": self.polar_caustic.kind.value,
            "negative_pedal_caustic": self.negative_pedal_caustic.kind.value,
        }


def _circle_dict(circle: Circle) -> Dict[str, Any]:
    return {"center": list(circle.center.as_tuple()), "radius": circle.radius}


# Scene builder
###########################


class SceneBuilder:
    """Resolve and compute the derived objects of a scene.

    The ``recipes`` table maps each derived object to the objects it is
    computed from. For each name, the method ``_build_<name>`` receives its
    dependencies as keyword arguments.

    Attributes:
        resolved (bool): Flag indicating whether resolution has been performed.
        dep_order (list): Derivation order from the topological sort.
        values (dict): Computed objects, by name.

    Args:
        triangle (Triangle): Seed triangle.
        pedal_point (Point): Pedal point D.
        inversion_radius_sq (float): Squared inversion radius.
        tolerance_scale (float): Multiplier of the defect threshold.
        labels (dict, optional): Display labels carried to figures.
    """

    scene_class = PorismScene

    recipes: Dict[str, Tuple[str, ...]] = {
        "config": (),
        "circumcircle": ("config",),
        "pedal_triangle": ("config",),
        "pedal_circle": ("pedal_triangle",),
        "inconic": ("pedal_circle",),
        "polar_circle": ("pedal_circle",),
        "polar_caustic": ("circumcircle",),
        "negative_pedal_caustic": ("circumcircle",),
        "negative_pedal_triangle": ("config",),
        "negative_pedal_circle": ("negative_pedal_triangle",),
        "polar_triangle": ("config",),
    }

    # pylint: disable=too-many-arguments
    def __init__(
        self,
        triangle: Triangle,
        pedal_point: Point,
        inversion_radius_sq: float = 1.0,
        tolerance_scale: float = 1.0,
        labels: Optional[Dict[str, str]] = None,
    ):
        self.triangle = triangle
        self.pedal_point = pedal_point
        self.inversion = InversionCircle(pedal_point, inversion_radius_sq)
        self.tolerance_scale = tolerance_scale
        self.labels = labels or {}
        self.tol = Tolerance(
            scale=circumcircle(triangle).diameter,
        ).relaxed(tolerance_scale)

        # Prepare state attributes
        self.resolved = False
        self.dep_order: Optional[List[str]] = None
        self.values: Dict[str, Any] = {}

    def resolve(self) -> None:
        """Compute every derived object in dependency order.

        Raises:
            SceneResolutionError: If resolution has already been performed.
            ValidationError: If a derived object cannot be built.
        """
        if self.resolved:
            raise SceneResolutionError("Already resolved")
        self.resolved = True

        self.dep_order = list(TopologicalSorter(self.recipes).static_order())
        logger.debug("Scene derivation order: %s", ", ".join(self.dep_order))

        for name in self.dep_order:
            deps = {dep: self.values[dep] for dep in self.recipes[name]}
            builder = getattr(self, f"_build_{name}")
            try:
                self.values[name] = builder(**deps)
            except ValidationError:
                raise
            except (GeometryError, ConstructionError) as err:
                raise ValidationError(
                    f"cannot build {name.replace('_', ' ')}: {err}",
                    field_path="pedal_point",
                ) from err
            logger.debug("Scene %s: %r", name, self.values[name])

    def build(self) -> PorismScene:
        """Resolve if needed and return the frozen scene."""
        if not self.resolved:
            self.resolve()
        values = self.values
        return self.scene_class(
            circumcircle=values["circumcircle"],
            pedal_point=self.pedal_point,
            seed_triangle=values["config"].triangle,
            inversion=self.inversion,
            tol=self.tol,
            config=values["config"],
            pedal_triangle=values["pedal_triangle"],
            pedal_circle=values["pedal_circle"],
            polar_circle=values["polar_circle"],
            inconic=values["inconic"],
            polar_caustic=values["polar_caustic"],
            negative_pedal_caustic=values["negative_pedal_caustic"],
            negative_pedal_triangle=values["negative_pedal_triangle"],
            negative_pedal_circle=values["negative_pedal_circle"],
            polar_triangle=values["polar_triangle"],
            tolerance_scale=self.tolerance_scale,
            labels=dict(self.labels),
        )

    # Recipes
    # ===============

    def _build_config(self) -> PedalConfig:
        return PedalConfig(self.triangle, self.pedal_point, tol=self.tol)

    def _build_circumcircle(self, config: PedalConfig) -> Circle:
        return config.circumcircle

    def _build_pedal_triangle(self, config: PedalConfig) -> Triangle:
        return pedal_triangle(config)

    def _build_pedal_circle(self, pedal_triangle: Triangle) -> Circle:
        # pylint: disable=redefined-outer-name
        return circumcircle(pedal_triangle)

    def _build_inconic(self, pedal_circle: Circle) -> Conic:
        # pylint: disable=redefined-outer-name
        inconic = negative_pedal_of_circle(pedal_circle, self.pedal_point, self.tol)
        return self._require_central("inconic", inconic)

    def _build_polar_circle(self, pedal_circle: Circle) -> Circle:
        # pylint: disable=redefined-outer-name
        image = invert_circle(pedal_circle, self.inversion, self.tol)
        if not isinstance(image, Circle):
            raise ValidationError(
                "pedal point on pedal circle", field_path="pedal_point"
            )
        return image

    def _build_polar_caustic(self, circumcircle: Circle) -> Conic:
        # pylint: disable=redefined-outer-name
        caustic = dual_of_conic(circumcircle.as_conic(self.tol), self.inversion, self.tol)
        return self._require_central("polar caustic", caustic)

    def _build_negative_pedal_caustic(self, circumcircle: Circle) -> Conic:
        # pylint: disable=redefined-outer-name
        caustic = negative_pedal_of_circle(circumcircle, self.pedal_point, self.tol)
        return self._require_central("negative-pedal caustic", caustic)

    def _build_negative_pedal_triangle(self, config: PedalConfig) -> Triangle:
        return negative_pedal_triangle(config)

    def _build_negative_pedal_circle(self, negative_pedal_triangle: Triangle) -> Circle:
        # pylint: disable=redefined-outer-name
        return circumcircle(negative_pedal_triangle)

    def _build_polar_triangle(self, config: PedalConfig) -> Triangle:
        return polar_triangle(config, self.inversion)

    @staticmethod
    def _require_central(name: str, conic: Conic) -> Conic:
        if conic.kind not in CENTRAL_KINDS:
            raise ValidationError(f"{name} is {conic.kind.value}", field_path="pedal_point")
        return conic

    # Public API
    # ===============

    def dump(self) -> None:
        """Print the construction graph and computed objects."""
        from pprint import pprint  # pylint: disable=import-outside-toplevel

        print("-------------- Debug - Start ------------------")
        print("Object:", self)
        print("Pedal point: %s" % (self.pedal_point,))
        print("Inversion: %s" % (self.inversion,))
        print("Tolerance: %s" % (self.tol,))
        print("Resolved: %s" % self.resolved)
        print("Recipes:")
        pprint(self.recipes)
        print("Derivation order:")
        pprint(self.dep_order)
        print("Values:")
        pprint(self.values)
        print("--------------  Debug - End  ------------------")

    def gen_graph(self, output_file: str = "scene.dot", fmt: str = "dot") -> None:
        """Write the construction graph with pydot.

        Args:
            output_file (str): Destination path.
            fmt (str): Any pydot output format; ``dot`` needs no GraphViz.

        Raises:
            SceneResolutionError: If pydot is not installed.
        """
        if not HAS_PYDOT:
            raise SceneResolutionError("Pydot package is not present")
        order = self.dep_order or list(TopologicalSorter(self.recipes).static_order())

        graph = pydot.Dot(
            "scene",
            graph_type="digraph",
            rankdir="LR",
            bgcolor="white",
        )
        for name in order:
            graph.add_node(pydot.Node(name, shape="box"))
        for name in order:
            for dep in self.recipes[name]:
                graph.add_edge(pydot.Edge(dep, name))

        if fmt == "dot":
            with open(output_file, "w", encoding="utf-8") as handle:
                handle.write(graph.to_string())
        else:
            graph.write(output_file, format=fmt)
