"""Scene files: JSON description of a porism scene.

A scene file looks like::

    {
      "triangle": [[0, 0], [4, 0], [0, 3]],
      "pedal_point": [1, 1],
      "inversion_radius_sq": 1.0,
      "labels": {"A": "A", "B": "B", "C": "C"}
    }

``pedal_point`` may also name a notable point of the triangle:
``incenter``, ``orthocenter``, ``circumcenter`` or ``centroid``.
Optional ``tolerance_scale`` and ``samples`` provide run settings that the
command line can override. Errors carry the path of the offending field.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from pedal_porism.exceptions import GeometryError, ParseError, ValidationError
from pedal_porism.geometry import Point, Triangle
from pedal_porism.scene import PorismScene
from pedal_porism.settings import SettingTrace, resolve_settings

NAMED_PEDAL_POINTS: Dict[str, Callable[[Triangle], Point]] = {
    "incenter": Triangle.incenter,
    "orthocenter": Triangle.orthocenter,
    "circumcenter": lambda triangle: triangle.circumcircle().center,
    "centroid": Triangle.centroid,
}

KNOWN_FIELDS = (
    "triangle",
    "pedal_point",
    "inversion_radius_sq",
    "tolerance_scale",
    "samples",
    "labels",
)

PairLike = Tuple[float, float]


def _parse_number(value: Any, field_path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"Expected a number, got: {json.dumps(value)}", field_path=field_path)
    if not math.isfinite(value):
        raise ParseError(f"Expected a finite number, got: {value}", field_path=field_path)
    return float(value)


def _parse_pair(value: Any, field_path: str) -> PairLike:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(
            f"Expected a coordinate pair [x, y], got: {json.dumps(value)}",
            field_path=field_path,
        )
    return (
        _parse_number(value[0], f"{field_path}[0]"),
        _parse_number(value[1], f"{field_path}[1]"),
    )


@dataclass
class SceneFile:
    """Parsed, not yet validated, content of a scene file."""

    triangle: List[PairLike]
    pedal_point: Union[PairLike, str]
    inversion_radius_sq: Optional[float] = None
    tolerance_scale: Optional[float] = None
    samples: Optional[int] = None
    labels: Dict[str, str] = field(default_factory=dict)

    # Parsing
    # ===============

    @classmethod
    def parse_config(cls, value: Union[str, Dict[str, Any]]) -> "SceneFile":
        """Parse JSON text or an already decoded dictionary.

        Raises:
            ParseError: If the content is malformed.
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

        unknown = sorted(set(value) - set(KNOWN_FIELDS))
        if unknown:
            raise ParseError("Unknown field", field_path=unknown[0])

        for required in ("triangle", "pedal_point"):
            if required not in value:
                raise ParseError("Missing field", field_path=required)

        vertices = value["triangle"]
        if not isinstance(vertices, list) or len(vertices) != 3:
            raise ParseError("Expected three vertices", field_path="triangle")
        triangle = [_parse_pair(v, f"triangle[{idx}]") for idx, v in enumerate(vertices)]

        pedal_point = value["pedal_point"]
        if isinstance(pedal_point, str):
            if pedal_point not in NAMED_PEDAL_POINTS:
                choices = ", ".join(NAMED_PEDAL_POINTS)
                raise ParseError(
                    f"Unknown named point '{pedal_point}', expected one of: {choices}",
                    field_path="pedal_point",
                )
        else:
            pedal_point = _parse_pair(pedal_point, "pedal_point")

        optional = {}
        for name in ("inversion_radius_sq", "tolerance_scale", "samples"):
            if value.get(name) is not None:
                optional[name] = _parse_number(value[name], name)
        if "samples" in optional:
            if int(optional["samples"]) != optional["samples"]:
                raise ParseError("Expected an integer", field_path="samples")
            optional["samples"] = int(optional["samples"])

        labels = value.get("labels") or {}
        if not isinstance(labels, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in labels.items()
        ):
            raise ParseError("Expected a mapping of strings", field_path="labels")

        return cls(triangle=triangle, pedal_point=pedal_point, labels=dict(labels), **optional)

    @classmethod
    def from_path(cls, path: Union[str, Path]) -> "SceneFile":
        """Read and parse a scene file.

        Raises:
            OSError: If the file cannot be read.
            ParseError: If the content is malformed.
        """
        return cls.parse_config(Path(path).read_text(encoding="utf-8"))

    # Emission
    # ===============

    def to_dict(self) -> Dict[str, Any]:
        """Dictionary in scene-file layout, optional fields omitted when unset."""
        ret: Dict[str, Any] = {
            "triangle": [list(v) for v in self.triangle],
            "pedal_point": (
                self.pedal_point if isinstance(self.pedal_point, str) else list(self.pedal_point)
            ),
        }
        for name in ("inversion_radius_sq", "tolerance_scale", "samples"):
            if getattr(self, name) is not None:
                ret[name] = getattr(self, name)
        if self.labels:
            ret["labels"] = dict(self.labels)
        return ret

    def dumps(self) -> str:
        """JSON text; floats keep full precision."""
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_scene(cls, scene: PorismScene) -> "SceneFile":
        """Scene file reproducing *scene*."""
        return cls(
            triangle=[p.as_tuple() for p in scene.seed_triangle.vertices],
            pedal_point=scene.pedal_point.as_tuple(),
            inversion_radius_sq=scene.inversion.radius_sq,
            tolerance_scale=scene.tolerance_scale,
            labels=dict(scene.labels),
        )

    # Validation
    # ===============

    def settings(
        self, cli_values: Optional[Dict[str, Optional[float]]] = None
    ) -> Dict[str, SettingTrace]:
        """Resolve run settings against command-line overrides."""
        return resolve_settings(
            cli_values,
            {
                "inversion_radius_sq": self.inversion_radius_sq,
                "tolerance_scale": self.tolerance_scale,
                "samples": self.samples,
            },
        )

    def to_scene(self, cli_values: Optional[Dict[str, Optional[float]]] = None) -> PorismScene:
        """Validate and build the scene.

        Raises:
            ValidationError: If a geometric precondition fails.
        """
        try:
            triangle = Triangle(*(Point(x, y) for x, y in self.triangle))
        except GeometryError as err:
            raise ValidationError(str(err), field_path="triangle") from err

        if isinstance(self.pedal_point, str):
            pedal_point = NAMED_PEDAL_POINTS[self.pedal_point](triangle)
        else:
            pedal_point = Point(*self.pedal_point)

        traces = self.settings(cli_values)
        return PorismScene.from_triangle(
            triangle,
            pedal_point,
            inversion_radius_sq=traces["inversion_radius_sq"].value,
            tolerance_scale=traces["tolerance_scale"].value,
            labels=self.labels,
        )


def parse_scene(
    source: Union[str, Path, Dict[str, Any]],
    cli_values: Optional[Dict[str, Optional[float]]] = None,
) -> PorismScene:
    """Parse a scene from a path, JSON text or dictionary and validate it.

    Strings starting with ``{`` are read as JSON text, other strings as
    paths.

    Raises:
        ParseError: If the input is malformed or unreadable.
        ValidationError: If a geometric precondition fails.
    """
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            scene_file = SceneFile.from_path(source)
        except OSError as err:
            raise ParseError(f"Cannot read scene file: {err}") from err
    else:
        scene_file = SceneFile.parse_config(source)
    return scene_file.to_scene(cli_values)
