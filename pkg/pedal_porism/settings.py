"""Run settings: precedence and explainable traces.

Selection precedence (highest wins):

    cli  >  scene  >  default

Each resolved setting carries a ``SettingTrace`` telling where the value
came from, so ``verify`` and ``--debug`` output can explain a run.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

from pedal_porism.exceptions import ValidationError

SettingReason = str  # cli | scene | default

DEFAULT_SETTINGS: Dict[str, float] = {
    "inversion_radius_sq": 1.0,
    "tolerance_scale": 1.0,
    "samples": 360,
}

INTEGER_SETTINGS = ("samples",)


@dataclass
class SettingTrace:
    """Explainable result of resolving one setting."""

    name: str
    reason: SettingReason
    value: float
    candidates: Dict[str, Optional[float]] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, object]:
        """JSON-friendly summary for reports."""
        return {
            "name": self.name,
            "reason": self.reason,
            "value": self.value,
            "candidates": dict(self.candidates),
        }


def _check_value(name: str, value: object) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(
            f"Expected a number, got: {type(value).__name__}", field_path=name
        )
    if not math.isfinite(value) or value <= 0:
        raise ValidationError(f"Must be positive and finite, got: {value}", field_path=name)
    if name in INTEGER_SETTINGS:
        if int(value) != value:
            raise ValidationError(f"Must be an integer, got: {value}", field_path=name)
        return int(value)
    return float(value)


def resolve_setting(
    name: str,
    cli_value: Optional[float] = None,
    scene_value: Optional[float] = None,
) -> SettingTrace:
    """Pick the value of *name* and record why.

    Raises:
        ValidationError: If *name* is unknown or the winning value is not a
            positive finite number.
    """
    if name not in DEFAULT_SETTINGS:
        raise ValidationError(f"Unknown setting: {name}", field_path=name)

    candidates = {
        "cli": cli_value,
        "scene": scene_value,
        "default": DEFAULT_SETTINGS[name],
    }
    # --- Precedence: cli > scene > default ---
    for reason in ("cli", "scene", "default"):
        value = candidates[reason]
        if value is not None:
            return SettingTrace(
                name=name,
                reason=reason,
                value=_check_value(name, value),
                candidates=candidates,
            )
    raise ValidationError("No value", field_path=name)  # pragma: no cover


def resolve_settings(
    cli_values: Optional[Dict[str, Optional[float]]] = None,
    scene_values: Optional[Dict[str, Optional[float]]] = None,
) -> Dict[str, SettingTrace]:
    """Resolve every known setting at once."""
    cli_values = cli_values or {}
    scene_values = scene_values or {}
    return {
        name: resolve_setting(name, cli_values.get(name), scene_values.get(name))
        for name in DEFAULT_SETTINGS
    }
