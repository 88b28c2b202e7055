"""
Main config for pytest
"""

import json
import math

import numpy as np
import pytest

from pedal_porism.geometry import Point, Triangle
from pedal_porism.scene import PorismScene
from scenes import EQUILATERAL_ANGLES, random_scene, triangle_on_circle

# pylint: disable=redefined-outer-name


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(20240611)


@pytest.fixture
def equilateral_triangle():
    """Equilateral triangle inscribed in the unit circle."""
    return triangle_on_circle(Point(0.0, 0.0), 1.0, EQUILATERAL_ANGLES)


@pytest.fixture
def equilateral_scene(equilateral_triangle):
    """Unit circumcircle with the pedal point at its center."""
    return PorismScene.from_triangle(equilateral_triangle, Point(0.0, 0.0))


@pytest.fixture
def hyperbolic_scene(equilateral_triangle):
    """Pedal point between the triangle and the circumcircle."""
    return PorismScene.from_triangle(equilateral_triangle, Point(0.0, -0.7))


@pytest.fixture
def right_triangle():
    """The 3-4-5 triangle, incenter (1, 1)."""
    return Triangle(Point(0.0, 0.0), Point(4.0, 0.0), Point(0.0, 3.0))


@pytest.fixture
def acute_triangle():
    """Acute triangle (0,0), (4,0), (1,3)."""
    return Triangle(Point(0.0, 0.0), Point(4.0, 0.0), Point(1.0, 3.0))


@pytest.fixture
def incircle_scene(right_triangle):
    """3-4-5 triangle with the pedal point at its incenter."""
    return PorismScene.from_triangle(right_triangle, Point(1.0, 1.0))


@pytest.fixture
def random_scenes(rng):
    """Twenty well-conditioned random scenes."""
    return [random_scene(rng) for _ in range(20)]


@pytest.fixture
def scene_path(tmp_path):
    """Write a scene file and return its path."""

    def write(content, name="scene.json"):
        path = tmp_path / name
        text = content if isinstance(content, str) else json.dumps(content)
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def equilateral_scene_dict():
    """Scene file content of the equilateral scene."""
    return {
        "triangle": [
            [math.cos(t), math.sin(t)] for t in EQUILATERAL_ANGLES
        ],
        "pedal_point": [0.0, 0.0],
    }


@pytest.fixture
def hyperbolic_scene_dict(equilateral_scene_dict):
    """Scene file content of the hyperbolic scene."""
    return dict(equilateral_scene_dict, pedal_point=[0.0, -0.7])

