"""Shared fixtures"""

import numpy as np
import pytest

from src.core.config import Config, set_config
from src.core.cone import builtin_fan, random_support, polygon_from_support
from src.core.polygon import polygon_from_vertices
from src.core.surface import set_surface_loader

BUILTIN = ("cp2", "quadric", "dp1", "dp2", "dp3")


@pytest.fixture(autouse=True)
def default_config():
    """Every test sees the shipped defaults, whatever lives in ~/.toric"""
    set_config(Config())
    set_surface_loader(None)
    yield
    set_config(None)
    set_surface_loader(None)


@pytest.fixture
def square():
    return polygon_from_vertices([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def triangle():
    return polygon_from_vertices([(0, 0), (3, 0), (0, 3)])


@pytest.fixture
def trapezoid():
    """One-point blow-up polygon at α = 1"""
    return polygon_from_vertices([(0, 0), (0, 1), (1, 1), (2, 0)])


@pytest.fixture
def hexagon():
    return polygon_from_vertices([(0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1)])


@pytest.fixture
def random_polygons():
    """Factory for exact polygons from random support numbers, cycling through the built-in fans"""

    def make(count: int, seed: int = 0):
        rng = np.random.default_rng(seed)
        fans = [builtin_fan(name) for name in BUILTIN]
        return [
            polygon_from_support(fans[i % len(fans)], random_support(fans[i % len(fans)], rng))
            for i in range(count)
        ]

    return make
