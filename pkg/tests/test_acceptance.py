"""Identities that must hold on every polygon the built-in fans produce"""

from fractions import Fraction as F

import numpy as np
import pytest

from src.core.invariants import (
    AffineFunction,
    displacement,
    lejmi_pairing_residual,
    projected_scalar_l2,
    vertex_positivity,
    virtual_action,
    virtual_action_cohomological,
    weyl_lower_bound,
)
from src.core.polygon import (
    UnimodularAffine,
    apply_unimodular_affine,
    area,
    lattice_perimeter,
    scale_polygon,
)

SHEAR = ((1, 1), (0, 1))
ROTATION = ((0, -1), (1, 0))
FLIP = ((0, 1), (1, 0))


def matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def random_unimodular(rng):
    matrix = ((1, 0), (0, 1))
    for _ in range(int(rng.integers(1, 8))):
        matrix = matmul(matrix, (SHEAR, ROTATION, FLIP)[int(rng.integers(0, 3))])
    translation = tuple(F(int(rng.integers(-5, 6)), int(rng.integers(1, 5))) for _ in range(2))
    return UnimodularAffine(matrix, translation)


def test_two_forms_of_the_action_agree(random_polygons):
    for polygon in random_polygons(200, seed=1):
        assert virtual_action(polygon) == virtual_action_cohomological(polygon)


def test_projected_scalar_curvature_is_nonnegative(random_polygons):
    functions = [AffineFunction.const(), AffineFunction.coordinate(0), AffineFunction.coordinate(1)]
    for polygon in random_polygons(500, seed=2):
        assert vertex_positivity(polygon).minimum >= 0
        for f in functions:
            assert lejmi_pairing_residual(polygon, f) == 0


def test_scalar_l2_is_twice_the_action(random_polygons):
    for polygon in random_polygons(50, seed=3):
        assert projected_scalar_l2(polygon) == 2 * virtual_action(polygon)


def test_action_is_unimodular_and_scale_invariant(random_polygons):
    rng = np.random.default_rng(4)
    for polygon in random_polygons(50, seed=4):
        action = virtual_action(polygon)
        for _ in range(20):
            image = apply_unimodular_affine(polygon, random_unimodular(rng))
            assert area(image) == area(polygon)
            assert lattice_perimeter(image) == lattice_perimeter(polygon)
            assert virtual_action(image) == action
        factor = F(int(rng.integers(1, 10)), int(rng.integers(1, 10)))
        assert virtual_action(scale_polygon(polygon, factor)) == action


def test_weyl_bound_of_cp2(triangle):
    bounds = weyl_lower_bound(triangle)
    assert bounds.bound.coefficient == 12
    assert bounds.bound.power == 2
    assert float(bounds.bound) == pytest.approx(12 * np.pi**2)


def test_weyl_bound_dominates_simple_bound(random_polygons, hexagon, trapezoid):
    for polygon in random_polygons(100, seed=6) + [hexagon, trapezoid]:
        bounds = weyl_lower_bound(polygon)
        assert bounds.bound.coefficient >= bounds.simple.coefficient
        balanced = displacement(polygon) == (0, 0)
        assert (bounds.bound.coefficient == bounds.simple.coefficient) == balanced
    assert displacement(hexagon) == (0, 0)
    assert displacement(trapezoid) != (0, 0)
