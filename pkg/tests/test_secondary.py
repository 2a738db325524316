"""Regular subdivisions of dΔ, secondary cones and weight forgetting."""

import pytest

from tropex.core.errors import BadIndex, NotInterior
from tropex.tropical.secondary import (
    dual_curve,
    enumerate_secondary_fan,
    free_points,
    lattice_points,
    normalize_heights,
    secondary_cone,
    subdivision_from_heights,
    weight_forgetting_check,
)
from tropex.tropical.troplim import asymptotic_profile, check_balancing, check_degree


def honeycomb(d):
    return [i * i + i * j + j * j for i, j in lattice_points(d)]


def test_lattice_points():
    assert len(lattice_points(2)) == 6
    assert len(lattice_points(3)) == 10
    assert free_points(2) == [(0, 1), (1, 0), (1, 1)]


def test_affine_heights_normalize_to_zero():
    heights = [1 + 2 * i + 3 * j for i, j in lattice_points(2)]
    assert all(x == 0 for x in normalize_heights(2, heights))
    with pytest.raises(BadIndex):
        normalize_heights(2, [0, 0, 0])


def test_honeycomb_triangulation():
    s = subdivision_from_heights(2, honeycomb(2))
    assert len(s.cells) == 4
    assert s.is_triangulation and s.is_fine and s.is_unimodular


def test_flat_heights_give_one_cell():
    s = subdivision_from_heights(2, [0] * 6)
    assert len(s.cells) == 1
    assert not s.is_triangulation


def test_secondary_cone_contains_its_heights():
    s = subdivision_from_heights(2, honeycomb(2))
    cone = secondary_cone(s)
    assert cone.cone.dim == 3
    assert cone.interior_heights(honeycomb(2))
    assert cone.contains_heights([0] * 6)
    assert not cone.interior_heights([0] * 6)


def test_dual_curve_of_the_honeycomb(p2):
    s = subdivision_from_heights(2, honeycomb(2))
    curve = dual_curve(s, honeycomb(2), p2)
    assert check_balancing(curve).balanced
    assert set(asymptotic_profile(curve, p2).totals().values()) == {2}


def test_dual_curve_of_the_triangle_is_a_line(p2):
    s = subdivision_from_heights(1, [0, 0, 0])
    assert s.cells == ((0, 1, 2),)
    curve = dual_curve(s, [0, 0, 0], p2)
    assert curve.base.positions == ((0, 0),)
    assert len(curve.base.graph.edges) == 0
    assert curve.ray_weights == (1, 1, 1)
    assert check_balancing(curve).balanced
    assert check_degree(asymptotic_profile(curve, p2), 1).matches
    assert dual_curve(s, [3, 5, 7], p2) == curve


def test_dual_curve_needs_interior_heights():
    s = subdivision_from_heights(2, honeycomb(2))
    with pytest.raises(NotInterior):
        dual_curve(s, [0] * 6)


def test_unsupported_degrees():
    with pytest.raises(BadIndex):
        subdivision_from_heights(4, [0] * 15)
    with pytest.raises(BadIndex):
        enumerate_secondary_fan(3)


def test_secondary_fan_of_a_triangle():
    report = enumerate_secondary_fan(1, workers=1)
    assert report.maximal_cones == 1
    assert report.covers and report.pairwise_faces


def test_secondary_fan_of_the_conic_triangle():
    report = enumerate_secondary_fan(2, workers=2)
    assert report.maximal_cones == 14
    assert report.all_triangulations
    assert report.unimodular == 4
    assert report.fine == 4
    assert report.unimodular_are_fine
    assert all(c.subdivision.is_unimodular == c.subdivision.is_fine for c in report.cones)
    assert report.covers and report.pairwise_faces


def test_weight_forgetting_is_injective_on_fine_cones(p2):
    report = weight_forgetting_check(2, p2, workers=2)
    assert len(report.entries) == 14
    assert report.isomorphic_on_fine
    assert all(e.realized for e in report.entries)
