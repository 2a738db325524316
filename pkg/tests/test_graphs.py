"""Embedded 1-complexes: validation, minimal structure, cones over them."""

import random
from fractions import Fraction

import pytest

from tropex.core.errors import DimensionMismatch, InvalidInput, NotConeOverGraph
from tropex.tropical.cones import make_complex
from tropex.tropical.graphs import (
    canonical_form,
    cone_over,
    dilate,
    embed_in_fan,
    embedded_complex,
    height_one_slice,
    minimal_dilation,
    minimal_structure,
    on_support,
    piece_intersection,
    Piece,
    polyhedral_image,
    subdivide,
    validate_embedded,
)

from conftest import P2_C6, P2_D0, P2_D1, P2_ORIGIN


def kinds(report):
    return {v.kind for v in report.violations}


def test_valid_line(p2, line_at_origin, line_half):
    assert validate_embedded(line_at_origin, p2).valid
    assert validate_embedded(line_half, p2).valid


def test_vertex_outside_its_cone(p2):
    e = embedded_complex([(P2_D1, (0, 1))])
    report = validate_embedded(e, p2)
    assert "position" in kinds(report)


def test_edge_against_its_direction(p2):
    e = embedded_complex(
        [(P2_C6, (1, 1)), (P2_C6, (2, 2))],
        edges=[((0, 1), P2_C6, (-1, -1))],
    )
    assert "segment" in kinds(validate_embedded(e, p2))


def test_crossing_edges(p2):
    e = embedded_complex(
        [(P2_C6, (1, 1)), (P2_C6, (3, 3)), (P2_C6, (1, 3)), (P2_C6, (3, 1))],
        edges=[((0, 1), P2_C6, (1, 1)), ((2, 3), P2_C6, (1, -1))],
    )
    report = validate_embedded(e, p2)
    assert any(v.kind == "embedding" and "crosses" in v.detail for v in report.violations)


def test_ray_through_a_vertex(p2):
    e = embedded_complex(
        [(P2_C6, (1, 1)), (P2_C6, (3, 1))],
        rays=[(0, P2_C6, (1, 0))],
    )
    report = validate_embedded(e, p2)
    assert any("passes through vertex 1" in v.detail for v in report.violations)


def test_face_condition(p2):
    e = embedded_complex(
        [(P2_C6, (1, 1))],
        rays=[(0, P2_D0, (-1, -1))],
    )
    assert "face" in kinds(validate_embedded(e, p2))


def test_piece_intersection_of_overlapping_segments():
    p = Piece((Fraction(0), Fraction(0)), (1, 0), Fraction(2))
    q = Piece((Fraction(1), Fraction(0)), (1, 0), Fraction(3))
    meet = piece_intersection(p, q)
    assert meet.kind == "segment"
    assert meet.first == (Fraction(1), Fraction(2))


def test_minimal_structure_removes_collinear_vertices(p2, line_half):
    finer = subdivide(line_half, "edge", 0, [Fraction(1, 4)])
    assert finer.graph.num_vertices == 3
    assert minimal_structure(finer, p2) == minimal_structure(line_half, p2)
    assert minimal_structure(line_half, p2).graph.num_vertices == 2


def test_minimal_structure_keeps_cone_changes(p2, line_half):
    """The origin vertex separates pieces in different cones."""
    minimal = minimal_structure(line_half, p2)
    assert (Fraction(0), Fraction(0)) in minimal.positions


def test_minimal_structure_rejects_invalid_input(p2):
    e = embedded_complex([(P2_D1, (0, 1))])
    with pytest.raises(InvalidInput):
        minimal_structure(e, p2)


def test_subdivision_parameters_must_be_interior(line_half):
    with pytest.raises(InvalidInput):
        subdivide(line_half, "edge", 0, [Fraction(1, 2)])


def test_minimal_dilation(line_half):
    assert minimal_dilation(line_half) == 2
    dilated = dilate(line_half, 2)
    assert minimal_dilation(dilated) == 1
    with pytest.raises(InvalidInput):
        dilate(line_half, 0)


def test_cone_over_and_height_one_slice(p2, line_half):
    cone = cone_over(line_half)
    assert cone.ambient_dim == 3
    assert cone.dim == 2
    assert len(cone.maximal_cones()) == 4
    assert height_one_slice(cone, p2) == canonical_form(line_half)


def test_slice_of_a_three_dimensional_cone(p2):
    c = make_complex(3, [[(1, 0, 1), (0, 1, 1), (0, 0, 1)]])
    with pytest.raises(NotConeOverGraph):
        height_one_slice(c, p2)


def test_slice_with_ray_below_height_zero(p2):
    c = make_complex(3, [[(0, 0, 1), (1, 0, -1)]])
    with pytest.raises(NotConeOverGraph):
        height_one_slice(c, p2)


def test_embed_in_fan_cuts_at_walls(p2):
    """A horizontal line through (0, 1) meets the ray (0, 1) of the fan."""
    w = embed_in_fan([((0, 1), (1, 0), None, 1), ((0, 1), (-1, 0), None, 1)], p2)
    assert (Fraction(0), Fraction(1)) in w.base.positions
    assert len(w.base.graph.rays) == 2
    assert w.ray_weights == (1, 1)


def test_embed_in_fan_adds_weights_of_coinciding_pieces(p2):
    w = embed_in_fan([((1, 1), (1, 0), None, 1), ((1, 1), (1, 0), None, 2)], p2)
    assert w.ray_weights == (3,)


def test_polyhedral_image_of_folded_edges(p2):
    """Two edges leaving (1, 1) in the same direction overlap on [1, 2]."""
    folded = embedded_complex(
        [(P2_C6, (1, 1)), (P2_C6, (3, 1)), (P2_C6, (2, 1))],
        edges=[((0, 1), P2_C6, (1, 0)), ((0, 2), P2_C6, (1, 0))],
    )
    image = polyhedral_image(folded, p2)
    assert sorted(image.base.positions) == [(1, 1), (2, 1), (3, 1)]
    assert sorted(image.edge_weights) == [1, 2]
    assert image.ray_weights == ()


def test_on_support(line_at_origin):
    assert on_support(line_at_origin, (5, 0))
    assert on_support(line_at_origin, (-2, -2))
    assert not on_support(line_at_origin, (1, 1))


def test_labels_refer_to_fan_cones(p2):
    e = embedded_complex([(99, (0, 0))])
    assert "cone_index" in kinds(validate_embedded(e, p2))
    assert validate_embedded(embedded_complex([(P2_ORIGIN, (0, 0))]), p2).valid


def test_minimal_dilation_matches_brute_force(p2):
    """The least integral dilation agrees with a direct search."""
    rng = random.Random(7)
    for _ in range(500):
        positions = {
            (Fraction(rng.randint(-20, 20), rng.randint(1, 9)), Fraction(rng.randint(-20, 20), rng.randint(1, 9)))
            for _ in range(rng.randint(1, 4))
        }
        e = embedded_complex([(p2.minimal_cone(p), p) for p in sorted(positions)])
        b = next(
            k for k in range(1, 10 ** 4)
            if all((k * x).denominator == 1 for p in positions for x in p)
        )
        assert minimal_dilation(e) == b


def test_collinear_vertex_on_a_ray_is_merged(p2):
    half_line = embedded_complex([(P2_ORIGIN, (0, 0))], rays=[(0, P2_D1, (1, 0))])
    finer = subdivide(half_line, "ray", 0, [1])
    assert finer.graph.num_vertices == 2
    minimal = minimal_structure(finer, p2)
    assert minimal.graph.num_vertices == 1
    assert minimal == minimal_structure(half_line, p2)


def test_minimal_structure_is_idempotent_and_commutes_with_dilation(p2, line_half, line_at_origin):
    finer = subdivide(subdivide(line_half, "edge", 0, [Fraction(1, 4)]), "ray", 0, [3])
    for e in (line_half, line_at_origin, finer):
        minimal = minimal_structure(e, p2)
        assert minimal_structure(minimal, p2) == minimal
        for k in (1, 2, 3):
            assert minimal_structure(dilate(e, k), p2) == dilate(minimal, k)


def test_cone_over_disjoint_vertices(p2):
    e = embedded_complex([(P2_ORIGIN, (0, 0)), (P2_C6, (1, 2))])
    cone = cone_over(e)
    assert cone.ambient_dim == 3
    assert cone.dim == 1
    assert sorted(cone.rays()) == [(0, 0, 1), (1, 2, 1)]
    assert len(cone.cones) == 3
    assert height_one_slice(cone, p2) == canonical_form(e)


def test_cone_over_empty_complex_keeps_the_ambient_dimension(p2):
    empty = embedded_complex([])
    cone = cone_over(empty, 2)
    assert cone.ambient_dim == 3
    assert cone.cones == ()
    with pytest.raises(InvalidInput):
        cone_over(empty)
    with pytest.raises(DimensionMismatch):
        cone_over(embedded_complex([(P2_ORIGIN, (0, 0))]), 3)
