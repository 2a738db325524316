"""Realization cones, surjection types and cone-space fragments."""

import random
from collections import Counter
from dataclasses import replace
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from tropex.core.errors import EmptyInterior, InvalidInput, NotStable, SupportMismatch
from tropex.tropical.cones import is_subdivision, make_complex, make_cone
from tropex.tropical.graphs import embedded_complex, validate_embedded
from tropex.tropical.lattice import add, dot
from tropex.tropical.moduli import (
    act,
    assemble_fragment,
    automorphism_matrices,
    automorphisms,
    build_XG,
    check_surjection,
    common_surjection,
    dual_plane_family,
    enumerate_surjections,
    equivariant_subdivision,
    image_surjection,
    is_invariant,
    isomorphism,
    realize_fragment,
    refine_fragments,
    type_hash,
    types_isomorphic,
    vertex_family,
)

from conftest import P2_C6, P2_D0, P2_D1, P2_ORIGIN

HALF = Fraction(1, 2)
X_CROSS = (1, 2, 1, 3, 2, 1, 2, 1, 1, 2, 3, 1)
X_SKEW = (1, 2, 1, 3, 2, 1, 2, 1, 2, 2, 3, 2)


@pytest.fixture
def orthant():
    return make_complex(3, [[(1, 0, 0), (0, 1, 0), (0, 0, 1)]])


@pytest.fixture
def skew(orthant):
    """Two skew edges in the open orthant; at X_CROSS they cross."""
    top = len(orthant.cones) - 1
    return embedded_complex(
        [(top, X_SKEW[0:3]), (top, X_SKEW[3:6]), (top, X_SKEW[6:9]), (top, X_SKEW[9:12])],
        edges=[((0, 1), top, (1, 0, 0)), ((2, 3), top, (0, 1, 0))],
    )


def test_realization_cone_of_a_vertex(p2):
    xg = build_XG(embedded_complex([(P2_C6, (1, 1))]), p2)
    assert xg.dim == 2
    assert xg.contains((1, 3))
    assert not xg.contains((-1, 3))


def test_realization_cone_of_a_ray_on_a_divisor(p2):
    g = embedded_complex([(P2_D1, (1, 0))], rays=[(0, P2_C6, (0, 1))])
    xg = build_XG(g, p2)
    assert xg.dim == 1
    assert xg.realize((2, 0)).positions == ((2, 0),)


def test_realization_cone_of_line_half(p2, line_half):
    xg = build_XG(line_half, p2, witness=line_half)
    assert xg.dim == 1
    assert xg.contains(xg.point_of(line_half))


def test_ray_leaving_its_cone(p2):
    g = embedded_complex([(P2_ORIGIN, (0, 0))], rays=[(0, P2_D1, (1, 1))])
    with pytest.raises(EmptyInterior):
        build_XG(g, p2)


def test_type_outside_the_fan(p2):
    with pytest.raises(InvalidInput):
        build_XG(embedded_complex([(42, (0, 0))]), p2)


def test_isomorphism_relabels_vertices(line_half):
    relabeled = embedded_complex(
        [(P2_ORIGIN, (0, 0)), (P2_C6, (HALF, HALF))],
        edges=[((1, 0), P2_C6, (-1, -1))],
        rays=[(1, P2_C6, (1, 0)), (1, P2_C6, (0, 1)), (0, P2_D0, (-1, -1))],
    )
    assert isomorphism(line_half, relabeled) == {0: 1, 1: 0}
    assert type_hash(line_half) == type_hash(relabeled)


def test_non_isomorphic_types(line_half, line_at_origin):
    assert isomorphism(line_half, line_at_origin) is None
    assert type_hash(line_half) != type_hash(line_at_origin)


def test_automorphisms_swap_equal_vertices():
    g = embedded_complex([(P2_C6, (1, 1)), (P2_C6, (2, 1))])
    assert automorphisms(g) == [(0, 1), (1, 0)]
    assert len(automorphism_matrices(g, 2)) == 2


def test_surjections_of_a_one_parameter_line(p2, line_half):
    xg = build_XG(line_half, p2, witness=line_half)
    types = enumerate_surjections(line_half, xg, p2, workers=1)
    assert len(types) == 1
    assert types[0].surjection.is_identity()


@pytest.mark.slow
def test_skew_edges_surjection_types(orthant, skew):
    """Every way two skew segments in the open orthant can touch."""
    xg = build_XG(skew, orthant, witness=skew)
    assert xg.contains(X_CROSS) and xg.contains(X_SKEW)
    types = enumerate_surjections(skew, xg, orthant, workers=2)
    shapes = Counter((st.graph.num_vertices, len(st.graph.edges), st.codim) for st in types)
    assert shapes == {(4, 2, 0): 1, (5, 4, 1): 1, (4, 3, 2): 4, (3, 2, 3): 4}
    assert [st.surjection.is_identity() for st in types if st.codim == 0] == [True]
    crossing = next(st for st in types if st.graph.num_vertices == 5)
    assert types_isomorphic(crossing.graph, image_surjection(skew, X_CROSS, orthant)[0])


def test_crossing_rays_give_exactly_two_types(orthant):
    """Rays from the faces x = 0 and y = 0 cross exactly when their heights agree."""
    fx, fy = orthant.minimal_cone((0, 1, 1)), orthant.minimal_cone((1, 0, 1))
    top = orthant.minimal_cone((1, 1, 1))
    g = embedded_complex(
        [(fx, (0, 1, 1)), (fy, (1, 0, 2))],
        rays=[(0, top, (1, 0, 0)), (1, top, (0, 1, 0))],
    )
    xg = build_XG(g, orthant, witness=g)
    assert xg.dim == 4
    types = enumerate_surjections(g, xg, orthant, workers=1)
    shapes = [(st.codim, st.graph.num_vertices, len(st.graph.edges), len(st.graph.rays)) for st in types]
    assert sorted(shapes) == [(0, 2, 0, 2), (1, 3, 2, 2)]
    identity, crossing = sorted(types, key=lambda st: st.codim)
    assert identity.surjection.is_identity()
    assert types_isomorphic(identity.graph, g)
    assert not crossing.surjection.is_identity()
    assert all(r[2] == r[5] for r in crossing.subcone.rays)


def test_sliding_vertex_meets_the_opposite_edge(p2):
    """Path a-b-c-d; d slides down from c until it closes a triangle on a-b."""
    g = embedded_complex(
        [(P2_C6, (1, 1)), (P2_C6, (4, 1)), (P2_C6, (2, 3)), (P2_C6, (2, 2))],
        edges=[((0, 1), P2_C6, (1, 0)), ((1, 2), P2_C6, (-1, 1)), ((2, 3), P2_C6, (0, -1))],
    )
    x_apart = (1, 1, 4, 1, 2, 3, 2, 2)
    x_touch = (1, 1, 4, 1, 2, 3, 2, 1)
    xg = build_XG(g, p2, witness=g)
    assert xg.contains(x_apart) and xg.contains(x_touch)

    slide = replace(xg, cone=make_cone(8, [x_apart, x_touch]))
    types = enumerate_surjections(g, slide, p2, workers=1, include_boundary=True, max_codim=1)
    assert sorted((st.codim, st.graph.num_vertices, len(st.graph.edges)) for st in types) == [(0, 4, 3), (1, 4, 4)]
    identity, touching = sorted(types, key=lambda st: st.codim)
    assert identity.surjection.is_identity()
    h, s = image_surjection(g, x_touch, p2)
    assert types_isomorphic(touching.graph, h)
    assert len(s.edge_map[0]) == 2
    assert check_surjection(g, h, s, p2) == []


def random_two_piece_graph(rng, p2):
    """Two non-parallel segments or rays in the open quadrant, not touching."""
    directions = [(1, 0), (0, 1), (1, 1), (1, 2), (2, 1)]
    while True:
        vertices, edges, rays = [], [], []
        for d in rng.sample(directions, 2):
            start = (rng.randint(1, 4), rng.randint(1, 4))
            vertices.append((P2_C6, start))
            if rng.random() < 0.5:
                length = rng.randint(1, 3)
                vertices.append((P2_C6, (start[0] + length * d[0], start[1] + length * d[1])))
                edges.append(((len(vertices) - 2, len(vertices) - 1), P2_C6, d))
            else:
                rays.append((len(vertices) - 1, P2_C6, d))
        g = embedded_complex(vertices, edges=edges, rays=rays)
        if validate_embedded(g, p2).valid:
            return g


@pytest.mark.slow
def test_points_shared_by_two_sub_cones_have_a_common_surjection(p2):
    rng = random.Random(5)
    for _ in range(50):
        g = random_two_piece_graph(rng, p2)
        xg = build_XG(g, p2, witness=g)
        types = enumerate_surjections(g, xg, p2, workers=2)
        for first, second in combinations_with_replacement(types, 2):
            meet = first.subcone.intersect(second.subcone)
            if meet.dim == 0:
                continue
            x0 = meet.relative_interior_point()
            for f in [x0] + [add(x0, r) for r in meet.rays]:
                common = common_surjection(g, first, second, f, p2)
                assert common.holds, common.violations


def test_common_surjection_at_the_crossing(orthant, skew):
    xg = build_XG(skew, orthant, witness=skew)
    segment = replace(xg, cone=make_cone(12, [X_CROSS, X_SKEW]))
    types = enumerate_surjections(skew, segment, orthant, workers=1, include_boundary=True, max_codim=1)
    identity = next(st for st in types if st.surjection.is_identity())
    crossing = next(st for st in types if st.graph.num_vertices == 5)
    common = common_surjection(skew, identity, crossing, X_CROSS, orthant)
    assert common.holds
    assert common.target.num_vertices == 5
    assert common.surjections[1].is_identity()
    assert not common.surjections[0].is_identity()
    with pytest.raises(InvalidInput):
        common_surjection(skew, identity, crossing, X_SKEW, orthant)


def test_image_surjection_at_the_crossing(orthant, skew):
    h, s = image_surjection(skew, X_CROSS, orthant)
    assert h.num_vertices == 5
    assert len(h.edges) == 4
    assert not s.is_identity()
    assert check_surjection(skew, h, s, orthant) == []

    h, s = image_surjection(skew, X_SKEW, orthant)
    assert h.num_vertices == 4 and len(h.edges) == 2
    assert sorted(s.vertex_map) == [0, 1, 2, 3]
    assert check_surjection(skew, h, s, orthant) == []


def test_check_surjection_reports_broken_maps(orthant, skew):
    h, s = image_surjection(skew, X_CROSS, orthant)
    assert check_surjection(skew, h, replace(s, vertex_map=(0, 1, 2, 9)), orthant) == [
        "vertex map does not send the vertices of G to vertices of H"
    ]
    uncovered = check_surjection(skew, h, replace(s, edge_map=(s.edge_map[0], ())), orthant)
    assert any("not covered" in v for v in uncovered)


def test_equivariant_stellar_subdivision():
    quadrant = make_cone(2, [(1, 0), (0, 1)])
    swap = [[0, 1], [1, 0]]
    result = equivariant_subdivision(quadrant, [make_cone(2, [(1, 1)])], [swap])
    assert len(result.maximal_cones()) == 2


def test_equivariant_arrangement_subdivision():
    quadrant = make_cone(2, [(1, 0), (0, 1)])
    swap = [[0, 1], [1, 0]]
    family = [make_cone(2, [(1, 1), (1, 2)]), make_cone(2, [(1, 1), (2, 1)])]
    result = equivariant_subdivision(quadrant, family, [swap])
    assert len(result.maximal_cones()) == 4


def test_equivariant_subdivision_errors():
    quadrant = make_cone(2, [(1, 0), (0, 1)])
    swap = [[0, 1], [1, 0]]
    with pytest.raises(NotStable):
        equivariant_subdivision(quadrant, [make_cone(2, [(1, 2)])], [swap])
    with pytest.raises(InvalidInput):
        equivariant_subdivision(quadrant, [], [[[-1, 0], [0, 1]]])
    with pytest.raises(InvalidInput):
        equivariant_subdivision(quadrant, [make_cone(2, [(-1, 1)])], [])
    with pytest.raises(InvalidInput):
        equivariant_subdivision(quadrant, [], [], method="bogus")


def test_vertex_family_fragment(p2):
    fragment = assemble_fragment(vertex_family(p2), p2, workers=2)
    assert len(fragment.family) == 7
    assert len(fragment.cells) == 7
    assert fragment.validate() == []
    with pytest.raises(InvalidInput):
        realize_fragment(fragment)


def test_dual_plane_realizes_the_plane(p2):
    family = dual_plane_family(p2, grid=1, workers=2)
    fragment = assemble_fragment(family, p2, workers=2)
    assert fragment.validate() == []
    plane = realize_fragment(fragment)
    assert set(plane.rays()) == {(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)}
    assert len(plane.maximal_cones()) == 6


def test_refining_a_fragment_with_itself(p2):
    fragment = assemble_fragment(vertex_family(p2), p2, workers=2)
    refined = refine_fragments(fragment, fragment, workers=2)
    assert len(refined.cells) == len(fragment.cells)
    assert refined.validate() == []

    other = assemble_fragment(dual_plane_family(p2, grid=1, workers=2), p2, workers=2)
    with pytest.raises(SupportMismatch):
        refine_fragments(fragment, other)


def test_universal_fibers_are_subdivided_realizations(p2):
    family = dual_plane_family(p2, grid=1, workers=2)
    fragment = assemble_fragment(family, p2, workers=2)
    assert len(fragment.universal) == len(fragment.cells)
    for u in fragment.universal:
        cell = fragment.cells[u.cell]
        xg = fragment.xg[cell.type_index]
        x = cell.cone.relative_interior_point()
        params = [(k, dot(form, x)) for k, form in u.tubes]
        if len(set(params)) < len(params):
            continue
        fiber = u.fiber(xg, x)
        assert fiber.graph.num_vertices == xg.graph.num_vertices + len(u.tubes)


def permutation(p):
    return [[1 if j == p[i] else 0 for j in range(3)] for i in range(3)]


@pytest.mark.slow
def test_random_equivariant_subdivisions():
    """Coordinate permutations acting on the orthant, F an orbit of random subcones."""
    rng = random.Random(3)
    orthant = make_cone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    whole = make_complex(3, [orthant])
    moves = [permutation((1, 0, 2)), permutation((0, 2, 1)), permutation((1, 2, 0))]
    for _ in range(50):
        gens = rng.sample(moves, rng.randint(0, 2))
        seed = make_cone(3, [tuple(rng.randint(0, 2) for _ in range(3)) for _ in range(rng.randint(1, 3))])
        if seed.dim == 0:
            continue
        family = {seed.rays: seed}
        frontier = [seed]
        while frontier:
            cone = frontier.pop()
            for g in gens:
                image = act(g, cone)
                if image.rays not in family:
                    family[image.rays] = image
                    frontier.append(image)
        assert len(family) <= 6

        result = equivariant_subdivision(orthant, list(family.values()), gens)
        assert is_invariant(result, gens)
        assert is_subdivision(result, whole) == "proper"
        for f in family.values():
            inside = [c for c in result.cones if f.contains_cone(c)]
            assert is_subdivision(make_complex(3, inside), make_complex(3, [f])) == "proper"
