"""Lower hulls of lifted point sets and their dual pieces."""

from fractions import Fraction

from tropex.tropical.lifting import (
    collinear_pieces,
    convex_hull,
    dual_pieces,
    is_planar,
    lattice_length,
    lower_hull_cells,
)


def test_convex_hull_drops_interior_and_collinear_points():
    hull = convex_hull([(0, 0), (2, 0), (1, 0), (0, 2), (1, 1), (0, 1), (1, 0)])
    assert hull == [(0, 0), (2, 0), (0, 2)]


def test_planarity_and_lattice_length():
    assert is_planar([(0, 0), (1, 0), (0, 1)])
    assert not is_planar([(0, 0), (1, 1), (2, 2)])
    assert lattice_length((0, 0), (2, 4)) == 2


def test_flat_heights_give_one_cell():
    points = [(0, 0), (1, 0), (0, 1), (1, 1)]
    cells = lower_hull_cells(points, [0, 1, 1, 2])
    assert [c.points for c in cells] == [(0, 1, 2, 3)]


def test_square_split_along_a_diagonal():
    points = [(0, 0), (1, 0), (0, 1), (1, 1)]
    cells = lower_hull_cells(points, [0, 0, 0, 1])
    assert [c.points for c in cells] == [(0, 1, 2), (1, 2, 3)]
    pieces, vertices = dual_pieces(points, [0, 0, 0, 1])
    assert len(vertices) == 2
    assert sum(1 for p in pieces if p[2] is not None) == 1
    assert sum(1 for p in pieces if p[2] is None) == 4


def test_collinear_newton_polytope():
    pieces = collinear_pieces([(0, 0), (2, 0)], [0, 2])
    assert len(pieces) == 2
    start, direction, length, weight = pieces[0]
    assert start == (Fraction(-1), Fraction(0))
    assert length is None and weight == 2
    assert {pieces[0][1], pieces[1][1]} == {(0, 1), (0, -1)}
