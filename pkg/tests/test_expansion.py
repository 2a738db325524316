"""Expansion dual complexes, tube components and DT stability."""

import random
from fractions import Fraction
from itertools import product

import pytest

from tropex.core.errors import NotARefinement, ShapeMismatch
from tropex.tropical.expansion import (
    Component,
    ExpansionDualComplex,
    SubschemeShadow,
    check_contact_lengths,
    component_fan,
    contact_lengths_from_weights,
    dt_stability,
    dual_complex,
    flag_tubes,
    tube_vertices,
)
from tropex.tropical.graphs import cone_over, embed_in_fan, subdivide

from conftest import P2_C6, P2_ORIGIN

QUARTER = (Fraction(1, 4), Fraction(1, 4))


@pytest.fixture
def upsilon(line_half):
    """line_half with an extra 2-valent vertex at (1/4, 1/4)."""
    return subdivide(line_half, "edge", 0, [Fraction(1, 4)])


@pytest.fixture
def tubed(p2, upsilon):
    return dual_complex(cone_over(upsilon), p2, tube_positions=[QUARTER])


def test_components_follow_vertices(p2, line_half):
    e = dual_complex(cone_over(line_half), p2)
    assert [c.position for c in e.components] == [(0, 0), (Fraction(1, 2), Fraction(1, 2))]
    assert [c.stratum for c in e.components] == [P2_ORIGIN, P2_C6]
    assert [c.bundle_rank for c in e.components] == [0, 2]
    assert len(e.double_divisors) == 1
    assert len(e.relative_divisors) == 3
    assert e.validate(p2) == []


def test_component_fan_is_the_star(line_half):
    fan = component_fan(cone_over(line_half), (Fraction(1, 2), Fraction(1, 2)))
    assert fan.ambient_dim == 2
    assert len(fan.maximal_cones()) == 3


def test_tube_vertices_of_a_refinement(upsilon, line_half):
    assert tube_vertices(upsilon, line_half) == frozenset({2})
    assert tube_vertices(line_half, line_half) == frozenset()


def test_tube_vertices_requires_a_refinement(upsilon, line_half, line_at_origin):
    with pytest.raises(NotARefinement):
        tube_vertices(line_half, upsilon)
    with pytest.raises(NotARefinement):
        tube_vertices(line_half, line_at_origin)


def test_tube_component_is_valid(p2, tubed):
    assert tubed.tube_flags == frozenset({1})
    assert tubed.validate(p2) == []


def test_tube_component_must_be_two_valent(p2, line_at_origin):
    e = flag_tubes(dual_complex(cone_over(line_at_origin), p2), [0])
    assert any("valence 3" in v for v in e.validate(p2))


def test_dt_stability(tubed):
    stable = dt_stability(tubed, SubschemeShadow({0: False, 1: True, 2: False}))
    assert stable.stable
    unstable = dt_stability(tubed, SubschemeShadow({0: True, 1: False, 2: False}))
    assert not unstable.stable
    assert unstable.witness == (0, 1)


def test_dt_stability_shape(tubed):
    with pytest.raises(ShapeMismatch):
        dt_stability(tubed, SubschemeShadow({0: False, 1: True}))
    with pytest.raises(ShapeMismatch):
        flag_tubes(tubed, [5])


def test_contact_lengths(tubed):
    lengths = contact_lengths_from_weights(tubed, [1, 1])
    assert check_contact_lengths(tubed, SubschemeShadow({}, lengths)) == []
    edge, component = sorted(lengths)[0]
    lengths[(edge, component)] = 2
    assert check_contact_lengths(tubed, SubschemeShadow({}, lengths)) == [edge]


def random_complex(rng, p2):
    """Support of a few random segments and rays, cut at the walls of the fan."""
    directions = [(1, 0), (0, 1), (-1, -1), (1, 1), (1, -1), (-1, 2), (2, 1)]
    pieces = [
        ((rng.randint(-3, 3), rng.randint(-3, 3)), rng.choice(directions), rng.choice([None, 1, 2, 3]), 1)
        for _ in range(rng.randint(1, 4))
    ]
    return embed_in_fan(pieces, p2, minimize=False).base


def test_expansion_of_random_complexes(p2):
    rng = random.Random(17)
    for _ in range(100):
        e = random_complex(rng, p2)
        expansion = dual_complex(cone_over(e, 2), p2)
        assert sorted(c.position for c in expansion.components) == sorted(e.positions)
        for c in expansion.components:
            assert c.bundle_rank == p2.cones[p2.minimal_cone(c.position)].dim
        assert len(expansion.double_divisors) == len(e.graph.edges)
        assert len(expansion.relative_divisors) == len(e.graph.rays)
        assert expansion.validate(p2) == []


def test_dt_stability_truth_table():
    """Stable exactly when the tube subschemes sit on the flagged components."""
    for k in range(1, 6):
        bare = ExpansionDualComplex(tuple(Component(v, (Fraction(v), Fraction(0)), 0, 0) for v in range(k)))
        for flags in product((False, True), repeat=k):
            e = flag_tubes(bare, [v for v in range(k) if flags[v]])
            for hosting in product((False, True), repeat=k):
                result = dt_stability(e, SubschemeShadow(dict(enumerate(hosting))))
                assert result.stable == (hosting == flags)
                assert result.witness == tuple(v for v in range(k) if hosting[v] != flags[v])
