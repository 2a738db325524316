"""Tropical hypersurfaces, balancing, asymptotics and flat limits."""

import random
from fractions import Fraction

import pytest

from tropex.core.errors import DegenerateInput, InvalidInput, NonparallelRay, UnsupportedDimension
from tropex.tropical.graphs import embedded_complex, minimal_dilation, on_support, subdivide
from tropex.tropical.troplim import (
    TropicalPolynomial,
    asymptotic_profile,
    check_balancing,
    check_degree,
    limit_expansion,
    sample_points,
    tropicalize_batch,
    tropicalize_hypersurface,
    weighted,
)

from conftest import P2_C6


def line(vertex=(0, 0)):
    """min(a + 0, b + x, c + y) with its vertex at ``vertex``."""
    x, y = (Fraction(v) for v in vertex)
    return TropicalPolynomial.from_terms(2, {(0, 0): 0, (1, 0): -x, (0, 1): -y})


def test_polynomial_evaluation():
    p = line()
    assert p.evaluate((1, 2)) == 0
    assert p.break_locus_contains((0, 5))
    assert not p.break_locus_contains((1, 2))
    assert p.degree == 1


def test_duplicate_exponents_are_rejected():
    with pytest.raises(InvalidInput):
        TropicalPolynomial(2, (((1, 0), Fraction(0)), ((1, 0), Fraction(1))))


def test_tropical_line_at_origin(p2):
    curve = tropicalize_hypersurface(line(), p2)
    assert curve.base.graph.num_vertices == 1
    assert len(curve.base.graph.rays) == 3
    assert check_balancing(curve).balanced
    profile = asymptotic_profile(curve, p2)
    assert profile.totals() == {(-1, -1): 1, (0, 1): 1, (1, 0): 1}
    assert check_degree(profile, 1).matches


def test_shifted_line_gains_a_vertex_at_the_origin(p2):
    curve = tropicalize_hypersurface(line((1, 1)), p2)
    assert sorted(curve.base.positions) == [(0, 0), (1, 1)]
    assert check_balancing(curve).balanced


def test_conic_from_honeycomb_heights(p2):
    terms = {(i, j): i * i + i * j + j * j for i in range(3) for j in range(3 - i)}
    curve = tropicalize_hypersurface(TropicalPolynomial.from_terms(2, terms), p2)
    assert check_balancing(curve).balanced
    profile = asymptotic_profile(curve, p2)
    assert set(profile.totals().values()) == {2}
    assert check_degree(profile, 2).matches
    assert not check_degree(profile, 1).matches


def test_binomial_gives_a_classical_line(p2):
    """x + y with equal valuations: the diagonal, cut at the origin."""
    p = TropicalPolynomial.from_terms(2, {(1, 0): 0, (0, 1): 0})
    curve = tropicalize_hypersurface(p, p2)
    assert check_balancing(curve).balanced
    assert sorted(r.direction for r in curve.base.graph.rays) == [(-1, -1), (1, 1)]


def test_unsupported_inputs(p2):
    with pytest.raises(UnsupportedDimension):
        tropicalize_hypersurface(TropicalPolynomial.from_terms(3, {(0, 0, 0): 0, (1, 0, 0): 0}), p2)
    with pytest.raises(DegenerateInput):
        tropicalize_hypersurface(TropicalPolynomial.from_terms(2, {(1, 0): 0}), p2)


def test_batch_keeps_input_order(p2):
    polys = [line((k, 0)) for k in range(4)]
    curves = tropicalize_batch(polys, p2, workers=3)
    assert [tropicalize_hypersurface(p, p2) for p in polys] == curves


def test_unbalanced_vertex(p2):
    e = embedded_complex([(P2_C6, (1, 1))], rays=[(0, P2_C6, (1, 0)), (0, P2_C6, (0, 1))])
    report = check_balancing(weighted(e))
    assert not report.balanced
    assert report.defects == ((0, (1, 1)),)


def test_ray_not_parallel_to_the_fan(p2):
    e = embedded_complex([(P2_C6, (1, 1))], rays=[(0, P2_C6, (1, 1))])
    with pytest.raises(NonparallelRay):
        asymptotic_profile(weighted(e), p2)


def test_weights_must_be_positive(line_at_origin):
    with pytest.raises(InvalidInput):
        weighted(line_at_origin, ray_weights=(1, 0, 1))


def test_limit_of_half_line(p2, line_half):
    result = limit_expansion(line_half, p2)
    assert result.base_change_order == 2
    assert sorted(result.dilated.positions) == [(0, 0), (1, 1)]
    assert len(result.expansion.components) == 2
    assert result.expansion.validate(p2) == []


def test_limit_depends_only_on_support(p2, line_half):
    finer = subdivide(line_half, "ray", 0, [Fraction(3, 2)])
    a = limit_expansion(line_half, p2)
    b = limit_expansion(finer, p2)
    assert a.minimal_complex == b.minimal_complex
    assert a.base_change_order == b.base_change_order
    assert a.expansion == b.expansion


def random_polynomial(rng, d, denominators=(1,)):
    terms = {
        (i, j): Fraction(rng.randint(-4, 4), rng.choice(denominators))
        for i in range(d + 1) for j in range(d + 1 - i)
    }
    return TropicalPolynomial.from_terms(2, terms)


@pytest.mark.slow
def test_random_curves_are_balanced_of_full_degree(p2):
    rng = random.Random(1729)
    for _ in range(100):
        d = rng.randint(1, 3)
        curve = tropicalize_hypersurface(random_polynomial(rng, d), p2)
        assert check_balancing(curve).balanced
        assert check_degree(asymptotic_profile(curve, p2), d).matches


@pytest.mark.slow
def test_support_agrees_with_the_break_locus(p2):
    """Membership in the curve matches "minimum attained twice" on a fine grid."""
    rng = random.Random(31)
    grid = sample_points(4, 2)
    for _ in range(12):
        p = random_polynomial(rng, rng.randint(1, 3), (1, 2))
        curve = tropicalize_hypersurface(p, p2).base
        extra = list(curve.positions) + [
            piece.point(piece.length / 2) for piece in curve.pieces() if piece.length is not None
        ]
        assert len(grid) >= 200
        for x in grid + extra:
            assert on_support(curve, x) == p.break_locus_contains(x)


def subdivide_somewhere(rng, e):
    """Insert one or two vertices strictly inside a random edge or ray."""
    g = e.graph
    kinds = ["ray"] * len(g.rays) + ["edge"] * len(g.edges)
    kind = rng.choice(kinds)
    if kind == "ray":
        index = rng.randrange(len(g.rays))
        params = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 2))]
    else:
        index = rng.randrange(len(g.edges))
        length = e.edge_length(index)
        params = [length * Fraction(rng.randint(1, 9), 10) for _ in range(rng.randint(1, 2))]
    return subdivide(e, kind, index, params)


def test_random_limits_ignore_collinear_vertices(p2):
    rng = random.Random(4242)
    for _ in range(25):
        vertex = (Fraction(rng.randint(-6, 6), rng.randint(1, 3)), Fraction(rng.randint(-6, 6), rng.randint(1, 3)))
        e = tropicalize_hypersurface(line(vertex), p2).base
        finer = subdivide_somewhere(rng, e)
        a = limit_expansion(e, p2)
        b = limit_expansion(finer, p2)
        assert a == b
        assert minimal_dilation(a.dilated) == 1


@pytest.mark.slow
def test_limits_of_random_curves_ignore_collinear_vertices(p2):
    rng = random.Random(2718)
    for _ in range(200):
        p = random_polynomial(rng, rng.randint(1, 3), (1, 2, 3))
        e = tropicalize_hypersurface(p, p2).base
        finer = subdivide_somewhere(rng, e)
        assert limit_expansion(e, p2) == limit_expansion(finer, p2)
