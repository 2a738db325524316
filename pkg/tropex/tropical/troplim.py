"""
Tropicalization and Flat Limits

- tropical hypersurfaces of plane polynomials over a valued field (min-plus)
- balancing defects and asymptotic degree profiles of weighted 1-complexes
- the flat-limit algorithm: minimal structure, minimal dilation, cone over
  the dilated complex, and the dual complex of the resulting expansion

Author: tropex developers
License: MIT
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from ..core.errors import (
    AmbientMismatch,
    DegenerateInput,
    InvalidInput,
    NonparallelRay,
    UnsupportedDimension,
)
from ..core.logging import get_logger
from .cones import ConeComplex, make_complex
from .expansion import ExpansionDualComplex, dual_complex
from .graphs import (
    EmbeddedOneComplex,
    WeightedOneComplex,
    cone_over,
    dilate,
    embed_in_fan,
    minimal_dilation,
    minimal_structure,
)
from .lattice import IntVector, RatVector, as_vector, dot, is_zero, primitive, scale, vector_sum
from .lifting import collinear_pieces, dual_pieces, is_planar

logger = get_logger(__name__)

__all__ = [
    "TropicalPolynomial",
    "BalancingReport",
    "AsymptoticProfile",
    "LimitResult",
    "projective_plane_fan",
    "tropicalize_hypersurface",
    "tropicalize_batch",
    "check_balancing",
    "asymptotic_profile",
    "check_degree",
    "limit_expansion",
]


def projective_plane_fan() -> ConeComplex:
    """Complete fan on the rays e1, e2, -e1-e2 with divisors D1, D2, D0."""
    e1, e2, e0 = (1, 0), (0, 1), (-1, -1)
    return make_complex(2, [[e1, e2], [e2, e0], [e0, e1]], {e1: "D1", e2: "D2", e0: "D0"})


# ============================================================================
# Tropical polynomials
# ============================================================================

@dataclass(frozen=True)
class TropicalPolynomial:
    """
    Min-plus tropical polynomial x -> min_i (val_i + <exp_i, x>).

    ``terms`` holds (exponent, coefficient valuation) pairs with distinct
    exponents.
    """

    ambient_dim: int
    terms: Tuple[Tuple[IntVector, Fraction], ...]
    convention: str = "min"

    def __post_init__(self):
        exponents = [e for e, _ in self.terms]
        if any(len(e) != self.ambient_dim for e in exponents):
            raise InvalidInput(f"Exponents must have length {self.ambient_dim}")
        if len(set(exponents)) != len(exponents):
            raise InvalidInput("Exponents of a tropical polynomial must be distinct")
        if self.convention != "min":
            raise InvalidInput(f"Only the min-plus convention is supported, got {self.convention!r}")

    @classmethod
    def from_terms(cls, ambient_dim: int, terms: Union[Mapping, Sequence]) -> "TropicalPolynomial":
        """Build from {exponent: valuation} or [(exponent, valuation), ...]."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        parsed = tuple(sorted(
            (tuple(int(x) for x in e), Fraction(v)) for e, v in items
        ))
        return cls(ambient_dim, parsed)

    @property
    def exponents(self) -> List[IntVector]:
        return [e for e, _ in self.terms]

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.exponents), default=0)

    def term_values(self, x: Sequence) -> List[Fraction]:
        return [v + dot(e, x) for e, v in self.terms]

    def evaluate(self, x: Sequence) -> Fraction:
        return min(self.term_values(x))

    def minimizers(self, x: Sequence) -> List[int]:
        values = self.term_values(x)
        best = min(values)
        return [i for i, v in enumerate(values) if v == best]

    def break_locus_contains(self, x: Sequence) -> bool:
        """True where the minimum is attained at least twice."""
        return len(self.minimizers(x)) >= 2


def tropicalize_hypersurface(p: TropicalPolynomial, sigma: ConeComplex) -> WeightedOneComplex:
    """
    Tropical curve of a plane polynomial, subordinate to a fan.

    Raises:
        UnsupportedDimension: the polynomial is not in two variables
        DegenerateInput: fewer than two terms
        AmbientMismatch: the fan is not planar
    """
    if p.ambient_dim != 2:
        raise UnsupportedDimension(f"Only plane curves are supported (got ambient dimension {p.ambient_dim})")
    if len(p.terms) < 2:
        raise DegenerateInput("A tropical hypersurface needs at least two terms")
    if sigma.ambient_dim != 2:
        raise AmbientMismatch(f"Fan of dimension {sigma.ambient_dim} for a plane curve")

    points = p.exponents
    heights = [v for _, v in p.terms]
    if is_planar(points):
        pieces, _ = dual_pieces(points, heights)
    else:
        pieces = collinear_pieces(points, heights)
    curve = embed_in_fan(pieces, sigma)
    logger.debug(
        f"Tropicalized {len(p.terms)} terms: {curve.base.graph.num_vertices} vertices, "
        f"{len(curve.base.graph.edges)} edges, {len(curve.base.graph.rays)} rays"
    )
    return curve


def tropicalize_batch(
    polynomials: Sequence[TropicalPolynomial],
    sigma: ConeComplex,
    workers: int = 4,
) -> List[WeightedOneComplex]:
    """Tropicalize several polynomials concurrently, preserving input order."""
    results: Dict[int, WeightedOneComplex] = {}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_index = {
            executor.submit(tropicalize_hypersurface, poly, sigma): i
            for i, poly in enumerate(polynomials)
        }
        for future in as_completed(future_to_index):
            results[future_to_index[future]] = future.result()
    return [results[i] for i in range(len(polynomials))]


# ============================================================================
# Balancing and asymptotics
# ============================================================================

@dataclass(frozen=True)
class BalancingReport:
    """Per-vertex weighted sums of outgoing primitive directions."""

    sums: Tuple[Tuple[int, Tuple], ...]

    @property
    def defects(self) -> Tuple[Tuple[int, Tuple], ...]:
        return tuple((v, s) for v, s in self.sums if not is_zero(s))

    @property
    def balanced(self) -> bool:
        return not self.defects


def check_balancing(w: WeightedOneComplex) -> BalancingReport:
    """Weighted direction sum at every vertex; balanced iff all vanish."""
    g = w.base.graph
    n = len(w.base.positions[0]) if w.base.positions else 0
    incidences = g.incidences()
    sums = []
    for v in range(g.num_vertices):
        terms = []
        for kind, i, direction in incidences[v]:
            weight = w.edge_weights[i] if kind == "edge" else w.ray_weights[i]
            terms.append(scale(weight, primitive(direction)))
        total = tuple(int(x) for x in vector_sum(terms, n))
        sums.append((v, total))
    return BalancingReport(tuple(sums))


@dataclass(frozen=True)
class AsymptoticProfile:
    """Weights of unbounded rays grouped by the fan ray they are parallel to."""

    weights: Tuple[Tuple[IntVector, Tuple[int, ...]], ...]
    names: Tuple[Tuple[IntVector, str], ...] = ()

    def totals(self) -> Dict[IntVector, int]:
        return {ray: sum(ws) for ray, ws in self.weights}


def asymptotic_profile(w: WeightedOneComplex, sigma: ConeComplex) -> AsymptoticProfile:
    """
    Group unbounded rays by direction; totals are degrees against the divisors.

    Raises:
        NonparallelRay: a ray direction is not a ray of the fan
    """
    fan_rays = set(sigma.rays())
    grouped: Dict[IntVector, List[int]] = {r: [] for r in sigma.rays()}
    for j, ray in enumerate(w.base.graph.rays):
        d = primitive(ray.direction)
        if d not in fan_rays:
            raise NonparallelRay(f"Ray {j} with direction {list(d)} is not parallel to a ray of the fan")
        grouped[d].append(w.ray_weights[j])
    weights = tuple((r, tuple(sorted(ws))) for r, ws in sorted(grouped.items()))
    return AsymptoticProfile(weights, sigma.ray_names)


@dataclass(frozen=True)
class DegreeReport:
    matches: bool
    mismatches: Tuple[Tuple[IntVector, int, int], ...] = ()


def check_degree(profile: AsymptoticProfile, expected: Union[int, Mapping]) -> DegreeReport:
    """Compare asymptotic totals with a curve class.

    ``expected`` is either one degree for every ray or a map ray -> degree.
    """
    totals = profile.totals()
    mismatches = []
    for ray, got in sorted(totals.items()):
        if isinstance(expected, Mapping):
            want = expected.get(ray, expected.get(tuple(ray), 0))
        else:
            want = int(expected)
        if got != want:
            mismatches.append((ray, got, want))
    return DegreeReport(not mismatches, tuple(mismatches))


# ============================================================================
# Flat limits
# ============================================================================

@dataclass(frozen=True)
class LimitResult:
    """Canonical output of the flat-limit algorithm."""

    minimal_complex: EmbeddedOneComplex
    base_change_order: int
    dilated: EmbeddedOneComplex
    cone: ConeComplex
    expansion: ExpansionDualComplex


def limit_expansion(e: EmbeddedOneComplex, sigma: ConeComplex) -> LimitResult:
    """
    Run the flat-limit algorithm on the tropicalization of a family.

    The result depends only on the support of E: inserting collinear
    2-valent vertices does not change it.
    """
    minimal = minimal_structure(e, sigma)
    b = minimal_dilation(minimal)
    dilated = dilate(minimal, b)
    cone = cone_over(dilated, sigma.ambient_dim)
    expansion = dual_complex(cone, sigma)
    logger.info(
        f"Flat limit: {minimal.graph.num_vertices} components, base change of order {b}"
    )
    return LimitResult(minimal, b, dilated, cone, expansion)


def weighted(e: EmbeddedOneComplex, edge_weights=None, ray_weights=None) -> WeightedOneComplex:
    """Attach weights (default 1) to an embedded 1-complex."""
    ew = tuple(edge_weights) if edge_weights is not None else tuple(1 for _ in e.graph.edges)
    rw = tuple(ray_weights) if ray_weights is not None else tuple(1 for _ in e.graph.rays)
    if len(ew) != len(e.graph.edges) or len(rw) != len(e.graph.rays):
        raise InvalidInput("One weight per edge and per ray is required")
    if any(x <= 0 for x in ew + rw):
        raise InvalidInput("Weights must be positive integers")
    return WeightedOneComplex(e, ew, rw)


def sample_points(radius: int, denominator: int = 1) -> List[RatVector]:
    """Rational grid points in [-radius, radius]^2 with the given denominator."""
    steps = range(-radius * denominator, radius * denominator + 1)
    return [as_vector((Fraction(i, denominator), Fraction(j, denominator))) for i in steps for j in steps]
