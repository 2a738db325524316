"""
Expansions of Toric Targets

Combinatorial shadow of the expansion built from a cone over an embedded
1-complex: one component per vertex (a torus bundle whose rank is the
dimension of the stratum cone), double divisors along bounded edges,
relative divisors along rays, plus tube vertices and the DT stability
predicate for subschemes modelled by flags and contact lengths.

Author: tropex developers
License: MIT
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from ..core.errors import InvalidInput, NotARefinement, ShapeMismatch
from ..core.logging import get_logger
from .cones import ConeComplex, star_of_ray
from .graphs import (
    EmbeddedOneComplex,
    canonical_form,
    check_structure,
    coarsen,
    height_one_slice,
)
from .lattice import IntVector, RatVector, parallel, primitive

logger = get_logger(__name__)


@dataclass(frozen=True)
class Component:
    vertex: int
    position: RatVector
    stratum: int
    bundle_rank: int
    is_tube: bool = False


@dataclass(frozen=True)
class DoubleDivisor:
    edge: int
    components: Tuple[int, int]
    direction: IntVector
    cone: int


@dataclass(frozen=True)
class RelativeDivisor:
    ray: int
    component: int
    direction: IntVector
    cone: int


@dataclass(frozen=True)
class ExpansionDualComplex:
    """
    Dual complex of an expansion.

    Components are indexed like the vertices of the height-one slice.
    ``tube_flags`` is the set of components marked as tube components.
    """

    components: Tuple[Component, ...]
    double_divisors: Tuple[DoubleDivisor, ...] = ()
    relative_divisors: Tuple[RelativeDivisor, ...] = ()

    @property
    def tube_flags(self) -> FrozenSet[int]:
        return frozenset(c.vertex for c in self.components if c.is_tube)

    def neighbours(self, vertex: int) -> List[Tuple[str, int, IntVector]]:
        """Incident divisors of a component with their outgoing directions."""
        out = []
        for d in self.double_divisors:
            a, b = d.components
            if a == vertex:
                out.append(("double", d.edge, d.direction))
            if b == vertex:
                out.append(("double", d.edge, tuple(-x for x in d.direction)))
        for r in self.relative_divisors:
            if r.component == vertex:
                out.append(("relative", r.ray, r.direction))
        return out

    def validate(self, sigma: Optional[ConeComplex] = None) -> List[str]:
        """Rank and tube-component conditions; an empty list means valid."""
        violations = []
        if sigma is not None:
            for c in self.components:
                if not 0 <= c.stratum < len(sigma.cones):
                    violations.append(f"component {c.vertex}: stratum {c.stratum} not in the fan")
                elif sigma.cones[c.stratum].dim != c.bundle_rank:
                    violations.append(
                        f"component {c.vertex}: rank {c.bundle_rank} differs from "
                        f"dim of cone {c.stratum} ({sigma.cones[c.stratum].dim})"
                    )
        for v in sorted(self.tube_flags):
            incident = self.neighbours(v)
            if len(incident) != 2:
                violations.append(f"tube component {v} has valence {len(incident)}")
            elif not parallel(incident[0][2], incident[1][2]):
                violations.append(f"tube component {v} joins non-collinear divisors")
        return violations


def dual_complex(
    c: ConeComplex,
    sigma: ConeComplex,
    tube_positions: Sequence[Sequence] = (),
) -> ExpansionDualComplex:
    """
    Dual complex of the expansion defined by a cone over an embedded 1-complex.

    Args:
        c: Cone complex in the ambient space of sigma times R>=0
        sigma: Fan of the target
        tube_positions: Height-one positions of components to flag as tubes

    Raises:
        NotConeOverGraph: the height-one slice is not an embedded 1-complex
    """
    e = height_one_slice(c, sigma)
    tubes = {tuple(Fraction(x) for x in p) for p in tube_positions}
    g = e.graph
    components = tuple(
        Component(v, e.positions[v], g.vertex_cones[v], sigma.cones[g.vertex_cones[v]].dim,
                  tuple(e.positions[v]) in tubes)
        for v in range(g.num_vertices)
    )
    doubles = tuple(DoubleDivisor(i, x.ends, x.direction, x.cone) for i, x in enumerate(g.edges))
    relatives = tuple(RelativeDivisor(j, r.base, r.direction, r.cone) for j, r in enumerate(g.rays))
    logger.debug(
        f"Expansion with {len(components)} components, {len(doubles)} double "
        f"and {len(relatives)} relative divisors"
    )
    return ExpansionDualComplex(components, doubles, relatives)


def component_fan(c: ConeComplex, position: Sequence) -> ConeComplex:
    """Fan of the torus-bundle fibre over the component at a height-one position."""
    ray = primitive(tuple(Fraction(x) for x in position) + (Fraction(1),))
    return star_of_ray(c, ray)


# ============================================================================
# Tube vertices
# ============================================================================

def _shape(e: EmbeddedOneComplex) -> tuple:
    positions = e.positions
    edges = sorted(tuple(sorted((positions[x.ends[0]], positions[x.ends[1]]))) for x in e.graph.edges)
    rays = sorted((positions[r.base], r.direction) for r in e.graph.rays)
    return (tuple(sorted(positions)), tuple(edges), tuple(rays))


def tube_vertices(upsilon: EmbeddedOneComplex, g: EmbeddedOneComplex) -> FrozenSet[int]:
    """
    Vertices of a refinement that are absent from the coarser complex.

    Raises:
        NotARefinement: the supports differ, a vertex of G is missing from
            Upsilon, or an inserted vertex is not 2-valent and collinear
    """
    for label, e in (("Upsilon", upsilon), ("G", g)):
        report = check_structure(e)
        if not report.valid:
            first = report.violations[0]
            raise NotARefinement(f"{label} is not a valid embedded 1-complex: {first.subject}: {first.detail}")

    own = {tuple(p): v for v, p in enumerate(upsilon.positions)}
    for p in g.positions:
        if tuple(p) not in own:
            raise NotARefinement(f"Vertex {[str(x) for x in p]} of G is not a vertex of Upsilon")
    g_positions = {tuple(p) for p in g.positions}
    extra = [p for p in sorted(own) if p not in g_positions]

    try:
        coarse = coarsen(upsilon, extra)
    except InvalidInput as e:
        raise NotARefinement(str(e)) from e
    if _shape(coarse) != _shape(canonical_form(g)):
        raise NotARefinement("Upsilon and G have different supports")
    return frozenset(own[p] for p in extra)


# ============================================================================
# Subschemes and DT stability
# ============================================================================

@dataclass(frozen=True)
class SubschemeShadow:
    """
    Flags and contact lengths standing in for a subscheme of an expansion.

    ``contact_lengths`` maps (edge, end component) to the length of contact
    with the double divisor of that edge, seen from that component.
    """

    is_tube: Mapping[int, bool]
    contact_lengths: Mapping[Tuple[int, int], int] = None

    def __post_init__(self):
        object.__setattr__(self, "is_tube", dict(self.is_tube))
        object.__setattr__(self, "contact_lengths", dict(self.contact_lengths or {}))


def check_contact_lengths(e: ExpansionDualComplex, s: SubschemeShadow) -> List[int]:
    """Double divisors whose contact lengths disagree across the divisor."""
    mismatched = []
    for d in e.double_divisors:
        a, b = d.components
        left = s.contact_lengths.get((d.edge, a))
        right = s.contact_lengths.get((d.edge, b))
        if left is None or right is None or left != right:
            mismatched.append(d.edge)
    return mismatched


@dataclass(frozen=True)
class StabilityResult:
    stable: bool
    witness: Tuple[int, ...] = ()


def dt_stability(e: ExpansionDualComplex, s: SubschemeShadow) -> StabilityResult:
    """
    DT stability: tube subschemes sit exactly on the tube components.

    Raises:
        ShapeMismatch: the shadow is not defined on exactly the components of E
    """
    vertices = {c.vertex for c in e.components}
    if set(s.is_tube) != vertices:
        raise ShapeMismatch(
            f"Subscheme flags on {sorted(s.is_tube)} but components {sorted(vertices)}"
        )
    hosting = {v for v, flag in s.is_tube.items() if flag}
    witness = tuple(sorted(hosting ^ set(e.tube_flags)))
    return StabilityResult(not witness, witness)


def flag_tubes(e: ExpansionDualComplex, vertices: Sequence[int]) -> ExpansionDualComplex:
    """Copy of E with exactly the given components flagged as tubes."""
    chosen = set(vertices)
    unknown = chosen - {c.vertex for c in e.components}
    if unknown:
        raise ShapeMismatch(f"No components {sorted(unknown)}")
    components = tuple(
        Component(c.vertex, c.position, c.stratum, c.bundle_rank, c.vertex in chosen)
        for c in e.components
    )
    return ExpansionDualComplex(components, e.double_divisors, e.relative_divisors)


def contact_lengths_from_weights(e: ExpansionDualComplex, edge_weights: Sequence[int]) -> Dict[Tuple[int, int], int]:
    """Contact lengths induced by edge weights of a weighted 1-complex."""
    out = {}
    for d in e.double_divisors:
        for v in d.components:
            out[(d.edge, v)] = int(edge_weights[d.edge])
    return out
