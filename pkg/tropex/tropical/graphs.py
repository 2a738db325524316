"""
Embedded and Combinatorial 1-Complexes

A combinatorial 1-complex (a graph "type") labels vertices, bounded edges
and unbounded rays with cones of a fan and edges/rays with primitive
directions. An embedded 1-complex adds rational vertex positions.

Provides:
- validation of embeddings (positions, segments, injectivity)
- the unique minimal polyhedral structure and canonical forms
- the cone over a 1-complex and its inverse, the height-one slice
- minimal integral dilation, dilation and subdivision
- splitting of arbitrary weighted segments and rays along fan walls

Author: tropex developers
License: MIT
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..core.errors import DimensionMismatch, InvalidInput, NotConeOverGraph
from ..core.logging import get_logger
from .cones import ConeComplex, make_complex
from .lattice import (
    IntVector,
    RatVector,
    add,
    as_vector,
    dot,
    gcd_list,
    is_zero,
    lcm_list,
    negate,
    parallel,
    primitive,
    rank,
    same_direction,
    scale,
    solve,
    sub,
)

logger = get_logger(__name__)


# ============================================================================
# Types
# ============================================================================

@dataclass(frozen=True)
class GraphEdge:
    """Bounded edge; f(ends[1]) - f(ends[0]) is a positive multiple of direction."""

    ends: Tuple[int, int]
    cone: int
    direction: IntVector


@dataclass(frozen=True)
class GraphRay:
    """Unbounded ray starting at vertex ``base``."""

    base: int
    cone: int
    direction: IntVector


@dataclass(frozen=True)
class CombinatorialOneComplex:
    """Graph with cone labels on vertices, edges and rays and edge directions."""

    vertex_cones: Tuple[int, ...]
    edges: Tuple[GraphEdge, ...] = ()
    rays: Tuple[GraphRay, ...] = ()

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_cones)

    def incidences(self) -> Dict[int, List[Tuple[str, int, IntVector]]]:
        """For every vertex, its (kind, index, outgoing direction) triples."""
        out: Dict[int, List[Tuple[str, int, IntVector]]] = {v: [] for v in range(self.num_vertices)}
        for i, e in enumerate(self.edges):
            a, b = e.ends
            out.setdefault(a, []).append(("edge", i, e.direction))
            out.setdefault(b, []).append(("edge", i, negate(e.direction)))
        for j, r in enumerate(self.rays):
            out.setdefault(r.base, []).append(("ray", j, r.direction))
        return out

    def valence(self, v: int) -> int:
        return len(self.incidences().get(v, []))


@dataclass(frozen=True)
class EmbeddedOneComplex:
    """A combinatorial 1-complex together with vertex positions."""

    graph: CombinatorialOneComplex
    positions: Tuple[RatVector, ...]

    def position(self, v: int) -> RatVector:
        return self.positions[v]

    def edge_length(self, i: int) -> Fraction:
        """Lattice length of edge i along its primitive direction."""
        e = self.graph.edges[i]
        return _parameter(sub(self.positions[e.ends[1]], self.positions[e.ends[0]]), e.direction)

    def pieces(self) -> List["Piece"]:
        """Edges followed by rays, as parametrized pieces."""
        out = [
            Piece(self.positions[e.ends[0]], e.direction, self.edge_length(i))
            for i, e in enumerate(self.graph.edges)
        ]
        out += [Piece(self.positions[r.base], r.direction, None) for r in self.graph.rays]
        return out


@dataclass(frozen=True)
class WeightedOneComplex:
    """An embedded 1-complex with positive integer weights on edges and rays."""

    base: EmbeddedOneComplex
    edge_weights: Tuple[int, ...]
    ray_weights: Tuple[int, ...]


Complex1 = Union[EmbeddedOneComplex, WeightedOneComplex]


def embedded_complex(
    vertices: Sequence[Tuple[int, Sequence]],
    edges: Sequence[Tuple[Tuple[int, int], int, Sequence]] = (),
    rays: Sequence[Tuple[int, int, Sequence]] = (),
) -> EmbeddedOneComplex:
    """Convenience constructor from (cone, position), (ends, cone, dir), (base, cone, dir)."""
    graph = CombinatorialOneComplex(
        tuple(int(c) for c, _ in vertices),
        tuple(GraphEdge((int(a), int(b)), int(c), tuple(int(x) for x in d)) for (a, b), c, d in edges),
        tuple(GraphRay(int(b), int(c), tuple(int(x) for x in d)) for b, c, d in rays),
    )
    return EmbeddedOneComplex(graph, tuple(as_vector(p) for _, p in vertices))


# ============================================================================
# Pieces (segments and rays)
# ============================================================================

@dataclass(frozen=True)
class Piece:
    """The set {start + t * direction : 0 <= t <= length}; length None is a ray."""

    start: RatVector
    direction: Tuple
    length: Optional[Fraction]

    def point(self, t) -> RatVector:
        return tuple(Fraction(x) for x in add(self.start, scale(Fraction(t), self.direction)))

    def within(self, t) -> bool:
        return t >= 0 and (self.length is None or t <= self.length)


@dataclass(frozen=True)
class PieceMeeting:
    """Intersection of two pieces as parameter ranges on each of them.

    ``kind`` is "point" or "segment"; an upper bound of None is unbounded.
    """

    kind: str
    first: Tuple[Fraction, Optional[Fraction]]
    second: Tuple[Fraction, Optional[Fraction]]


def _parameter(diff: Sequence, direction: Sequence) -> Fraction:
    k = next(i for i, x in enumerate(direction) if x != 0)
    return Fraction(diff[k]) / direction[k]


def piece_parameter(piece: Piece, x: Sequence) -> Optional[Fraction]:
    """Parameter t with piece.point(t) == x, or None when x is off the piece."""
    diff = sub(x, piece.start)
    if is_zero(diff):
        return Fraction(0)
    if not same_direction(diff, piece.direction):
        return None
    t = _parameter(diff, piece.direction)
    return t if piece.within(t) else None


def piece_intersection(p: Piece, q: Piece) -> Optional[PieceMeeting]:
    """Exact intersection of two pieces."""
    diff = sub(q.start, p.start)
    if parallel(p.direction, q.direction):
        if rank([p.direction, diff]) > 1:
            return None
        c = _parameter(diff, p.direction) if not is_zero(diff) else Fraction(0)
        lam = _parameter(q.direction, p.direction)
        ends = [c] if q.length is None else [c, c + lam * q.length]
        if q.length is None:
            lo, hi = (c, None) if lam > 0 else (None, c)
        else:
            lo, hi = min(ends), max(ends)
        lo = Fraction(0) if lo is None else max(lo, Fraction(0))
        if p.length is not None:
            hi = p.length if hi is None else min(hi, p.length)
        if hi is not None and lo > hi:
            return None

        def to_q(t):
            return None if t is None else (t - c) / lam

        q_range = sorted([x for x in (to_q(lo), to_q(hi)) if x is not None])
        q_lo = q_range[0]
        q_hi = q_range[-1] if hi is not None else None
        if hi is not None and lo == hi:
            return PieceMeeting("point", (lo, lo), (q_lo, q_lo))
        return PieceMeeting("segment", (lo, hi), (q_lo, q_hi))

    n = len(p.direction)
    for i, j in combinations(range(n), 2):
        rows = [[p.direction[i], -q.direction[i]], [p.direction[j], -q.direction[j]]]
        if rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0] == 0:
            continue
        s, t = solve(rows, [diff[i], diff[j]])
        if p.point(s) != q.point(t):
            return None
        if p.within(s) and q.within(t):
            return PieceMeeting("point", (s, s), (t, t))
        return None
    return None


# ============================================================================
# Validation
# ============================================================================

@dataclass(frozen=True)
class Violation:
    """A violated condition: kind, offending subject ("vertex 2", "edge 0") and detail."""

    kind: str
    subject: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations


def _structural_violations(e: EmbeddedOneComplex) -> List[Violation]:
    """Conditions that do not depend on the fan: indices, segments, injectivity."""
    g = e.graph
    nv = g.num_vertices
    out: List[Violation] = []

    if len(e.positions) != nv:
        return [Violation("position", "graph", f"{nv} vertices but {len(e.positions)} positions")]
    dims = {len(p) for p in e.positions}
    dims |= {len(x.direction) for x in g.edges} | {len(r.direction) for r in g.rays}
    if len(dims) > 1:
        return [Violation("position", "graph", f"mixed vector lengths {sorted(dims)}")]

    seen_pairs = set()
    for i, edge in enumerate(g.edges):
        a, b = edge.ends
        subject = f"edge {i}"
        if not (0 <= a < nv and 0 <= b < nv):
            out.append(Violation("cone_index", subject, f"endpoint out of range: {edge.ends}"))
            continue
        if a == b:
            out.append(Violation("loop", subject, f"both ends at vertex {a}"))
            continue
        pair = frozenset((a, b))
        if pair in seen_pairs:
            out.append(Violation("parallel", subject, f"second edge between {a} and {b}"))
        seen_pairs.add(pair)
        if is_zero(edge.direction) or gcd_list(edge.direction) != 1:
            out.append(Violation("direction", subject, f"direction {list(edge.direction)} is not primitive"))
            continue
        diff = sub(e.positions[b], e.positions[a])
        if not same_direction(diff, edge.direction):
            out.append(Violation(
                "segment", subject,
                f"f({b}) - f({a}) = {[str(x) for x in diff]} is not a positive multiple of {list(edge.direction)}",
            ))
    for j, ray in enumerate(g.rays):
        subject = f"ray {j}"
        if not 0 <= ray.base < nv:
            out.append(Violation("cone_index", subject, f"base out of range: {ray.base}"))
        elif is_zero(ray.direction) or gcd_list(ray.direction) != 1:
            out.append(Violation("direction", subject, f"direction {list(ray.direction)} is not primitive"))

    if out:
        return out
    return _embedding_violations(e)


def _embedding_violations(e: EmbeddedOneComplex) -> List[Violation]:
    g = e.graph
    out: List[Violation] = []
    for u, v in combinations(range(g.num_vertices), 2):
        if e.positions[u] == e.positions[v]:
            out.append(Violation("embedding", f"vertex {v}", f"same position as vertex {u}"))

    pieces = e.pieces()
    labels = [f"edge {i}" for i in range(len(g.edges))] + [f"ray {j}" for j in range(len(g.rays))]
    ends = [set(x.ends) for x in g.edges] + [{r.base} for r in g.rays]

    for k, piece in enumerate(pieces):
        for v in range(g.num_vertices):
            if v in ends[k]:
                continue
            if piece_parameter(piece, e.positions[v]) is not None:
                out.append(Violation("embedding", labels[k], f"passes through vertex {v}"))

    for k, l in combinations(range(len(pieces)), 2):
        meet = piece_intersection(pieces[k], pieces[l])
        if meet is None:
            continue
        shared = {tuple(e.positions[v]) for v in ends[k] & ends[l]}
        if meet.kind == "segment":
            out.append(Violation("embedding", labels[k], f"overlaps {labels[l]}"))
        elif pieces[k].point(meet.first[0]) not in shared:
            out.append(Violation("embedding", labels[k], f"crosses {labels[l]}"))
    return out


def _face_set(sigma: ConeComplex) -> set:
    return set(sigma.face_maps)


def validate_embedded(e: EmbeddedOneComplex, sigma: ConeComplex) -> ValidationReport:
    """Every violated condition of an embedded 1-complex; empty iff valid."""
    g = e.graph
    out: List[Violation] = []
    nc = len(sigma.cones)
    faces = _face_set(sigma)

    def face(child, parent):
        return child == parent or (child, parent) in faces

    for v, c in enumerate(g.vertex_cones):
        if not 0 <= c < nc:
            out.append(Violation("cone_index", f"vertex {v}", f"cone {c} not in the fan"))
        elif v < len(e.positions) and len(e.positions[v]) == sigma.ambient_dim \
                and not sigma.cones[c].contains(e.positions[v]):
            out.append(Violation("position", f"vertex {v}", f"f({v}) does not lie in cone {c}"))
        elif v < len(e.positions) and len(e.positions[v]) != sigma.ambient_dim:
            out.append(Violation("position", f"vertex {v}", "position has the wrong dimension"))

    for i, edge in enumerate(g.edges):
        subject = f"edge {i}"
        if not 0 <= edge.cone < nc:
            out.append(Violation("cone_index", subject, f"cone {edge.cone} not in the fan"))
            continue
        cone = sigma.cones[edge.cone]
        for v in edge.ends:
            if 0 <= v < g.num_vertices and 0 <= g.vertex_cones[v] < nc and not face(g.vertex_cones[v], edge.cone):
                out.append(Violation("face", subject, f"cone of vertex {v} is not a face of cone {edge.cone}"))
        if len(edge.direction) == sigma.ambient_dim and any(dot(b, edge.direction) != 0 for b in cone.equations):
            out.append(Violation("direction", subject, f"direction leaves the span of cone {edge.cone}"))

    for j, ray in enumerate(g.rays):
        subject = f"ray {j}"
        if not 0 <= ray.cone < nc:
            out.append(Violation("cone_index", subject, f"cone {ray.cone} not in the fan"))
            continue
        v = ray.base
        if 0 <= v < g.num_vertices and 0 <= g.vertex_cones[v] < nc and not face(g.vertex_cones[v], ray.cone):
            out.append(Violation("face", subject, f"cone of vertex {v} is not a face of cone {ray.cone}"))
        if len(ray.direction) == sigma.ambient_dim and not sigma.cones[ray.cone].contains(ray.direction):
            out.append(Violation("direction", subject, f"direction does not lie in cone {ray.cone}"))

    out += _structural_violations(e)
    return ValidationReport(tuple(out))


def check_structure(e: EmbeddedOneComplex) -> ValidationReport:
    """Violations that do not depend on a fan."""
    return ValidationReport(tuple(_structural_violations(e)))


def _require_structure(e: EmbeddedOneComplex, what: str):
    violations = _structural_violations(e)
    if violations:
        raise InvalidInput(f"{what}: invalid embedded 1-complex ({violations[0].subject}: {violations[0].detail})",
                           violations)


# ============================================================================
# Canonical forms and minimal structure
# ============================================================================

def _split(c: Complex1) -> Tuple[EmbeddedOneComplex, Optional[Tuple[int, ...]], Optional[Tuple[int, ...]]]:
    if isinstance(c, WeightedOneComplex):
        return c.base, c.edge_weights, c.ray_weights
    return c, None, None


def _join(e: EmbeddedOneComplex, ew, rw) -> Complex1:
    if ew is None:
        return e
    return WeightedOneComplex(e, tuple(ew), tuple(rw))


def canonical_form(c: Complex1) -> Complex1:
    """Relabel vertices by sorted position and orient edges from the lower id."""
    e, ew, rw = _split(c)
    g = e.graph
    order = sorted(range(g.num_vertices), key=lambda v: (tuple(e.positions[v]), g.vertex_cones[v]))
    new_id = {old: new for new, old in enumerate(order)}

    edges = []
    for i, edge in enumerate(g.edges):
        a, b = new_id[edge.ends[0]], new_id[edge.ends[1]]
        d = edge.direction
        if a > b:
            a, b, d = b, a, negate(d)
        edges.append((GraphEdge((a, b), edge.cone, tuple(d)), ew[i] if ew else None))
    rays = [
        (GraphRay(new_id[r.base], r.cone, r.direction), rw[j] if rw else None)
        for j, r in enumerate(g.rays)
    ]
    edges.sort(key=lambda x: (x[0].ends, x[0].direction, x[0].cone))
    rays.sort(key=lambda x: (x[0].base, x[0].direction, x[0].cone))

    graph = CombinatorialOneComplex(
        tuple(g.vertex_cones[v] for v in order),
        tuple(x for x, _ in edges),
        tuple(x for x, _ in rays),
    )
    out = EmbeddedOneComplex(graph, tuple(tuple(Fraction(x) for x in e.positions[v]) for v in order))
    if ew is None:
        return out
    return WeightedOneComplex(out, tuple(w for _, w in edges), tuple(w for _, w in rays))


def minimal_labels(e: EmbeddedOneComplex, sigma: ConeComplex) -> EmbeddedOneComplex:
    """Relabel every vertex, edge and ray by the smallest cone containing it."""
    g = e.graph
    vertex_cones = tuple(sigma.minimal_cone(p) for p in e.positions)
    edges = tuple(
        replace(x, cone=sigma.minimal_cone(scale(Fraction(1, 2), add(e.positions[x.ends[0]], e.positions[x.ends[1]]))))
        for x in g.edges
    )
    rays = tuple(replace(r, cone=sigma.minimal_cone(add(e.positions[r.base], r.direction))) for r in g.rays)
    return EmbeddedOneComplex(CombinatorialOneComplex(vertex_cones, edges, rays), e.positions)


def _mergeable(e: EmbeddedOneComplex, ew, rw, v: int, inc) -> bool:
    if len(inc) != 2:
        return False
    (k1, i1, d1), (k2, i2, d2) = inc
    if k1 == "ray" and k2 == "ray":
        return False
    if tuple(d1) != tuple(negate(d2)):
        return False
    g = e.graph
    cones = {g.vertex_cones[v]}
    weights = set()
    for kind, i in ((k1, i1), (k2, i2)):
        if kind == "edge":
            cones.add(g.edges[i].cone)
            if ew is not None:
                weights.add(ew[i])
        else:
            cones.add(g.rays[i].cone)
            if rw is not None:
                weights.add(rw[i])
    return len(cones) == 1 and len(weights) <= 1


def _merge_vertex(e: EmbeddedOneComplex, ew, rw, v: int, inc):
    g = e.graph
    (k1, i1, _), (k2, i2, _) = inc
    if k1 == "ray":
        (k1, i1), (k2, i2) = (k2, i2), (k1, i1)
    first = g.edges[i1]
    u = first.ends[0] if first.ends[1] == v else first.ends[1]
    edges = list(g.edges)
    rays = list(g.rays)
    ew = list(ew) if ew is not None else None
    rw = list(rw) if rw is not None else None

    if k2 == "ray":
        ray = g.rays[i2]
        rays[i2] = GraphRay(u, ray.cone, ray.direction)
        del edges[i1]
        if ew is not None:
            del ew[i1]
    else:
        second = g.edges[i2]
        w = second.ends[0] if second.ends[1] == v else second.ends[1]
        direction = primitive(sub(e.positions[w], e.positions[u]))
        weight = ew[i1] if ew is not None else None
        for i in sorted((i1, i2), reverse=True):
            del edges[i]
            if ew is not None:
                del ew[i]
        edges.append(GraphEdge((u, w), first.cone, direction))
        if ew is not None:
            ew.append(weight)

    def shift(x):
        return x - 1 if x > v else x

    vertex_cones = tuple(c for k, c in enumerate(g.vertex_cones) if k != v)
    positions = tuple(p for k, p in enumerate(e.positions) if k != v)
    edges = [GraphEdge((shift(x.ends[0]), shift(x.ends[1])), x.cone, x.direction) for x in edges]
    rays = [GraphRay(shift(r.base), r.cone, r.direction) for r in rays]
    merged = EmbeddedOneComplex(CombinatorialOneComplex(vertex_cones, tuple(edges), tuple(rays)), positions)
    return merged, ew, rw


def minimal_structure(c: Complex1, sigma: ConeComplex, keep: Sequence[Sequence] = ()) -> Complex1:
    """
    Coarsest polyhedral structure on the support of an embedded 1-complex.

    Labels become minimal cones; every 2-valent vertex whose two outgoing
    directions are opposite and whose open star lies in the relative
    interior of a single cone is deleted and its two pieces merged. Weighted
    complexes only merge pieces of equal weight. Vertices at positions in
    ``keep`` are never deleted.

    Raises:
        InvalidInput: validate_embedded reports a violation
    """
    e, ew, rw = _split(c)
    report = validate_embedded(e, sigma)
    if not report.valid:
        first = report.violations[0]
        raise InvalidInput(f"Invalid embedded 1-complex ({first.subject}: {first.detail})", report.violations)

    kept = {tuple(Fraction(x) for x in p) for p in keep}
    e = minimal_labels(e, sigma)
    while True:
        incidences = e.graph.incidences()
        target = next(
            (
                v for v in range(e.graph.num_vertices)
                if e.positions[v] not in kept and _mergeable(e, ew, rw, v, incidences[v])
            ),
            None,
        )
        if target is None:
            break
        logger.debug(f"Removing inessential vertex at {[str(x) for x in e.positions[target]]}")
        e, ew, rw = _merge_vertex(e, ew, rw, target, incidences[target])
    return canonical_form(_join(e, ew, rw))


def coarsen(c: Complex1, positions: Sequence[Sequence]) -> Complex1:
    """
    Delete the 2-valent vertices at ``positions``, merging their pieces.

    Cone labels are ignored; the merged piece keeps the label of its first part.

    Raises:
        InvalidInput: a position is not a vertex with two opposite pieces
    """
    e, ew, rw = _split(c)
    for p in positions:
        p = tuple(Fraction(x) for x in p)
        v = next((i for i, q in enumerate(e.positions) if tuple(q) == p), None)
        if v is None:
            raise InvalidInput(f"No vertex at {[str(x) for x in p]}")
        inc = e.graph.incidences()[v]
        if len(inc) != 2 or inc[0][0] == inc[1][0] == "ray" or tuple(inc[0][2]) != tuple(negate(inc[1][2])):
            raise InvalidInput(f"Vertex at {[str(x) for x in p]} is not a removable 2-valent vertex")
        e, ew, rw = _merge_vertex(e, ew, rw, v, inc)
    return canonical_form(_join(e, ew, rw))


def on_support(c: Complex1, x: Sequence) -> bool:
    """True when x lies on a vertex, edge or ray of the complex."""
    e, _, _ = _split(c)
    x = tuple(Fraction(v) for v in x)
    if any(tuple(p) == x for p in e.positions):
        return True
    return any(piece_parameter(piece, x) is not None for piece in e.pieces())


# ============================================================================
# Dilation and subdivision
# ============================================================================

def minimal_dilation(c: Complex1) -> int:
    """Least b >= 1 making every vertex of the b-fold dilation integral."""
    e, _, _ = _split(c)
    _require_structure(e, "minimal_dilation")
    return lcm_list(Fraction(x).denominator for p in e.positions for x in p)


def dilate(c: Complex1, k: int) -> Complex1:
    """Scale all positions by a positive integer."""
    if isinstance(k, bool) or not isinstance(k, int) or k <= 0:
        raise InvalidInput(f"Dilation factor must be a positive integer, got {k!r}")
    e, ew, rw = _split(c)
    positions = tuple(tuple(k * Fraction(x) for x in p) for p in e.positions)
    return _join(EmbeddedOneComplex(e.graph, positions), ew, rw)


def subdivide(c: Complex1, kind: str, index: int, params: Sequence) -> Complex1:
    """
    Insert 2-valent vertices on an edge or ray at the given parameters.

    Parameters are lattice distances from the start of the piece and must
    lie strictly inside it. New vertices carry the label of the piece.
    """
    e, ew, rw = _split(c)
    g = e.graph
    if kind not in ("edge", "ray"):
        raise InvalidInput(f"Can only subdivide an edge or a ray, not {kind!r}")
    pieces = g.edges if kind == "edge" else g.rays
    if not 0 <= index < len(pieces):
        raise InvalidInput(f"No {kind} with index {index}")
    params = sorted({Fraction(t) for t in params})
    piece = e.pieces()[index if kind == "edge" else len(g.edges) + index]
    if not params:
        return c
    if params[0] <= 0 or (piece.length is not None and params[-1] >= piece.length):
        raise InvalidInput(f"Subdivision parameters must lie strictly inside the {kind}")

    item = pieces[index]
    start = item.ends[0] if kind == "edge" else item.base
    nv = g.num_vertices
    new_ids = list(range(nv, nv + len(params)))
    positions = e.positions + tuple(piece.point(t) for t in params)
    vertex_cones = g.vertex_cones + tuple(item.cone for _ in params)
    chain = [start] + new_ids

    edges = list(g.edges)
    rays = list(g.rays)
    ew = list(ew) if ew is not None else None
    rw = list(rw) if rw is not None else None
    if kind == "edge":
        weight = ew.pop(index) if ew is not None else None
        del edges[index]
        chain.append(item.ends[1])
    else:
        weight = rw.pop(index) if rw is not None else None
        del rays[index]
    for a, b in zip(chain, chain[1:]):
        edges.append(GraphEdge((a, b), item.cone, item.direction))
        if ew is not None:
            ew.append(weight)
    if kind == "ray":
        rays.append(GraphRay(chain[-1], item.cone, item.direction))
        if rw is not None:
            rw.append(weight)

    graph = CombinatorialOneComplex(vertex_cones, tuple(edges), tuple(rays))
    return _join(EmbeddedOneComplex(graph, positions), ew, rw)


# ============================================================================
# Cone over a 1-complex
# ============================================================================

def cone_over(c: Complex1, ambient_dim: Optional[int] = None) -> ConeComplex:
    """
    The cone complex C(E) in R^n x R>=0: vertex v spans the ray through
    (f(v), 1), an edge the cone over its endpoints, a ray with direction d
    the cone on (f(v), 1) and (d, 0).

    ``ambient_dim`` is n; it may be omitted unless E is empty.

    Raises:
        InvalidInput: the 1-complex is not a valid embedding, or it is
            empty and no ambient dimension is given
        DimensionMismatch: a position does not have ambient_dim coordinates
    """
    e, _, _ = _split(c)
    _require_structure(e, "cone_over")
    g = e.graph
    if ambient_dim is None:
        if not e.positions:
            raise InvalidInput("cone_over needs an ambient dimension for an empty 1-complex")
        ambient_dim = len(e.positions[0])
    n = ambient_dim
    for p in e.positions:
        if len(p) != n:
            raise DimensionMismatch(f"Vertex at {[str(x) for x in p]} is not in R^{n}")
    lifted = [primitive(tuple(p) + (Fraction(1),)) for p in e.positions]
    cones = [[r] for r in lifted]
    for edge in g.edges:
        cones.append([lifted[edge.ends[0]], lifted[edge.ends[1]]])
    for ray in g.rays:
        cones.append([lifted[ray.base], tuple(ray.direction) + (0,)])
    names = {}
    for j, ray in enumerate(g.rays):
        names.setdefault(tuple(ray.direction) + (0,), f"r{j}")
    for v, r in enumerate(lifted):
        names[r] = f"v{v}"
    return make_complex(n + 1, cones, names)


def height_one_slice(c: ConeComplex, sigma: ConeComplex) -> EmbeddedOneComplex:
    """
    Recover the embedded 1-complex whose cone is C.

    Raises:
        NotConeOverGraph: a cone of dimension >= 3, a ray below height 0,
            a 2-cone at height 0, a bare height-0 ray, or a vertex outside
            the support of the fan
    """
    n = sigma.ambient_dim
    if c.ambient_dim != n + 1:
        raise NotConeOverGraph(f"Expected ambient dimension {n + 1}, got {c.ambient_dim}")
    if c.dim >= 3:
        raise NotConeOverGraph("Height-one slice is not 1-dimensional")

    vertex_of: Dict[IntVector, int] = {}
    positions: List[RatVector] = []
    for r in c.rays():
        if r[-1] < 0:
            raise NotConeOverGraph(f"Ray {list(r)} lies below height 0")
        if r[-1] > 0:
            vertex_of[r] = len(positions)
            positions.append(tuple(Fraction(x, r[-1]) for x in r[:-1]))

    edges: List[GraphEdge] = []
    rays: List[GraphRay] = []
    used_flat = set()
    for cone in c.cones:
        if cone.dim != 2:
            continue
        high = [r for r in cone.rays if r[-1] > 0]
        low = [r for r in cone.rays if r[-1] == 0]
        if len(high) == 2:
            a, b = vertex_of[high[0]], vertex_of[high[1]]
            edges.append(GraphEdge((a, b), 0, primitive(sub(positions[b], positions[a]))))
        elif len(high) == 1:
            used_flat.add(low[0])
            rays.append(GraphRay(vertex_of[high[0]], 0, tuple(low[0][:-1])))
        else:
            raise NotConeOverGraph(f"Cone {[list(r) for r in cone.rays]} lies at height 0")
    for r in c.rays():
        if r[-1] == 0 and r not in used_flat:
            raise NotConeOverGraph(f"Ray {list(r)} at height 0 is not attached to a vertex")

    for p in positions:
        if sigma.minimal_cone(p) is None:
            raise NotConeOverGraph(f"Vertex {[str(x) for x in p]} lies outside the fan")
    vertex_cones = tuple(0 for _ in positions)
    e = EmbeddedOneComplex(CombinatorialOneComplex(vertex_cones, tuple(edges), tuple(rays)), tuple(positions))
    return canonical_form(minimal_labels(e, sigma))


# ============================================================================
# Polyhedral images of arbitrary pieces
# ============================================================================

def _wall_forms(sigma: ConeComplex) -> List[IntVector]:
    forms = set()
    for cone in sigma.cones:
        for a in cone.halfspaces + cone.equations:
            forms.add(primitive(a))
    return sorted(forms)


def embed_in_fan(
    pieces: Sequence[Tuple[Sequence, Sequence, Optional[Fraction], int]],
    sigma: ConeComplex,
    points: Sequence[Sequence] = (),
    minimize: bool = True,
) -> WeightedOneComplex:
    """
    Polyhedral structure on a weighted union of segments and rays.

    Args:
        pieces: (start, direction, length or None, weight) tuples; the
            direction need not be primitive, length is measured in units of it
        sigma: Fan providing the walls and the cone labels
        points: Extra isolated vertices
        minimize: Return the minimal structure

    Pieces are cut at fan walls, at mutual crossings and overlaps and at
    vertices lying on them; coinciding parts add their weights and parts
    outside the support are dropped.
    """
    n = sigma.ambient_dim
    normalized: List[Tuple[Piece, int]] = []
    extra_points = [as_vector(p, n) for p in points]
    for start, direction, length, weight in pieces:
        direction = tuple(Fraction(x) for x in direction)
        if is_zero(direction) or length == 0:
            extra_points.append(as_vector(start, n))
            continue
        prim = primitive(direction)
        factor = _parameter(direction, prim)
        length = None if length is None else Fraction(length) * factor
        normalized.append((Piece(as_vector(start, n), prim, length), int(weight)))

    forms = _wall_forms(sigma)
    endpoints = [p.start for p, _ in normalized] + [
        p.point(p.length) for p, _ in normalized if p.length is not None
    ]

    cuts: List[set] = []
    for k, (piece, _) in enumerate(normalized):
        ts = {Fraction(0)}
        if piece.length is not None:
            ts.add(piece.length)
        for a in forms:
            ad = dot(a, piece.direction)
            if ad != 0:
                t = Fraction(-dot(a, piece.start)) / ad
                if piece.within(t):
                    ts.add(t)
        for x in endpoints + extra_points:
            t = piece_parameter(piece, x)
            if t is not None:
                ts.add(t)
        for l, (other, _) in enumerate(normalized):
            if l == k:
                continue
            meet = piece_intersection(piece, other)
            if meet is not None:
                ts.add(meet.first[0])
                if meet.first[1] is not None:
                    ts.add(meet.first[1])
        cuts.append(ts)

    segments: Dict[Tuple[RatVector, RatVector], int] = {}
    halflines: Dict[Tuple[RatVector, IntVector], int] = {}
    for (piece, weight), ts in zip(normalized, cuts):
        ts = sorted(ts)
        for t0, t1 in zip(ts, ts[1:]):
            mid = piece.point((t0 + t1) / 2)
            if sigma.minimal_cone(mid) is None:
                continue
            a, b = piece.point(t0), piece.point(t1)
            key = (a, b) if a < b else (b, a)
            segments[key] = segments.get(key, 0) + weight
        if piece.length is None:
            base = piece.point(ts[-1])
            if sigma.minimal_cone(add(base, piece.direction)) is not None:
                key = (base, piece.direction)
                halflines[key] = halflines.get(key, 0) + weight

    vertex_points = set(extra_points)
    for a, b in segments:
        vertex_points.update((a, b))
    for base, _ in halflines:
        vertex_points.add(base)
    vertex_points = {p for p in vertex_points if sigma.minimal_cone(p) is not None}
    order = sorted(vertex_points)
    vid = {p: i for i, p in enumerate(order)}

    edges, ew = [], []
    for (a, b), w in sorted(segments.items()):
        if w == 0:
            continue
        edges.append(GraphEdge((vid[a], vid[b]), 0, primitive(sub(b, a))))
        ew.append(w)
    rays, rw = [], []
    for (base, d), w in sorted(halflines.items()):
        if w == 0:
            continue
        rays.append(GraphRay(vid[base], 0, d))
        rw.append(w)

    e = EmbeddedOneComplex(
        CombinatorialOneComplex(tuple(0 for _ in order), tuple(edges), tuple(rays)),
        tuple(order),
    )
    e = minimal_labels(e, sigma)
    weighted = WeightedOneComplex(e, tuple(ew), tuple(rw))
    logger.debug(f"Polyhedral image: {len(order)} vertices, {len(edges)} edges, {len(rays)} rays")
    if minimize:
        return minimal_structure(weighted, sigma)
    return canonical_form(weighted)


def polyhedral_image(c: Complex1, sigma: ConeComplex, minimize: bool = False) -> WeightedOneComplex:
    """Re-embed the support of a (possibly non-injective) realization."""
    e, ew, rw = _split(c)
    ew = ew or tuple(1 for _ in e.graph.edges)
    rw = rw or tuple(1 for _ in e.graph.rays)
    pieces = []
    for i, edge in enumerate(e.graph.edges):
        pieces.append((e.positions[edge.ends[0]], sub(e.positions[edge.ends[1]], e.positions[edge.ends[0]]), 1, ew[i]))
    for j, ray in enumerate(e.graph.rays):
        pieces.append((e.positions[ray.base], ray.direction, None, rw[j]))
    return embed_in_fan(pieces, sigma, points=e.positions, minimize=minimize)
