"""
Moduli of Embedded 1-Complexes

Provides:
- realization cones X_G of combinatorial 1-complex types inside a fan
- image surjections of degenerate realizations and their axioms
- type isomorphisms and automorphism groups (networkx)
- enumeration of all surjection types realized over a cone by an exact
  hyperplane arrangement
- equivariant subdivisions and the assembly of finite cone-space
  fragments with their universal families

Author: tropex developers
License: MIT
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.algorithms.isomorphism import (
    DiGraphMatcher,
    categorical_edge_match,
    categorical_node_match,
)

from ..core.errors import (
    BudgetExceeded,
    EmptyInterior,
    FaceMismatch,
    InvalidInput,
    NotClosed,
    NotEquivariant,
    NotStable,
    NotStronglyConvex,
    SupportMismatch,
)
from ..core.logging import get_logger
from .cones import (
    Cone,
    ConeComplex,
    ConeSpace,
    FaceMorphism,
    FlatnessReport,
    Matrix,
    as_matrix,
    common_refinement,
    cone_from_inequalities,
    cone_sort_key,
    image_cone,
    is_flat_and_reduced,
    is_smooth,
    is_subdivision,
    make_complex,
    make_cone,
    stellar_subdivision,
    subdivide_by_hyperplanes,
    barycentric_subdivision,
)
from .graphs import (
    CombinatorialOneComplex,
    EmbeddedOneComplex,
    Piece,
    _parameter,
    _wall_forms,
    embed_in_fan,
    minimal_labels,
    minimal_structure,
    piece_parameter,
    subdivide,
    validate_embedded,
)
from .lattice import (
    IntVector,
    RatVector,
    add,
    dot,
    identity,
    integer_kernel_basis,
    is_zero,
    lex_positive,
    mat_mul,
    mat_vec,
    negate,
    parallel,
    primitive,
    project_onto_span,
    scale,
    solve,
    sub,
)

logger = get_logger(__name__)

TypeLike = Union[CombinatorialOneComplex, EmbeddedOneComplex]


def _as_type(g: TypeLike) -> CombinatorialOneComplex:
    return g.graph if isinstance(g, EmbeddedOneComplex) else g


# ============================================================================
# Linear forms on R^{n * |V|}
# ============================================================================

def _block(m: int, n: int, v: int, vec: Sequence) -> RatVector:
    out = [Fraction(0)] * (m * n)
    for k, x in enumerate(vec):
        out[v * n + k] = Fraction(x)
    return tuple(out)


def _diff_form(m: int, n: int, v: int, w: int, vec: Sequence) -> RatVector:
    """The form x -> vec . (x_w - x_v)."""
    return sub(_block(m, n, w, vec), _block(m, n, v, vec))


def _piece_specs(g: CombinatorialOneComplex) -> List[Tuple[int, Optional[int], IntVector]]:
    """(start vertex, end vertex or None, direction) for edges, then rays."""
    return [(e.ends[0], e.ends[1], e.direction) for e in g.edges] + [(r.base, None, r.direction) for r in g.rays]


def _param_form(m: int, n: int, start: int, w: int, d: Sequence) -> RatVector:
    """Parameter along the line start + t d of the projection of x_w."""
    return scale(Fraction(1, dot(d, d)), _diff_form(m, n, start, w, d))


def _length_form(m: int, n: int, spec) -> Optional[RatVector]:
    a, b, d = spec
    if b is None:
        return None
    return _param_form(m, n, a, b, d)


def _meeting_forms(m: int, n: int, p, q) -> Tuple[RatVector, RatVector]:
    """Parameters (s, t) of the meeting point of two non-parallel pieces.

    Valid where x_c - x_a lies in span(d1, d2); there x_a + s d1 = x_c + t d2.
    """
    a, _, d1 = p
    c, _, d2 = q
    for i, j in combinations(range(n), 2):
        det = -d1[i] * d2[j] + d2[i] * d1[j]
        if det == 0:
            continue
        di = _diff_form(m, n, a, c, [1 if k == i else 0 for k in range(n)])
        dj = _diff_form(m, n, a, c, [1 if k == j else 0 for k in range(n)])
        # inverse of [[d1_i, -d2_i], [d1_j, -d2_j]]
        s = add(scale(Fraction(-d2[j], det), di), scale(Fraction(d2[i], det), dj))
        t = add(scale(Fraction(-d1[j], det), di), scale(Fraction(d1[i], det), dj))
        return s, t
    raise InvalidInput("Pieces are parallel")


# ============================================================================
# Realization cones
# ============================================================================

@dataclass(frozen=True)
class XGCone:
    """
    Cone of all realizations of a type: the position of every vertex, one
    block of ``ambient_dim`` coordinates per vertex.
    """

    graph: CombinatorialOneComplex
    ambient_dim: int
    inequalities: Tuple[RatVector, ...]
    equations: Tuple[RatVector, ...]
    cone: Cone

    @property
    def dim(self) -> int:
        return self.cone.dim

    def realize(self, x: Sequence) -> EmbeddedOneComplex:
        n = self.ambient_dim
        positions = tuple(
            tuple(Fraction(c) for c in x[v * n:(v + 1) * n]) for v in range(self.graph.num_vertices)
        )
        return EmbeddedOneComplex(self.graph, positions)

    def point_of(self, e: EmbeddedOneComplex) -> RatVector:
        if e.graph.num_vertices != self.graph.num_vertices:
            raise InvalidInput("Realization has a different number of vertices")
        return tuple(Fraction(c) for p in e.positions for c in p)

    def contains(self, x: Sequence) -> bool:
        return self.cone.contains(x)


def _check_type(g: CombinatorialOneComplex, sigma: ConeComplex):
    n = sigma.ambient_dim
    nc = len(sigma.cones)
    if g.num_vertices == 0:
        raise InvalidInput("A type needs at least one vertex")
    for v, c in enumerate(g.vertex_cones):
        if not 0 <= c < nc:
            raise InvalidInput(f"Vertex {v} is labelled by cone {c}, not in the fan")
    for i, x in enumerate(g.edges):
        a, b = x.ends
        if not (0 <= a < g.num_vertices and 0 <= b < g.num_vertices) or a == b:
            raise InvalidInput(f"Edge {i} has invalid ends {x.ends}")
        if not 0 <= x.cone < nc or len(x.direction) != n or is_zero(x.direction):
            raise InvalidInput(f"Edge {i} has an invalid cone or direction")
    for j, r in enumerate(g.rays):
        if not 0 <= r.base < g.num_vertices:
            raise InvalidInput(f"Ray {j} has invalid base {r.base}")
        if not 0 <= r.cone < nc or len(r.direction) != n or is_zero(r.direction):
            raise InvalidInput(f"Ray {j} has an invalid cone or direction")


def _realizes_exactly(e: EmbeddedOneComplex, sigma: ConeComplex) -> bool:
    if not validate_embedded(e, sigma).valid:
        return False
    return minimal_labels(e, sigma).graph == e.graph


def build_XG(
    g: TypeLike,
    sigma: ConeComplex,
    witness: Optional[EmbeddedOneComplex] = None,
) -> XGCone:
    """
    Realization cone of a combinatorial 1-complex in a fan.

    Every vertex position lies in its cone; every edge difference is a
    non-negative multiple of its direction.

    Args:
        g: The type
        sigma: The fan
        witness: A known realization of exactly this type; otherwise the
            relative interior point and its shifts towards each ray are tried

    Raises:
        InvalidInput: the type refers to cones outside the fan
        EmptyInterior: no tried point realizes the type exactly
    """
    g = _as_type(g)
    _check_type(g, sigma)
    n = sigma.ambient_dim
    m = g.num_vertices
    inequalities: List[RatVector] = []
    equations: List[RatVector] = []
    for v, c in enumerate(g.vertex_cones):
        cone = sigma.cones[c]
        inequalities += [_block(m, n, v, a) for a in cone.halfspaces]
        equations += [_block(m, n, v, b) for b in cone.equations]
    for edge in g.edges:
        a, b = edge.ends
        equations += [_diff_form(m, n, a, b, u) for u in integer_kernel_basis([edge.direction], n)]
        inequalities.append(_diff_form(m, n, a, b, edge.direction))

    try:
        cone = cone_from_inequalities(m * n, inequalities, equations)
    except NotStronglyConvex as e:
        raise EmptyInterior(f"Realization cone is not pointed: {e}") from e
    xg = XGCone(g, n, tuple(inequalities), tuple(equations), cone)

    for j, ray in enumerate(g.rays):
        if not sigma.cones[ray.cone].contains(ray.direction):
            raise EmptyInterior(f"Ray {j} points out of its cone")

    if witness is not None and _realizes_exactly(EmbeddedOneComplex(g, witness.positions), sigma):
        return xg
    x0 = cone.relative_interior_point()
    candidates = [x0] + [add(x0, r) for r in cone.rays] + [add(scale(2, x0), r) for r in cone.rays]
    for x in candidates:
        if _realizes_exactly(xg.realize(x), sigma):
            logger.debug(f"Realization cone of dimension {cone.dim} for a type with {m} vertices")
            return xg
    raise EmptyInterior("No point of the realization cone realizes the type exactly")


# ============================================================================
# Surjections
# ============================================================================

@dataclass(frozen=True)
class PathStep:
    """An edge (traversed forward or backward) or a ray of the image type."""

    kind: str
    index: int
    forward: bool = True


@dataclass(frozen=True)
class Surjection:
    """Vertex map tau and the linear paths each edge and ray of G is sent to."""

    vertex_map: Tuple[int, ...]
    edge_map: Tuple[Tuple[PathStep, ...], ...]
    ray_map: Tuple[Tuple[PathStep, ...], ...]

    def is_identity(self) -> bool:
        return (
            self.vertex_map == tuple(range(len(self.vertex_map)))
            and all(len(p) == 1 and p[0].kind == "edge" for p in self.edge_map)
            and all(len(p) == 1 for p in self.ray_map)
            and len(set(self.vertex_map)) == len(self.vertex_map)
        )


@dataclass(frozen=True)
class ImageData:
    """
    Image of a realization.

    ``origins[u]`` is ("vertex", V) when u is the image of vertex V and
    ("crossing", i, j) when pieces i and j of G cross at u. ``iota`` maps
    realizations of H to realizations of G (rows: G coordinates).
    """

    graph: CombinatorialOneComplex
    surjection: Surjection
    realization: EmbeddedOneComplex
    origins: Tuple[tuple, ...]
    iota: Matrix


def _path(h: EmbeddedOneComplex, piece: Piece, ray_end: bool, edge_lookup) -> Tuple[PathStep, ...]:
    on_piece = []
    for u, p in enumerate(h.positions):
        t = piece_parameter(piece, p)
        if t is not None:
            on_piece.append((t, u))
    on_piece.sort()
    steps = []
    for (_, u), (_, w) in zip(on_piece, on_piece[1:]):
        index, forward = edge_lookup[(u, w)]
        steps.append(PathStep("edge", index, forward))
    if ray_end and on_piece:
        last = on_piece[-1][1]
        j = next(
            (j for j, r in enumerate(h.graph.rays) if r.base == last and r.direction == piece.direction),
            None,
        )
        if j is not None:
            steps.append(PathStep("ray", j, True))
    return tuple(steps)


def image_data(g: TypeLike, x: Sequence, sigma: ConeComplex) -> ImageData:
    """Minimal type of the image of the realization of G at x, with its surjection."""
    g = _as_type(g)
    n = sigma.ambient_dim
    m = g.num_vertices
    realization = EmbeddedOneComplex(
        g, tuple(tuple(Fraction(c) for c in x[v * n:(v + 1) * n]) for v in range(m))
    )
    positions = realization.positions
    raw = []
    for edge in g.edges:
        a, b = edge.ends
        raw.append((positions[a], sub(positions[b], positions[a]), 1, 1))
    for ray in g.rays:
        raw.append((positions[ray.base], ray.direction, None, 1))
    image = embed_in_fan(raw, sigma, points=positions, minimize=False)
    h = minimal_structure(image.base, sigma, keep=positions)

    where = {tuple(p): u for u, p in enumerate(h.positions)}
    tau = tuple(where[tuple(p)] for p in positions)
    edge_lookup = {}
    for i, edge in enumerate(h.graph.edges):
        a, b = edge.ends
        edge_lookup[(a, b)] = (i, True)
        edge_lookup[(b, a)] = (i, False)

    pieces: List[Optional[Piece]] = []
    edge_map = []
    for edge in g.edges:
        a, b = edge.ends
        diff = sub(positions[b], positions[a])
        if is_zero(diff):
            pieces.append(None)
            edge_map.append(())
            continue
        piece = Piece(positions[a], primitive(diff), _parameter(diff, primitive(diff)))
        pieces.append(piece)
        edge_map.append(_path(h, piece, False, edge_lookup))
    ray_map = []
    for ray in g.rays:
        piece = Piece(positions[ray.base], ray.direction, None)
        pieces.append(piece)
        ray_map.append(_path(h, piece, True, edge_lookup))

    origins = []
    for u, p in enumerate(h.positions):
        sources = [v for v, t in enumerate(tau) if t == u]
        if sources:
            origins.append(("vertex", sources[0]))
            continue
        through = []
        for k, piece in enumerate(pieces):
            if piece is None:
                continue
            t = piece_parameter(piece, p)
            if t is not None and t > 0 and (piece.length is None or t < piece.length):
                through.append(k)
        origins.append(("crossing",) + tuple(through[:2]))

    mh = h.graph.num_vertices
    iota = [[Fraction(0)] * (mh * n) for _ in range(m * n)]
    for v, u in enumerate(tau):
        for k in range(n):
            iota[v * n + k][u * n + k] = Fraction(1)
    return ImageData(
        h.graph,
        Surjection(tau, tuple(edge_map), tuple(ray_map)),
        h,
        tuple(origins),
        as_matrix(iota),
    )


def image_surjection(g: TypeLike, f: Sequence, sigma: ConeComplex) -> Tuple[CombinatorialOneComplex, Surjection]:
    """The type H of the image of f and the surjection G -> H."""
    data = image_data(g, f, sigma)
    return data.graph, data.surjection


def _step_ends(h: CombinatorialOneComplex, step: PathStep) -> Tuple[int, Optional[int], IntVector]:
    if step.kind == "ray":
        r = h.rays[step.index]
        return r.base, None, r.direction
    e = h.edges[step.index]
    if step.forward:
        return e.ends[0], e.ends[1], e.direction
    return e.ends[1], e.ends[0], negate(e.direction)


def check_surjection(
    g: TypeLike,
    h: TypeLike,
    s: Surjection,
    sigma: ConeComplex,
) -> List[str]:
    """Violated surjection axioms: directions, endpoints, faces, coverage."""
    g, h = _as_type(g), _as_type(h)
    out: List[str] = []
    if len(s.vertex_map) != g.num_vertices or any(not 0 <= u < h.num_vertices for u in s.vertex_map):
        return ["vertex map does not send the vertices of G to vertices of H"]
    faces = set(sigma.face_maps)

    def walk(label, steps, start, end, direction, unbounded):
        current = start
        for k, step in enumerate(steps):
            if step.kind == "ray" and k != len(steps) - 1:
                out.append(f"{label}: a ray occurs inside the path")
                return
            a, b, d = _step_ends(h, step)
            if a != current:
                out.append(f"{label}: path is not connected at step {k}")
                return
            if tuple(d) != tuple(direction):
                out.append(f"{label}: step {k} changes direction")
            current = b
        if unbounded:
            if not steps or steps[-1].kind != "ray":
                out.append(f"{label}: path does not end with a ray")
        elif current != end:
            out.append(f"{label}: path ends at {current}, not at the image of its endpoint")

    for i, edge in enumerate(g.edges):
        a, b = edge.ends
        walk(f"edge {i}", s.edge_map[i], s.vertex_map[a], s.vertex_map[b], edge.direction, False)
    for j, ray in enumerate(g.rays):
        walk(f"ray {j}", s.ray_map[j], s.vertex_map[ray.base], None, ray.direction, True)

    for v, u in enumerate(s.vertex_map):
        c, d = h.vertex_cones[u], g.vertex_cones[v]
        if c != d and (c, d) not in faces:
            out.append(f"vertex {v}: cone of its image is not a face of its cone")

    used_edges = {st.index for p in s.edge_map + s.ray_map for st in p if st.kind == "edge"}
    used_rays = {st.index for p in s.ray_map for st in p if st.kind == "ray"}
    for i in range(len(h.edges)):
        if i not in used_edges:
            out.append(f"edge {i} of H is not covered")
    for j in range(len(h.rays)):
        if j not in used_rays:
            out.append(f"ray {j} of H is not covered")
    touched = set(s.vertex_map)
    for e in h.edges:
        touched.update(e.ends)
    for u in range(h.num_vertices):
        if u not in touched:
            out.append(f"vertex {u} of H is not covered")
    return out


# ============================================================================
# Type isomorphisms (networkx)
# ============================================================================

def type_digraph(g: TypeLike) -> nx.DiGraph:
    """Labelled digraph whose isomorphisms are the isomorphisms of types."""
    g = _as_type(g)
    graph = nx.DiGraph()
    for v, c in enumerate(g.vertex_cones):
        graph.add_node(("v", v), label=f"vertex:{c}")
    for j, r in enumerate(g.rays):
        graph.add_node(("r", j), label=f"ray:{r.cone}")
        graph.add_edge(("v", r.base), ("r", j), label=str(list(r.direction)))
    for e in g.edges:
        a, b = e.ends
        graph.add_edge(("v", a), ("v", b), label=f"{e.cone}:{list(e.direction)}")
        graph.add_edge(("v", b), ("v", a), label=f"{e.cone}:{list(negate(e.direction))}")
    return graph


_node_match = categorical_node_match("label", None)
_edge_match = categorical_edge_match("label", None)


def type_hash(g: TypeLike) -> str:
    return nx.weisfeiler_lehman_graph_hash(type_digraph(g), node_attr="label", edge_attr="label")


def type_string(g: TypeLike) -> str:
    g = _as_type(g)
    return repr((
        g.vertex_cones,
        tuple((e.ends, e.cone, e.direction) for e in g.edges),
        tuple((r.base, r.cone, r.direction) for r in g.rays),
    ))


def _matcher(g: TypeLike, h: TypeLike) -> DiGraphMatcher:
    return DiGraphMatcher(type_digraph(g), type_digraph(h), node_match=_node_match, edge_match=_edge_match)


def isomorphism(g: TypeLike, h: TypeLike) -> Optional[Dict[int, int]]:
    """A vertex bijection G -> H respecting labels and directions, or None."""
    g, h = _as_type(g), _as_type(h)
    if (g.num_vertices, len(g.edges), len(g.rays)) != (h.num_vertices, len(h.edges), len(h.rays)):
        return None
    matcher = _matcher(g, h)
    if not matcher.is_isomorphic():
        return None
    return {a[1]: b[1] for a, b in matcher.mapping.items() if a[0] == "v"}


def types_isomorphic(g: TypeLike, h: TypeLike) -> bool:
    return isomorphism(g, h) is not None


def permutation_matrix(perm: Mapping[int, int], n: int, m_from: int, m_to: int) -> Matrix:
    """Block matrix sending the position of vertex v to the slot of perm[v]."""
    rows = [[Fraction(0)] * (m_from * n) for _ in range(m_to * n)]
    for v, w in perm.items():
        for k in range(n):
            rows[w * n + k][v * n + k] = Fraction(1)
    return as_matrix(rows)


def automorphisms(g: TypeLike) -> List[Tuple[int, ...]]:
    """Vertex permutations of all automorphisms of a type, identity first."""
    g = _as_type(g)
    digraph = type_digraph(g)
    matcher = DiGraphMatcher(digraph, digraph, node_match=_node_match, edge_match=_edge_match)
    perms = set()
    for mapping in matcher.isomorphisms_iter():
        perms.add(tuple(mapping[("v", v)][1] for v in range(g.num_vertices)))
    return sorted(perms)


def automorphism_matrices(g: TypeLike, n: int) -> List[Matrix]:
    g = _as_type(g)
    m = g.num_vertices
    return [permutation_matrix(dict(enumerate(p)), n, m, m) for p in automorphisms(g)]


# ============================================================================
# Surjection enumeration
# ============================================================================

@dataclass(frozen=True)
class SurjectionType:
    """A surjection type realized over a cell of the realization cone."""

    graph: CombinatorialOneComplex
    surjection: Surjection
    realization: EmbeddedOneComplex
    subcone: Cone
    codim: int
    sample: IntVector
    iota: Matrix = ()

    @property
    def key(self) -> tuple:
        return (self.codim, type_hash(self.graph), type_string(self.graph), self.subcone.rays)


def degeneration_hyperplanes(g: TypeLike, n: int) -> List[RatVector]:
    """
    Linear forms whose zero sets bound the loci of constant image type:
    vanishing lengths, coincident isolated vertices, vertices landing on
    pieces, pieces meeting or overlapping, and the order of landings.
    Vertex walls are added by the caller.
    """
    g = _as_type(g)
    m = g.num_vertices
    specs = _piece_specs(g)
    lengths = [_length_form(m, n, s) for s in specs]
    forms: List[RatVector] = [l for l in lengths if l is not None]
    params: Dict[int, List[RatVector]] = {k: [] for k in range(len(specs))}

    touched = {v for a, b, _ in specs for v in (a, b) if v is not None}
    isolated = [v for v in range(m) if v not in touched]
    for v, w in combinations(isolated, 2):
        for k in range(n):
            forms.append(_diff_form(m, n, v, w, [1 if i == k else 0 for i in range(n)]))

    for k, (a, b, d) in enumerate(specs):
        for w in range(m):
            if w in (a, b):
                continue
            forms += [_diff_form(m, n, a, w, u) for u in integer_kernel_basis([d], n)]
            t = _param_form(m, n, a, w, d)
            params[k].append(t)

    for k, l in combinations(range(len(specs)), 2):
        p, q = specs[k], specs[l]
        a, _, d1 = p
        c, _, d2 = q
        if parallel(d1, d2):
            forms += [_diff_form(m, n, a, c, u) for u in integer_kernel_basis([d1], n)]
            lam = _parameter(d2, d1)
            c0 = _param_form(m, n, a, c, d1)
            params[k].append(c0)
            if lengths[l] is not None:
                params[k].append(add(c0, scale(lam, lengths[l])))
            a0 = _param_form(m, n, c, a, d2)
            params[l].append(a0)
            if lengths[k] is not None:
                params[l].append(add(a0, scale(lam, lengths[k])))
            continue
        forms += [_diff_form(m, n, a, c, u) for u in integer_kernel_basis([d1, d2], n)]
        s, t = _meeting_forms(m, n, p, q)
        params[k].append(s)
        params[l].append(t)

    for k, ts in params.items():
        for t in ts:
            forms.append(t)
            if lengths[k] is not None:
                forms.append(sub(t, lengths[k]))
        for t1, t2 in combinations(ts, 2):
            forms.append(sub(t1, t2))
    return forms


def _cutting_hyperplanes(forms: Sequence[Sequence], cone: Cone) -> List[IntVector]:
    """Forms restricted to the span of the cone that cut its relative interior."""
    out = set()
    for h in forms:
        proj = project_onto_span(h, cone.rays) if cone.rays else ()
        if not proj or is_zero(proj):
            continue
        p = primitive(proj)
        if not lex_positive(p):
            p = negate(p)
        values = [dot(p, r) for r in cone.rays]
        if any(v > 0 for v in values) and any(v < 0 for v in values):
            out.add(tuple(p))
    return sorted(out)


def _evaluate_cell(g, x_cone: Cone, cell: Cone, sigma: ConeComplex) -> SurjectionType:
    x = cell.relative_interior_point()
    data = image_data(g, x, sigma)
    xh = build_XG(data.graph, sigma, witness=data.realization)
    subcone = image_cone(xh.cone, data.iota, len(x))
    return SurjectionType(
        data.graph, data.surjection, data.realization, subcone,
        x_cone.dim - cell.dim, tuple(x), data.iota,
    )


def enumerate_surjections(
    g: TypeLike,
    x: XGCone,
    sigma: ConeComplex,
    budget: Optional[int] = None,
    workers: int = 4,
    include_boundary: bool = False,
    max_codim: Optional[int] = None,
) -> List[SurjectionType]:
    """
    All surjection types realized by points of X.

    X is subdivided by the degeneration hyperplanes; the image type is
    constant on the relative interior of every cell. Cells whose relative
    interior meets the boundary of X are skipped unless ``include_boundary``.

    Raises:
        BudgetExceeded: more than ``budget`` cells; ``partial`` holds the
            types found on the cells reached
    """
    g = _as_type(g)
    n = sigma.ambient_dim
    m = g.num_vertices
    forms = degeneration_hyperplanes(g, n)
    for v in range(m):
        forms += [_block(m, n, v, a) for a in _wall_forms(sigma)]
    hyperplanes = _cutting_hyperplanes(forms, x.cone)
    logger.debug(f"{len(hyperplanes)} degeneration hyperplanes cut a cone of dimension {x.dim}")

    exceeded: Optional[BudgetExceeded] = None
    try:
        complex_ = subdivide_by_hyperplanes(x.cone, hyperplanes, budget)
    except BudgetExceeded as e:
        exceeded = e
        complex_ = e.partial

    cells = [
        c for c in complex_.cones
        if (include_boundary or x.cone.contains_in_relative_interior(c.relative_interior_point()))
        and (max_codim is None or x.dim - c.dim <= max_codim)
    ]

    results: List[Tuple[tuple, SurjectionType]] = []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_cell = {executor.submit(_evaluate_cell, g, x.cone, c, sigma): c for c in cells}
        for future in as_completed(future_to_cell):
            cell = future_to_cell[future]
            try:
                results.append((cone_sort_key(cell), future.result()))
            except EmptyInterior as e:
                logger.warning(f"Cell {list(cell.rays)} has no exact image type: {e}")

    results.sort(key=lambda item: (item[1].codim, item[0]))
    found: Dict[tuple, SurjectionType] = {}
    for _, st in results:
        key = (type_hash(st.graph), st.subcone.rays)
        found.setdefault(key, st)
    types = sorted(found.values(), key=lambda st: st.key)
    logger.info(f"{len(types)} surjection types over {len(cells)} cells")

    if exceeded is not None:
        raise BudgetExceeded(str(exceeded), partial=types)
    return types


@dataclass(frozen=True)
class CommonSurjection:
    """
    Image type of a point lying in two sub-cones, reached from each type.

    ``surjections[k]`` maps the k-th type onto its image at the lifted
    point; ``violations`` is empty when both land on the image of G.
    """

    target: CombinatorialOneComplex
    lifts: Tuple[RatVector, RatVector]
    surjections: Tuple[Surjection, Surjection]
    violations: Tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.violations


def _lift(st: SurjectionType, f: Sequence, sigma: ConeComplex) -> Tuple[Optional[RatVector], List[str]]:
    """The point of X_H over f, pinned down by iota and the equations of X_H."""
    xh = build_XG(st.graph, sigma, witness=st.realization)
    rows = list(st.iota) + list(xh.cone.equations)
    rhs = [Fraction(c) for c in f] + [Fraction(0)] * len(xh.cone.equations)
    y = solve(rows, rhs)
    if y is None:
        return None, ["no unique point of X_H lies over f"]
    if not xh.contains(y):
        return y, ["the point over f lies outside X_H"]
    return y, []


def common_surjection(
    g: TypeLike,
    first: SurjectionType,
    second: SurjectionType,
    f: Sequence,
    sigma: ConeComplex,
) -> CommonSurjection:
    """
    Check that a point of two sub-cones factors through both types.

    The image type I of G at f must be the image type of H at the point
    over f, and likewise for K, each with a valid surjection onto I.

    Raises:
        InvalidInput: f does not lie in both sub-cones
    """
    g = _as_type(g)
    for label, st in (("first", first), ("second", second)):
        if not st.subcone.contains(f):
            raise InvalidInput(f"Point does not lie in the {label} sub-cone")

    target = image_data(g, f, sigma).graph
    lifts = []
    surjections = []
    violations: List[str] = []
    for label, st in (("H", first), ("K", second)):
        y, problems = _lift(st, f, sigma)
        violations += [f"{label}: {p}" for p in problems]
        if y is None:
            lifts.append(())
            surjections.append(Surjection((), (), ()))
            continue
        data = image_data(st.graph, y, sigma)
        violations += [f"{label}: {v}" for v in check_surjection(st.graph, data.graph, data.surjection, sigma)]
        if not types_isomorphic(data.graph, target):
            violations.append(f"{label}: image type differs from the image of G")
        lifts.append(y)
        surjections.append(data.surjection)
    if violations:
        logger.debug(f"Common surjection fails at {[str(c) for c in f]}: {violations[0]}")
    return CommonSurjection(target, tuple(lifts), tuple(surjections), tuple(violations))


# ============================================================================
# Equivariant subdivision
# ============================================================================

def _close_group(generators: Sequence[Sequence[Sequence]], n: int, limit: int = 5040) -> List[Matrix]:
    ident = as_matrix(identity(n))
    gens = [as_matrix(g) for g in generators]
    group = {ident}
    frontier = [ident]
    while frontier:
        current = frontier.pop()
        for h in gens:
            product = as_matrix(mat_mul(h, current))
            if product not in group:
                group.add(product)
                frontier.append(product)
        if len(group) > limit:
            raise InvalidInput(f"Generated group has more than {limit} elements")
    return sorted(group)


def act(g: Sequence[Sequence], cone: Cone) -> Cone:
    return make_cone(cone.ambient_dim, [mat_vec(g, r) for r in cone.rays])


def is_invariant(s: ConeComplex, group: Sequence[Sequence[Sequence]]) -> bool:
    keys = {c.rays for c in s.cones}
    return all({act(g, c).rays for c in s.cones} == keys for g in group)


def _is_union_of_faces(s: ConeComplex, f: Cone) -> bool:
    if any(c.rays == f.rays for c in s.cones):
        return True
    inside = [c for c in s.cones if f.contains_cone(c)]
    return is_subdivision(make_complex(f.ambient_dim, inside), make_complex(f.ambient_dim, [f])) == "proper"


def equivariant_subdivision(
    c: Cone,
    f: Sequence[Cone],
    gamma: Sequence[Sequence[Sequence]],
    method: str = "auto",
    budget: Optional[int] = None,
) -> ConeComplex:
    """
    Gamma-invariant proper subdivision of C in which every cone of F is a
    union of faces.

    Rays are inserted by stellar subdivision along their orbits when that
    stays invariant; otherwise C is cut by the Gamma-orbit of the hyperplanes
    bounding the cones of F.

    Raises:
        InvalidInput: Gamma does not preserve C or a cone of F leaves C
        NotStable: Gamma does not preserve F
    """
    if method not in ("auto", "stellar", "arrangement"):
        raise InvalidInput(f"Unknown subdivision method {method!r}")
    n = c.ambient_dim
    group = _close_group(gamma, n)
    for g in group:
        if act(g, c).rays != c.rays:
            raise InvalidInput("Group element does not preserve the cone")
    f = list(f)
    for cone in f:
        if not c.contains_cone(cone):
            raise InvalidInput(f"Cone {list(cone.rays)} does not lie in the cone being subdivided")
    keys = {cone.rays for cone in f}
    for g in group:
        if {act(g, cone).rays for cone in f} != keys:
            raise NotStable("The group does not preserve the family of cones")

    base = make_complex(n, [c])
    if not f:
        return base

    if method in ("auto", "stellar") and all(cone.dim == 1 for cone in f):
        result = base
        for ray in sorted(keys):
            if result.ray_cone_index(ray[0]) is None:
                result = stellar_subdivision(result, ray[0])
        if is_invariant(result, group):
            return result
        logger.debug("Stellar subdivision along orbits is not invariant, using the arrangement")

    forms = []
    for cone in f:
        for a in cone.halfspaces + cone.equations:
            for g in group:
                forms.append(tuple(dot(a, col) for col in zip(*g)))
    result = subdivide_by_hyperplanes(c, _cutting_hyperplanes(forms, c), budget)
    if not is_invariant(result, group):
        raise NotEquivariant("Arrangement subdivision is not invariant")
    for cone in f:
        if not _is_union_of_faces(result, cone):
            raise FaceMismatch(f"Cone {list(cone.rays)} is not a union of faces of the subdivision")
    return result


# ============================================================================
# Cone-space fragments
# ============================================================================

@dataclass(frozen=True)
class FragmentCell:
    """A cone of Y_G whose relative interior lies in the interior of X_G."""

    type_index: int
    cone: Cone
    automorphisms: Tuple[Matrix, ...]

    @property
    def smooth(self) -> bool:
        return is_smooth(self.cone)


@dataclass(frozen=True)
class UniversalFiber:
    """
    Universal family over one cell.

    ``tubes`` lists (piece index, parameter form): over the cell the tube
    vertex sits at x_start + t(x) d on that piece. ``cones`` live in the
    product of the cell's space with the fan's space.
    """

    cell: int
    tubes: Tuple[Tuple[int, RatVector], ...]
    cones: Tuple[Cone, ...]
    flatness: FlatnessReport
    integral: bool
    violations: Tuple[str, ...] = ()

    def fiber(self, xg: XGCone, x: Sequence) -> EmbeddedOneComplex:
        """Realization at x subdivided at the tube vertices."""
        e = xg.realize(x)
        g = xg.graph
        by_piece: Dict[int, List[Fraction]] = {}
        for k, form in self.tubes:
            by_piece.setdefault(k, []).append(dot(form, x))
        ne = len(g.edges)
        for k in sorted(by_piece, reverse=True):
            kind, index = ("edge", k) if k < ne else ("ray", k - ne)
            e = subdivide(e, kind, index, by_piece[k])
        return e


@dataclass(frozen=True)
class ConeSpaceFragment:
    family: Tuple[CombinatorialOneComplex, ...]
    sigma: ConeComplex
    xg: Tuple[XGCone, ...]
    subdivisions: Tuple[ConeComplex, ...]
    cells: Tuple[FragmentCell, ...]
    space: ConeSpace
    universal: Tuple[UniversalFiber, ...]
    barycentric: bool = False

    def validate(self) -> List[str]:
        out = list(self.space.validate())
        for u in self.universal:
            out += [f"cell {u.cell}: {v}" for v in u.flatness.violations + u.violations]
        return out


def _find_family_member(family, h) -> Optional[Tuple[int, Dict[int, int]]]:
    for index, member in enumerate(family):
        phi = isomorphism(member, h)
        if phi is not None:
            return index, phi
    return None


def _restricted(y: ConeComplex, subcone: Cone) -> set:
    return {c.rays for c in y.cones if subcone.contains_cone(c)}


def _universal_fiber(index: int, xg: XGCone, cell: Cone, sigma: ConeComplex) -> UniversalFiber:
    g = xg.graph
    n = sigma.ambient_dim
    m = g.num_vertices
    specs = _piece_specs(g)
    violations: List[str] = []

    tube_forms: Dict[int, Dict[tuple, RatVector]] = {}
    for face in cell.faces():
        x = face.relative_interior_point()
        if xg.cone.contains_in_relative_interior(x):
            continue
        data = image_data(g, x, sigma)
        e = xg.realize(x)
        for u, p in enumerate(data.realization.positions):
            origin = data.origins[u]
            for k, (a, b, d) in enumerate(specs):
                length = e.edge_length(k) if b is not None else None
                piece = Piece(e.positions[a], d, length)
                t = piece_parameter(piece, p)
                if t is None or t <= 0 or (length is not None and t >= length):
                    continue
                if origin[0] == "vertex":
                    form = _param_form(m, n, a, origin[1], d)
                else:
                    others = [j for j in origin[1:] if j != k]
                    if not others or parallel(d, specs[others[0]][2]):
                        continue
                    form = _meeting_forms(m, n, specs[k], specs[others[0]])[0]
                if dot(form, x) != t:
                    continue
                signature = tuple(dot(form, r) for r in cell.rays)
                tube_forms.setdefault(k, {}).setdefault(signature, form)

    tubes: List[Tuple[int, RatVector]] = []
    x0 = cell.relative_interior_point()
    for k in sorted(tube_forms):
        length = _length_form(m, n, specs[k])
        for form in tube_forms[k].values():
            if all(dot(form, r) == 0 for r in cell.rays):
                continue
            if length is not None and all(dot(form, r) == dot(length, r) for r in cell.rays):
                continue
            for r in cell.rays:
                value = dot(form, r)
                if value < 0 or (length is not None and value > dot(length, r)):
                    violations.append(f"tube on piece {k} leaves the piece over ray {list(r)}")
            tubes.append((k, form))
    tubes.sort(key=lambda item: (item[0], dot(item[1], x0)))

    def position(v, r):
        return tuple(Fraction(c) for c in r[v * n:(v + 1) * n])

    def lift(r, p):
        return tuple(r) + tuple(p)

    rays = cell.rays
    points_at = {}
    for k, (a, b, d) in enumerate(specs):
        chain = [lambda r, a=a: position(a, r)]
        for kk, form in tubes:
            if kk == k:
                chain.append(lambda r, a=a, form=form, d=d: add(position(a, r), scale(dot(form, r), d)))
        if b is not None:
            chain.append(lambda r, b=b: position(b, r))
        points_at[k] = chain

    total = m * n + n
    cones: List[Cone] = []
    try:
        for v in range(m):
            cones.append(make_cone(total, [lift(r, position(v, r)) for r in rays]))
        for k, (a, b, d) in enumerate(specs):
            chain = points_at[k]
            for p0, p1 in zip(chain, chain[1:]):
                cones.append(make_cone(total, [lift(r, p0(r)) for r in rays] + [lift(r, p1(r)) for r in rays]))
            if b is None:
                cones.append(make_cone(
                    total,
                    [lift(r, chain[-1](r)) for r in rays] + [tuple([0] * (m * n)) + tuple(d)],
                ))
    except NotStronglyConvex as e:
        violations.append(f"universal family is not a cone complex: {e}")

    projection = [tuple(1 if j == i else 0 for j in range(total)) for i in range(m * n)]
    flatness = is_flat_and_reduced(cones, make_complex(m * n, [cell]), projection)

    integral = True
    for b in cell.lattice_basis():
        for k, chain in points_at.items():
            for p in chain:
                if any(Fraction(c).denominator != 1 for c in p(b)):
                    integral = False
    return UniversalFiber(index, tuple(tubes), tuple(cones), flatness, integral, tuple(violations))


def assemble_fragment(
    family: Sequence[TypeLike],
    sigma: ConeComplex,
    subdivisions: Optional[Mapping[int, ConeComplex]] = None,
    barycentric: bool = False,
    workers: int = 4,
    budget: Optional[int] = None,
) -> ConeSpaceFragment:
    """
    Glue the subdivided realization cones of a closed family of types.

    Args:
        family: Types closed under image surjections
        sigma: The fan
        subdivisions: Optional Y_G per index of ``family``; default is the
            coarsest equivariant subdivision making every X_H a union of faces
        barycentric: Record the quotient by automorphisms on barycentric
            subdivisions
        workers: Thread pool size for per-type work
        budget: Arrangement cell budget

    Raises:
        NotClosed: an image type is missing from the family
        NotEquivariant: a given subdivision is not invariant under Aut_G
        FaceMismatch: a subdivision does not restrict to the subdivision of
            a boundary type, or is not a proper subdivision of X_G
    """
    raw = [_as_type(g) for g in family]
    n = sigma.ambient_dim
    built = [build_XG(g, sigma) for g in raw]
    order = sorted(range(len(raw)), key=lambda i: (built[i].dim, type_hash(raw[i]), type_string(raw[i])))
    types = tuple(raw[i] for i in order)
    xgs = tuple(built[i] for i in order)
    given = {order.index(i): y for i, y in (subdivisions or {}).items()}

    boundary: Dict[int, List[Tuple[SurjectionType, int, Dict[int, int]]]] = {}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_index = {
            executor.submit(enumerate_surjections, g, x, sigma, budget, 1, True): i
            for i, (g, x) in enumerate(zip(types, xgs))
        }
        for future in as_completed(future_to_index):
            i = future_to_index[future]
            entries = []
            for st in future.result():
                found = _find_family_member(types, st.graph)
                if found is None:
                    raise NotClosed(f"Image type of a realization of type {i} is missing from the family")
                entries.append((st, found[0], found[1]))
            boundary[i] = entries

    def embedding(st: SurjectionType, h: int, phi: Dict[int, int]) -> Matrix:
        return as_matrix(mat_mul(st.iota, permutation_matrix(phi, n, types[h].num_vertices, st.graph.num_vertices)))

    autos = [automorphism_matrices(g, n) for g in types]
    coarse: List[ConeComplex] = []
    for i, (g, x) in enumerate(zip(types, xgs)):
        dim = x.cone.ambient_dim
        if i in given:
            y = given[i]
            if is_subdivision(y, make_complex(dim, [x.cone])) != "proper":
                raise FaceMismatch(f"Subdivision of type {i} is not a proper subdivision of its cone")
            if not is_invariant(y, autos[i]):
                raise NotEquivariant(f"Subdivision of type {i} is not invariant under its automorphisms")
        else:
            targets: Dict[tuple, Cone] = {}
            for st, h, phi in boundary[i]:
                if st.subcone.rays == x.cone.rays:
                    continue
                if not st.subcone.is_face_of(x.cone):
                    pieces = [st.subcone]
                elif h < i:
                    matrix = embedding(st, h, phi)
                    pieces = [make_cone(dim, [mat_vec(matrix, r) for r in c.rays]) for c in coarse[h].cones]
                else:
                    continue
                for cone in pieces:
                    if cone.is_face_of(x.cone):
                        continue
                    for a in autos[i]:
                        moved = act(a, cone)
                        targets[moved.rays] = moved
            y = equivariant_subdivision(x.cone, list(targets.values()), autos[i], budget=budget)
        coarse.append(y)

    # lower types are glued along faces of X_G, so Y_G must restrict to Y_H there
    for i in range(len(types)):
        for st, h, phi in boundary[i]:
            if h == i or not st.subcone.is_face_of(xgs[i].cone):
                continue
            matrix = embedding(st, h, phi)
            expected = {make_cone(xgs[i].cone.ambient_dim, [mat_vec(matrix, r) for r in c.rays]).rays
                        for c in coarse[h].cones}
            if _restricted(coarse[i], st.subcone) != expected:
                raise FaceMismatch(f"Subdivision of type {i} does not restrict to that of type {h}")
    ys = [barycentric_subdivision(y) for y in coarse] if barycentric else coarse

    cells: List[FragmentCell] = []
    representatives: Dict[int, List[int]] = {}
    for i, (x, y) in enumerate(zip(xgs, ys)):
        seen = set()
        for cone in y.cones:
            if cone.rays in seen or not x.cone.contains_in_relative_interior(cone.relative_interior_point()):
                continue
            orbit = {act(g, cone).rays for g in autos[i]}
            seen |= orbit
            stabilizer = tuple(g for g in autos[i] if act(g, cone).rays == cone.rays)
            representatives.setdefault(i, []).append(len(cells))
            cells.append(FragmentCell(i, cone, stabilizer))

    morphisms = _fragment_morphisms(types, xgs, autos, cells, representatives, sigma)
    space = ConeSpace(
        tuple(c.cone for c in cells),
        tuple(morphisms),
        tuple(c.automorphisms for c in cells),
    )

    universal: List[Optional[UniversalFiber]] = [None] * len(cells)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_cell = {
            executor.submit(_universal_fiber, k, xgs[c.type_index], c.cone, sigma): k
            for k, c in enumerate(cells)
        }
        for future in as_completed(future_to_cell):
            universal[future_to_cell[future]] = future.result()

    logger.info(f"Assembled fragment: {len(types)} types, {len(cells)} cells, {len(morphisms)} morphisms")
    return ConeSpaceFragment(types, sigma, xgs, tuple(ys), tuple(cells), space, tuple(universal), barycentric)


def _fragment_morphisms(types, xgs, autos, cells, representatives, sigma) -> List[FaceMorphism]:
    n = sigma.ambient_dim

    def signature(m: FaceMorphism) -> tuple:
        return (m.child, m.parent, tuple(primitive(m.apply(r)) for r in cells[m.child].cone.rays))

    known: Dict[tuple, FaceMorphism] = {}
    for parent, cell in enumerate(cells):
        i = cell.type_index
        x = xgs[i]
        dim = x.cone.ambient_dim
        for face in cell.cone.faces():
            point = face.relative_interior_point()
            if x.cone.contains_in_relative_interior(point):
                h, base = i, as_matrix(identity(dim))
            else:
                data = image_data(types[i], point, sigma)
                found = _find_family_member(types, data.graph)
                if found is None:
                    raise NotClosed(f"Face {list(face.rays)} of cell {parent} has a type outside the family")
                h, phi = found
                base = as_matrix(mat_mul(data.iota, permutation_matrix(phi, n, types[h].num_vertices,
                                                                       data.graph.num_vertices)))
            match = None
            for child in representatives.get(h, []):
                for a in autos[h]:
                    matrix = as_matrix(mat_mul(base, a))
                    if make_cone(dim, [mat_vec(matrix, r) for r in cells[child].cone.rays]).rays == face.rays:
                        match = (child, matrix)
                        break
                if match:
                    break
            if match is None:
                raise FaceMismatch(f"Face {list(face.rays)} of cell {parent} is not the image of a cell")
            child, matrix = match
            for a in cells[child].automorphisms:
                m = FaceMorphism(child, parent, as_matrix(mat_mul(matrix, a)))
                known.setdefault(signature(m), m)

    changed = True
    while changed:
        changed = False
        for f in list(known.values()):
            for g in [m for m in list(known.values()) if m.child == f.parent]:
                composite = FaceMorphism(f.child, g.parent, as_matrix(mat_mul(g.matrix, f.matrix)))
                key = signature(composite)
                if key not in known:
                    known[key] = composite
                    changed = True
    return [known[k] for k in sorted(known)]


def refine_fragments(a: ConeSpaceFragment, b: ConeSpaceFragment, workers: int = 4,
                     budget: Optional[int] = None) -> ConeSpaceFragment:
    """
    Fragment refining both inputs, type by type via common refinement.

    Raises:
        SupportMismatch: the fragments are over different families or cones
    """
    if len(a.family) != len(b.family) or a.sigma.canonical() != b.sigma.canonical():
        raise SupportMismatch("Fragments are over different graph families")
    for g, h, x, y in zip(a.family, b.family, a.xg, b.xg):
        if not types_isomorphic(g, h) or type_string(g) != type_string(h) or x.cone.rays != y.cone.rays:
            raise SupportMismatch("Fragments have different realization cones")
    refined = {i: common_refinement(ya, yb) for i, (ya, yb) in enumerate(zip(a.subdivisions, b.subdivisions))}
    return assemble_fragment(a.family, a.sigma, refined, False, workers, budget)


# ============================================================================
# Standard families
# ============================================================================

def vertex_family(sigma: ConeComplex) -> List[CombinatorialOneComplex]:
    """One single-vertex type per cone of the fan."""
    return [CombinatorialOneComplex((i,)) for i in range(len(sigma.cones))]


def close_family(
    family: Sequence[TypeLike],
    sigma: ConeComplex,
    rounds: int = 8,
    workers: int = 4,
    budget: Optional[int] = None,
) -> List[CombinatorialOneComplex]:
    """Add image types of all realizations until the family is closed."""
    types = []
    for g in family:
        g = _as_type(g)
        if _find_family_member(types, g) is None:
            types.append(g)
    frontier = list(types)
    for _ in range(rounds):
        new = []
        for g in frontier:
            for st in enumerate_surjections(g, build_XG(g, sigma), sigma, budget, workers, True):
                if _find_family_member(types + new, st.graph) is None:
                    new.append(st.graph)
        if not new:
            return types
        types += new
        frontier = new
    logger.warning(f"Family not closed after {rounds} rounds")
    return types


def dual_plane_family(
    sigma: ConeComplex,
    grid: int = 2,
    rounds: int = 8,
    workers: int = 4,
    budget: Optional[int] = None,
) -> List[CombinatorialOneComplex]:
    """All types of tropical lines (rays e1, e2, -e1-e2) embedded in a planar fan."""
    if sigma.ambient_dim != 2:
        raise InvalidInput("Tropical lines need a planar fan")
    sampled = []
    for i in range(-grid, grid + 1):
        for j in range(-grid, grid + 1):
            v = (Fraction(i), Fraction(j))
            pieces = [(v, d, None, 1) for d in ((1, 0), (0, 1), (-1, -1))]
            sampled.append(embed_in_fan(pieces, sigma).base)
    return close_family(sampled, sigma, rounds, workers, budget)


def realize_fragment(fragment: ConeSpaceFragment) -> ConeComplex:
    """
    Project every cell to the position of the unique vertex of valence at
    least 3 of its type.

    Raises:
        InvalidInput: a type does not have exactly one such vertex
    """
    n = fragment.sigma.ambient_dim
    images = []
    for cell in fragment.cells:
        g = fragment.family[cell.type_index]
        incidences = g.incidences()
        hubs = [v for v in range(g.num_vertices) if len(incidences[v]) >= 3]
        if len(hubs) != 1:
            raise InvalidInput(f"Type {cell.type_index} has {len(hubs)} vertices of valence at least 3")
        projection = [
            tuple(1 if j == hubs[0] * n + k else 0 for j in range(n * g.num_vertices)) for k in range(n)
        ]
        images.append(image_cone(cell.cone, projection, n))
    return make_complex(n, images)
