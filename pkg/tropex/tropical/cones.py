"""
Rational Polyhedral Cones and Cone Complexes

Exact kernel for cones with integral structure:
- double description conversion between generators and inequalities
- face lattices, smoothness and multiplicities
- cone complexes closed under faces, stars and common refinements
- subdivision tests (proper / partial), stellar, barycentric and
  hyperplane-arrangement subdivisions
- cone spaces with explicit face morphisms and automorphisms

Vectors are tuples of ints or Fractions; rays are always primitive
integer vectors.

Author: tropex developers
License: MIT
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..core.errors import (
    AmbientMismatch,
    BudgetExceeded,
    DimensionMismatch,
    NotStronglyConvex,
    RayNotInComplex,
)
from ..core.logging import get_logger
from .lattice import (
    IntVector,
    as_vector,
    dot,
    hermite_normal_form,
    identity,
    integer_kernel_basis,
    integer_rows,
    lattice_index,
    mat_mul,
    mat_vec,
    negate,
    primitive,
    project_onto_span,
    rank,
    restrict_lattice,
    saturated_basis,
    scale,
    sub,
    vector_sum,
)

logger = get_logger(__name__)

Matrix = Tuple[Tuple[Fraction, ...], ...]


# ============================================================================
# Double description
# ============================================================================

def extreme_rays(
    inequalities: Sequence[Sequence],
    equations: Sequence[Sequence],
    n: int,
) -> Tuple[List[IntVector], List[IntVector]]:
    """
    Generators of {x : a.x >= 0 for a in inequalities, b.x = 0 for b in equations}.

    Incremental double description starting from the whole space.

    Returns:
        (lineality, rays): a basis of the lineality space and the extreme
        rays modulo lineality, all primitive integer vectors.
    """
    constraints: List[IntVector] = [primitive(a) for a in inequalities]
    for b in equations:
        constraints.append(primitive(b))
        constraints.append(primitive(negate(b)))

    lineality: List[IntVector] = list(identity(n))
    rays: List[IntVector] = []
    processed: List[IntVector] = []

    for a in constraints:
        if not any(a):
            continue
        pivot_index = next((i for i, l in enumerate(lineality) if dot(a, l) != 0), None)

        if pivot_index is not None:
            pivot = lineality[pivot_index]
            if dot(a, pivot) < 0:
                pivot = negate(pivot)
            ap = dot(a, pivot)

            def project(x):
                return primitive(sub(x, scale(Fraction(dot(a, x), ap), pivot)))

            lineality = [project(l) for i, l in enumerate(lineality) if i != pivot_index]
            rays = [project(r) for r in rays] + [primitive(pivot)]
        else:
            values = {r: dot(a, r) for r in rays}
            positive = [r for r in rays if values[r] > 0]
            negative = [r for r in rays if values[r] < 0]
            kept = [r for r in rays if values[r] >= 0]
            zero_sets = {
                r: frozenset(i for i, c in enumerate(processed) if dot(c, r) == 0)
                for r in rays
            }
            for p in positive:
                for q in negative:
                    common = zero_sets[p] & zero_sets[q]
                    if any(common <= zero_sets[r] for r in rays if r != p and r != q):
                        continue
                    kept.append(primitive(sub(scale(values[p], q), scale(values[q], p))))
            rays = list(dict.fromkeys(kept))
        processed.append(a)

    return sorted(lineality), sorted(set(rays))


# ============================================================================
# Cones
# ============================================================================

@dataclass(frozen=True)
class Cone:
    """
    A strongly convex rational polyhedral cone.

    ``halfspaces`` are the primitive facet normals (orthogonally projected
    into the span of the cone), ``equations`` a Hermite basis of the integer
    linear forms vanishing on the cone. ``lattice`` optionally replaces the
    saturated lattice span(cone) cap Z^n by a sublattice of finite index.
    """

    ambient_dim: int
    rays: Tuple[IntVector, ...]
    halfspaces: Tuple[IntVector, ...]
    equations: Tuple[IntVector, ...]
    dim: int
    lattice: Optional[Tuple[IntVector, ...]] = None

    @property
    def key(self) -> tuple:
        return (self.ambient_dim, self.rays, self.lattice)

    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) >= 0 for a in self.halfspaces) and all(
            dot(b, x) == 0 for b in self.equations
        )

    def contains_in_relative_interior(self, x: Sequence) -> bool:
        return all(dot(a, x) > 0 for a in self.halfspaces) and all(
            dot(b, x) == 0 for b in self.equations
        )

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(r) for r in other.rays)

    def relative_interior_point(self) -> IntVector:
        """Sum of the rays; the origin for the zero cone."""
        return tuple(int(x) for x in vector_sum(self.rays, self.ambient_dim))

    def faces(self) -> Tuple["Cone", ...]:
        """All faces including the cone itself and the zero cone."""
        return _faces(self)

    def is_face_of(self, other: "Cone") -> bool:
        if self.ambient_dim != other.ambient_dim or not other.contains_cone(self):
            return False
        x = self.relative_interior_point()
        tight = [a for a in other.halfspaces if dot(a, x) == 0]
        rays = [r for r in other.rays if all(dot(a, r) == 0 for a in tight)]
        return make_cone(self.ambient_dim, rays).rays == self.rays

    def intersect(self, other: "Cone") -> "Cone":
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(
                f"Cannot intersect cones in dimensions {self.ambient_dim} and {other.ambient_dim}"
            )
        return cone_from_inequalities(
            self.ambient_dim,
            self.halfspaces + other.halfspaces,
            self.equations + other.equations,
        )

    def lattice_basis(self) -> Tuple[IntVector, ...]:
        """Hermite basis of the lattice of the cone."""
        if self.lattice is not None:
            return self.lattice
        return tuple(hermite_normal_form(saturated_basis(self.rays, self.ambient_dim)))

    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def multiplicity(self) -> Optional[int]:
        """Index of the ray lattice in the cone lattice; None unless simplicial."""
        if not self.is_simplicial():
            return None
        if self.dim == 0:
            return 1
        return lattice_index(self.rays) // lattice_index(self.lattice_basis())


def _check_dimension(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DimensionMismatch(f"Ambient dimension must be a non-negative integer, got {n!r}")
    return n


def make_cone(
    ambient_dim: int,
    generators: Iterable[Sequence],
    lattice: Optional[Iterable[Sequence]] = None,
) -> Cone:
    """
    Build a cone from generators (V-description).

    Args:
        ambient_dim: Dimension n of the ambient space
        generators: Rational vectors of length n; zero vectors are ignored
        lattice: Optional generators of a sublattice of span(cone) cap Z^n

    Raises:
        DimensionMismatch: A generator has the wrong length or is not rational
        NotStronglyConvex: The generators span a cone containing a line
    """
    n = _check_dimension(ambient_dim)
    gens = tuple(sorted({primitive(as_vector(g, n)) for g in generators} - {tuple([0] * n)}))
    lat = None
    if lattice is not None:
        lat = tuple(hermite_normal_form(integer_rows([as_vector(v, n) for v in lattice])))
    return _make_cone(n, gens, lat)


@lru_cache(maxsize=65536)
def _make_cone(n: int, gens: Tuple[IntVector, ...], lattice: Optional[Tuple[IntVector, ...]]) -> Cone:
    if not gens:
        return Cone(n, (), (), identity(n), 0, None)

    dual_lineality, dual_rays = extreme_rays(gens, [], n)
    if rank(dual_lineality + dual_rays) < n:
        raise NotStronglyConvex(f"Generators {list(gens)} span a cone containing a line")

    equations = tuple(integer_kernel_basis(gens, n))
    halfspaces = tuple(sorted({primitive(project_onto_span(a, gens)) for a in dual_rays}))
    dim = n - len(equations)
    rays = tuple(
        g for g in gens
        if rank([a for a in halfspaces if dot(a, g) == 0] + list(equations)) == n - 1
    )

    if lattice is not None:
        if any(dot(b, v) != 0 for b in equations for v in lattice) or rank(lattice) != dim:
            raise DimensionMismatch("Cone lattice must be a full-rank sublattice of the span of the cone")
        if lattice == tuple(hermite_normal_form(saturated_basis(rays, n))):
            lattice = None

    return Cone(n, rays, halfspaces, equations, dim, lattice)


def cone_from_inequalities(
    ambient_dim: int,
    inequalities: Sequence[Sequence],
    equations: Sequence[Sequence] = (),
) -> Cone:
    """Cone {x : a.x >= 0, b.x = 0}; raises NotStronglyConvex if it has lineality."""
    n = _check_dimension(ambient_dim)
    lineality, rays = extreme_rays(inequalities, equations, n)
    if lineality:
        raise NotStronglyConvex("Inequality system has a nontrivial lineality space")
    return make_cone(n, rays)


def image_cone(cone: Cone, matrix: Sequence[Sequence], target_dim: int) -> Cone:
    """Image of a cone under a linear map given by its rows."""
    return make_cone(target_dim, [mat_vec(matrix, r) for r in cone.rays])


@lru_cache(maxsize=16384)
def _faces(cone: Cone) -> Tuple[Cone, ...]:
    n = cone.ambient_dim
    seen = {frozenset(cone.rays)}
    frontier = [frozenset(cone.rays)]
    while frontier:
        current = frontier.pop()
        for a in cone.halfspaces:
            tight = frozenset(r for r in current if dot(a, r) == 0)
            if tight != current and tight not in seen:
                seen.add(tight)
                frontier.append(tight)
    seen.add(frozenset())
    out = []
    for rays in seen:
        lattice = None
        face = make_cone(n, rays)
        if cone.lattice is not None:
            lattice = tuple(restrict_lattice(cone.lattice, face.equations))
            face = make_cone(n, rays, lattice)
        out.append(face)
    return tuple(sorted(out, key=cone_sort_key))


def cone_sort_key(cone: Cone) -> tuple:
    return (cone.dim, cone.rays, cone.lattice or ())


def is_smooth(c: Cone) -> bool:
    """True iff the rays extend to a basis of the lattice of the cone."""
    return c.multiplicity() == 1


# ============================================================================
# Cone complexes
# ============================================================================

@dataclass(frozen=True)
class ConeComplex:
    """
    A finite set of cones in one ambient space, closed under faces.

    ``cones`` is sorted by (dimension, rays); ``face_maps`` lists every
    (child, parent) pair of indices with child a proper face of parent.
    ``ray_names`` attaches divisor labels to rays.
    """

    ambient_dim: int
    cones: Tuple[Cone, ...]
    face_maps: Tuple[Tuple[int, int], ...]
    ray_names: Tuple[Tuple[IntVector, str], ...] = ()

    @cached_property
    def _index(self) -> Dict[tuple, int]:
        return {c.key: i for i, c in enumerate(self.cones)}

    @cached_property
    def _ray_index(self) -> Dict[IntVector, int]:
        return {c.rays[0]: i for i, c in enumerate(self.cones) if c.dim == 1}

    @property
    def names(self) -> Dict[IntVector, str]:
        return dict(self.ray_names)

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cones), default=-1)

    def index_of(self, cone: Cone) -> Optional[int]:
        index = self._index.get(cone.key)
        if index is None and cone.lattice is None:
            for i, c in enumerate(self.cones):
                if c.rays == cone.rays and c.ambient_dim == cone.ambient_dim:
                    return i
        return index

    def ray_cone_index(self, ray: Sequence) -> Optional[int]:
        return self._ray_index.get(primitive(ray))

    def rays(self) -> List[IntVector]:
        return [c.rays[0] for c in self.cones if c.dim == 1]

    def maximal_cones(self) -> List[int]:
        parents = {child for child, _ in self.face_maps}
        return [i for i in range(len(self.cones)) if i not in parents]

    def cones_containing(self, index: int) -> List[int]:
        """Indices of the cones having cone ``index`` as a face (itself included)."""
        return [index] + sorted(p for c, p in self.face_maps if c == index)

    def minimal_cone(self, x: Sequence) -> Optional[int]:
        """Index of the smallest cone containing x, or None outside the support."""
        for i, c in enumerate(self.cones):
            if c.contains(x):
                return i
        return None

    def support_contains(self, x: Sequence) -> bool:
        return self.minimal_cone(x) is not None

    def validate(self) -> List[str]:
        """Violations of the common-face property between maximal cones."""
        violations = []
        maximal = self.maximal_cones()
        for a in range(len(maximal)):
            for b in range(a + 1, len(maximal)):
                ca, cb = self.cones[maximal[a]], self.cones[maximal[b]]
                meet = ca.intersect(cb)
                if not (meet.is_face_of(ca) and meet.is_face_of(cb)):
                    violations.append(
                        f"cones {maximal[a]} and {maximal[b]} meet in {list(meet.rays)}, not a common face"
                    )
        return violations

    @property
    def regime(self) -> str:
        """'single_face' when cones pairwise meet in a common face, else 'invalid'.

        For cones embedded in one vector space a union of faces that is
        convex is a single face, so the union-of-faces regime only occurs
        on an abstract ConeSpace.
        """
        return "single_face" if not self.validate() else "invalid"

    def canonical(self) -> tuple:
        return (self.ambient_dim, tuple(c.key for c in self.cones))


def make_complex(
    ambient_dim: int,
    cones: Iterable[Union[Cone, Sequence[Sequence]]],
    ray_names: Optional[Dict[Sequence, str]] = None,
) -> ConeComplex:
    """
    Close a list of cones (or generator lists) under faces.

    Raises:
        AmbientMismatch: A cone lives in another ambient space
    """
    n = _check_dimension(ambient_dim)
    collected: Dict[tuple, Cone] = {}
    for item in cones:
        cone = item if isinstance(item, Cone) else make_cone(n, item)
        if cone.ambient_dim != n:
            raise AmbientMismatch(f"Cone of dimension {cone.ambient_dim} in a complex of dimension {n}")
        for face in cone.faces():
            collected[face.key] = face

    ordered = tuple(sorted(collected.values(), key=cone_sort_key))
    index = {c.key: i for i, c in enumerate(ordered)}
    face_maps = set()
    for j, parent in enumerate(ordered):
        for face in parent.faces():
            if face.key != parent.key:
                face_maps.add((index[face.key], j))

    ray_set = {c.rays[0] for c in ordered if c.dim == 1}
    names = tuple(sorted(
        (primitive(as_vector(r, n)), str(name)) for r, name in (ray_names or {}).items()
        if primitive(as_vector(r, n)) in ray_set
    ))
    return ConeComplex(n, ordered, tuple(sorted(face_maps)), names)


def common_refinement(a: ConeComplex, b: ConeComplex) -> ConeComplex:
    """All pairwise intersections of maximal cones of A and B, with their faces."""
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(
            f"Complexes live in dimensions {a.ambient_dim} and {b.ambient_dim}"
        )
    pieces = []
    for i in a.maximal_cones():
        for j in b.maximal_cones():
            pieces.append(a.cones[i].intersect(b.cones[j]))
    names = {**b.names, **a.names}
    refined = make_complex(a.ambient_dim, pieces, names)
    logger.debug(f"Common refinement: {len(refined.cones)} cones from {len(pieces)} intersections")
    return refined


# ============================================================================
# Stars
# ============================================================================

def quotient_map(cone: Cone) -> Tuple[IntVector, ...]:
    """Rows of the projection N -> N / (N cap span(cone))."""
    return tuple(integer_kernel_basis(cone.rays, cone.ambient_dim)) if cone.rays else identity(cone.ambient_dim)


def star(s: ConeComplex, cone_index: int) -> ConeComplex:
    """
    Quotient complex of all cones containing a given cone by its span.

    Raises:
        RayNotInComplex: cone_index is not an index of the complex
    """
    if not isinstance(cone_index, int) or not 0 <= cone_index < len(s.cones):
        raise RayNotInComplex(f"No cone with index {cone_index!r}")
    sigma = s.cones[cone_index]
    q = quotient_map(sigma)
    m = len(q)
    images = [image_cone(s.cones[j], q, m) for j in s.cones_containing(cone_index)]
    names = {}
    for ray, name in sorted(s.ray_names):
        if not sigma.contains(ray):
            image = primitive(mat_vec(q, ray))
            names.setdefault(image, name)
    return make_complex(m, images, names)


def star_of_ray(s: ConeComplex, rho: Union[int, str, Sequence]) -> ConeComplex:
    """
    Star of a ray given by its position in ``s.rays()``, its name or its vector.

    Raises:
        RayNotInComplex: rho does not designate a ray of the complex
    """
    rays = s.rays()
    vector = None
    if isinstance(rho, str):
        by_name = {name: ray for ray, name in s.ray_names}
        vector = by_name.get(rho)
    elif isinstance(rho, int) and not isinstance(rho, bool):
        if 0 <= rho < len(rays):
            vector = rays[rho]
    else:
        try:
            vector = primitive(as_vector(rho, s.ambient_dim))
        except DimensionMismatch:
            vector = None
    index = s.ray_cone_index(vector) if vector is not None else None
    if index is None:
        raise RayNotInComplex(f"{rho!r} is not a ray of the complex")
    return star(s, index)


# ============================================================================
# Subdivisions
# ============================================================================

def _pseudomanifold_covers(sigma: Cone, cells: List[Cone]) -> bool:
    """True when full-dimensional cells inside sigma cover it.

    Cells must pairwise meet in faces. Every interior wall has to be shared
    by exactly two cells, every wall in a facet of sigma by exactly one.
    """
    if sigma.dim == 0:
        return True
    top = [c for c in cells if c.dim == sigma.dim]
    if not top:
        return False
    counts: Dict[tuple, int] = {}
    walls: Dict[tuple, Cone] = {}
    for cell in top:
        for face in cell.faces():
            if face.dim == cell.dim - 1:
                counts[face.key] = counts.get(face.key, 0) + 1
                walls[face.key] = face
    for key, count in counts.items():
        wall = walls[key]
        on_boundary = any(all(dot(a, r) == 0 for r in wall.rays) for a in sigma.halfspaces)
        if count != (1 if on_boundary else 2):
            return False
    return True


def is_subdivision(d: ConeComplex, s: ConeComplex) -> str:
    """
    Decide whether D subdivides S.

    Returns:
        "proper" when |D| = |S|, "partial" when |D| is a proper subset of |S|
        and "no" otherwise. Both positive answers require every cone of D to
        lie in a cone of S with the induced (saturated) lattice.
    """
    if d.ambient_dim != s.ambient_dim or d.validate():
        return "no"

    for i in d.maximal_cones():
        delta = d.cones[i]
        hosts = [c for c in s.cones if c.contains_cone(delta)]
        if not hosts:
            logger.debug(f"Cone {list(delta.rays)} lies in no cone of the target")
            return "no"
        host = hosts[0]
        expected = tuple(restrict_lattice(host.lattice_basis(), delta.equations))
        if expected != delta.lattice_basis():
            logger.debug(f"Cone {list(delta.rays)} does not carry the induced lattice")
            return "no"

    if not d.cones:
        return "proper" if not s.cones else "partial"

    for j in s.maximal_cones():
        sigma = s.cones[j]
        inside = [c for c in d.cones if sigma.contains_cone(c)]
        if not _pseudomanifold_covers(sigma, inside):
            return "partial"
    return "proper"


def stellar_subdivision(s: ConeComplex, v: Sequence, name: Optional[str] = None) -> ConeComplex:
    """
    Star subdivision of S at the ray through v.

    Raises:
        RayNotInComplex: v is zero or outside the support
    """
    v = primitive(as_vector(v, s.ambient_dim))
    tau_index = s.minimal_cone(v) if any(v) else None
    if tau_index is None:
        raise RayNotInComplex(f"{list(v)} is not a nonzero point of the support")
    tau = s.cones[tau_index]
    containing = set(s.cones_containing(tau_index))
    tau_rays = set(tau.rays)

    cones: List[Cone] = []
    for j in s.maximal_cones():
        sigma = s.cones[j]
        if j not in containing:
            cones.append(sigma)
            continue
        for face in sigma.faces():
            if not tau_rays <= set(face.rays):
                cones.append(make_cone(s.ambient_dim, list(face.rays) + [v]))
    for j in containing:
        for face in s.cones[j].faces():
            if not tau_rays <= set(face.rays):
                cones.append(face)
    names = s.names
    if name is not None:
        names[v] = name
    return make_complex(s.ambient_dim, cones, names)


def barycentric_subdivision(s: ConeComplex) -> ConeComplex:
    """Stellar subdivisions at the ray sums of all cones, largest dimension first."""
    result = s
    for cone in sorted(s.cones, key=lambda c: (-c.dim, c.rays)):
        if cone.dim >= 2:
            result = stellar_subdivision(result, cone.relative_interior_point())
    return result


def _cut(cone: Cone, h: Sequence, sign: int) -> Cone:
    return cone_from_inequalities(
        cone.ambient_dim,
        cone.halfspaces + (tuple(sign * x for x in h),),
        cone.equations,
    )


def subdivide_by_hyperplanes(
    cone: Cone,
    hyperplanes: Sequence[Sequence],
    budget: Optional[int] = None,
) -> ConeComplex:
    """
    Subdivide a cone by a hyperplane arrangement through the origin.

    Raises:
        BudgetExceeded: More than ``budget`` cells; ``partial`` holds the
            complex reached so far
    """
    cells = [cone]
    for h in hyperplanes:
        split: List[Cone] = []
        for cell in cells:
            values = [dot(h, r) for r in cell.rays]
            if all(x >= 0 for x in values) or all(x <= 0 for x in values):
                split.append(cell)
            else:
                split.append(_cut(cell, h, 1))
                split.append(_cut(cell, h, -1))
        cells = split
        if budget is not None and len(cells) > budget:
            raise BudgetExceeded(
                f"Arrangement exceeded {budget} cells",
                partial=make_complex(cone.ambient_dim, cells),
            )
    logger.debug(f"Arrangement of {len(hyperplanes)} hyperplanes gave {len(cells)} cells")
    return make_complex(cone.ambient_dim, cells)


@dataclass(frozen=True)
class FlatnessReport:
    flat: bool
    reduced: bool
    violations: Tuple[str, ...] = ()


def is_flat_and_reduced(
    source: Iterable[Cone],
    target: ConeComplex,
    projection: Sequence[Sequence],
) -> FlatnessReport:
    """
    Check that a linear map sends every source cone onto a cone of the target
    (flat) with saturated image lattice (reduced).
    """
    flat, reduced = True, True
    violations = []
    m = target.ambient_dim
    for cone in source:
        image = image_cone(cone, projection, m)
        host = next((c for c in target.cones if c.rays == image.rays), None)
        if host is None:
            flat = False
            violations.append(f"cone {list(cone.rays)} maps onto {list(image.rays)}, not a cone of the target")
            continue
        image_lattice = tuple(hermite_normal_form(integer_rows(
            [mat_vec(projection, b) for b in cone.lattice_basis()]
        )))
        if image_lattice != host.lattice_basis():
            reduced = False
            violations.append(f"cone {list(cone.rays)} has non-saturated lattice image")
    return FlatnessReport(flat, reduced, tuple(violations))


# ============================================================================
# Cone spaces
# ============================================================================

@dataclass(frozen=True)
class FaceMorphism:
    """Linear embedding of cone ``child`` onto a face of cone ``parent``.

    ``matrix`` has one row per parent coordinate and one column per child
    coordinate.
    """

    child: int
    parent: int
    matrix: Matrix

    def apply(self, v: Sequence) -> tuple:
        return mat_vec(self.matrix, v)


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class ConeSpace:
    """
    Cones glued along explicit face morphisms, possibly several per pair,
    with an automorphism group attached to every cone.
    """

    cones: Tuple[Cone, ...]
    morphisms: Tuple[FaceMorphism, ...]
    automorphisms: Tuple[Tuple[Matrix, ...], ...] = field(default=())

    def _signature(self, m: FaceMorphism) -> tuple:
        return tuple(primitive(m.apply(r)) for r in self.cones[m.child].rays)

    def _class(self, m: FaceMorphism) -> frozenset:
        autos = self.automorphisms[m.child] if self.automorphisms else ()
        sigs = {self._signature(m)}
        for g in autos:
            sigs.add(self._signature(FaceMorphism(m.child, m.parent, as_matrix(mat_mul(m.matrix, g)))))
        return frozenset(sigs)

    def validate(self) -> List[str]:
        violations = []
        by_pair: Dict[Tuple[int, int], List[FaceMorphism]] = {}
        for m in self.morphisms:
            by_pair.setdefault((m.child, m.parent), []).append(m)

        for i, cone in enumerate(self.cones):
            ids = by_pair.get((i, i), [])
            if not any(self._signature(m) == cone.rays for m in ids):
                violations.append(f"cone {i} has no identity morphism")
            if self.automorphisms:
                for g in self.automorphisms[i]:
                    if sorted(primitive(mat_vec(g, r)) for r in cone.rays) != list(cone.rays):
                        violations.append(f"automorphism of cone {i} does not preserve it")

        signatures = {(m.child, m.parent, self._signature(m)) for m in self.morphisms}
        for f in self.morphisms:
            for g in _morphisms_from(self.morphisms, f.parent):
                composite = FaceMorphism(f.child, g.parent, as_matrix(mat_mul(g.matrix, f.matrix)))
                if (f.child, g.parent, self._signature(composite)) not in signatures:
                    violations.append(f"composite {f.child}->{f.parent}->{g.parent} is missing")

        for c, cone in enumerate(self.cones):
            incoming = [m for m in self.morphisms if m.parent == c]
            for m in incoming:
                image = make_cone(cone.ambient_dim, [m.apply(r) for r in self.cones[m.child].rays])
                if not image.is_face_of(cone) or image.dim != self.cones[m.child].dim:
                    violations.append(f"morphism {m.child}->{c} is not a face embedding")
            for face in cone.faces():
                classes = set()
                for m in incoming:
                    image = make_cone(cone.ambient_dim, [m.apply(r) for r in self.cones[m.child].rays])
                    if image.rays == face.rays:
                        classes.add((m.child, self._class(m)))
                if len(classes) != 1:
                    violations.append(
                        f"face {list(face.rays)} of cone {c} is the image of {len(classes)} morphism classes"
                    )
        return violations

    @property
    def regime(self) -> str:
        """'union_of_faces' when some cone is glued to another along several faces."""
        classes: Dict[Tuple[int, int], set] = {}
        for m in self.morphisms:
            if m.child != m.parent:
                classes.setdefault((m.child, m.parent), set()).add(self._class(m))
        return "union_of_faces" if any(len(v) > 1 for v in classes.values()) else "single_face"


def _morphisms_from(morphisms: Iterable[FaceMorphism], child: int) -> List[FaceMorphism]:
    return [m for m in morphisms if m.child == child]


def cone_space_from_complex(s: ConeComplex) -> ConeSpace:
    """The cone space of a complex: inclusions as morphisms, trivial automorphisms."""
    n = s.ambient_dim
    ident = as_matrix(identity(n))
    morphisms = [FaceMorphism(i, i, ident) for i in range(len(s.cones))]
    morphisms += [FaceMorphism(c, p, ident) for c, p in s.face_maps]
    return ConeSpace(s.cones, tuple(morphisms), tuple(() for _ in s.cones))
