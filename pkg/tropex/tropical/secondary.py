"""
Secondary Fans of Dilated Triangles

Regular subdivisions of the lattice points of d times the standard
triangle, their secondary cones, the balanced tropical curves dual to
them, and the enumeration of the full secondary fan for small d.

Heights are stored modulo affine functions by fixing the three corners at
height zero, so secondary cones live in R^m with m = #points - 3.

Author: tropex developers
License: MIT
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.errors import BadIndex, BudgetExceeded, NotInterior, NotRegular, NotStronglyConvex
from ..core.logging import get_logger
from .cones import Cone, ConeComplex, cone_from_inequalities, make_cone, subdivide_by_hyperplanes
from .graphs import EmbeddedOneComplex, WeightedOneComplex, embed_in_fan
from .lattice import (
    IntVector,
    RatVector,
    det,
    lex_positive,
    mat_vec,
    negate,
    nullspace,
    primitive,
    rank,
    solve,
    sub,
)
from .lifting import dual_pieces, lower_hull_cells
from .moduli import build_XG, type_hash
from .troplim import projective_plane_fan

logger = get_logger(__name__)

SUPPORTED_DEGREES = (1, 2, 3)
ENUMERABLE_DEGREES = (1, 2)


def lattice_points(d: int) -> List[Tuple[int, int]]:
    """Lattice points (i, j) with i, j >= 0 and i + j <= d, sorted."""
    _check_degree(d, SUPPORTED_DEGREES)
    return sorted((i, j) for i in range(d + 1) for j in range(d + 1 - i))


def _check_degree(d, allowed):
    if isinstance(d, bool) or not isinstance(d, int) or d not in allowed:
        raise BadIndex(f"Degree must be one of {list(allowed)}, got {d!r}")


def _corners(d: int) -> Tuple[Tuple[int, int], ...]:
    return ((0, 0), (d, 0), (0, d))


def free_points(d: int) -> List[Tuple[int, int]]:
    """Non-corner lattice points; their heights are the coordinates of height space."""
    corners = set(_corners(d))
    return [p for p in lattice_points(d) if p not in corners]


def normalize_heights(d: int, heights: Sequence) -> RatVector:
    """Representative of heights modulo affine functions with zero corner heights."""
    points = lattice_points(d)
    if len(heights) != len(points):
        raise BadIndex(f"Expected {len(points)} heights for d={d}, got {len(heights)}")
    h = {p: Fraction(x) for p, x in zip(points, heights)}
    h0, hx, hy = (h[c] for c in _corners(d))
    return tuple(
        h[(i, j)] - (h0 + (hx - h0) * Fraction(i, d) + (hy - h0) * Fraction(j, d))
        for i, j in points
    )


def lift_heights(d: int, free: Sequence) -> RatVector:
    """Full height vector from coordinates on the non-corner points."""
    values = dict(zip(free_points(d), (Fraction(x) for x in free)))
    return tuple(values.get(p, Fraction(0)) for p in lattice_points(d))


def _free_part(d: int, heights: Sequence) -> RatVector:
    corners = set(_corners(d))
    return tuple(x for p, x in zip(lattice_points(d), heights) if p not in corners)


# ============================================================================
# Regular subdivisions
# ============================================================================

@dataclass(frozen=True)
class RegularSubdivision:
    """Cells are sorted tuples of indices into ``points``."""

    d: int
    points: Tuple[Tuple[int, int], ...]
    cells: Tuple[Tuple[int, ...], ...]
    witness_heights: RatVector

    @property
    def is_triangulation(self) -> bool:
        return all(len(c) == 3 for c in self.cells)

    @property
    def is_fine(self) -> bool:
        used = {i for c in self.cells for i in c}
        return used == set(range(len(self.points)))

    @property
    def is_unimodular(self) -> bool:
        return self.is_triangulation and all(
            abs(det([sub(self.points[b], self.points[a]), sub(self.points[c], self.points[a])])) == 1
            for a, b, c in self.cells
        )


def subdivision_from_heights(d: int, heights: Sequence) -> RegularSubdivision:
    """
    Lower-hull subdivision induced by heights on the lattice points of dΔ.

    Raises:
        BadIndex: d not in {1, 2, 3} or the wrong number of heights
    """
    _check_degree(d, SUPPORTED_DEGREES)
    points = tuple(lattice_points(d))
    h = normalize_heights(d, heights)
    cells = tuple(sorted(c.points for c in lower_hull_cells(points, h)))
    return RegularSubdivision(d, points, cells, h)


def _affine_basis(points: Sequence, cell: Sequence[int]) -> Optional[Tuple[int, int, int]]:
    for triple in combinations(cell, 3):
        a, b, c = (points[t] for t in triple)
        if rank([sub(b, a), sub(c, a)]) == 2:
            return triple
    return None


def _plane_form(points: Sequence, basis: Tuple[int, int, int], p: Sequence) -> Dict[int, Fraction]:
    """Coefficients c with sum c_t h_t = h(p) - (affine interpolation of h over the basis at p)."""
    a, b, c = basis
    rows = [[points[a][0], points[b][0], points[c][0]],
            [points[a][1], points[b][1], points[c][1]],
            [1, 1, 1]]
    lam = solve(rows, [p[0], p[1], 1])
    return {a: -lam[0], b: -lam[1], c: -lam[2]}


@dataclass(frozen=True)
class SecondaryCone:
    subdivision: RegularSubdivision
    cone: Cone

    def contains_heights(self, heights: Sequence) -> bool:
        d = self.subdivision.d
        return self.cone.contains(_free_part(d, normalize_heights(d, heights)))

    def interior_heights(self, heights: Sequence) -> bool:
        d = self.subdivision.d
        return self.cone.contains_in_relative_interior(_free_part(d, normalize_heights(d, heights)))


def secondary_cone(s: RegularSubdivision) -> SecondaryCone:
    """
    Closed cone of heights inducing s or a coarsening of it.

    For every cell, its points lie on one affine plane and every other
    point lies on or above it.

    Raises:
        NotRegular: the cells are not the subdivision of any interior height
    """
    _check_degree(s.d, SUPPORTED_DEGREES)
    points = s.points
    corner_index = {points.index(c) for c in _corners(s.d)}
    free_index = [i for i in range(len(points)) if i not in corner_index]
    inequalities: List[IntVector] = []
    equations: List[IntVector] = []
    for cell in s.cells:
        if any(not 0 <= t < len(points) for t in cell):
            raise NotRegular(f"Cell {list(cell)} refers to points outside the configuration")
        basis = _affine_basis(points, cell)
        if basis is None:
            raise NotRegular(f"Cell {list(cell)} is not two-dimensional")
        for t, p in enumerate(points):
            if t in basis:
                continue
            coeffs = _plane_form(points, basis, p)
            coeffs[t] = coeffs.get(t, Fraction(0)) + 1
            form = primitive([coeffs.get(i, Fraction(0)) for i in free_index])
            if all(x == 0 for x in form):
                continue
            (equations if t in cell else inequalities).append(form)

    m = len(free_index)
    try:
        cone = cone_from_inequalities(m, inequalities, equations)
    except NotStronglyConvex as e:
        raise NotRegular(f"Height cone of the cells has lineality: {e}") from e
    witness = lift_heights(s.d, cone.relative_interior_point())
    if subdivision_from_heights(s.d, witness).cells != tuple(sorted(s.cells)):
        raise NotRegular("No height vector induces exactly these cells")
    return SecondaryCone(s, cone)


def dual_curve(
    s: RegularSubdivision,
    heights: Sequence,
    sigma: Optional[ConeComplex] = None,
) -> WeightedOneComplex:
    """
    Balanced tropical curve dual to a regular subdivision.

    Raises:
        NotInterior: the heights do not induce s
    """
    if sigma is None:
        sigma = projective_plane_fan()
    h = normalize_heights(s.d, heights)
    if not secondary_cone(s).cone.contains_in_relative_interior(_free_part(s.d, h)):
        raise NotInterior("Heights do not lie in the interior of the secondary cone")
    pieces, _ = dual_pieces(s.points, h)
    return embed_in_fan(pieces, sigma)


# ============================================================================
# Secondary fan enumeration
# ============================================================================

def circuit_forms(d: int) -> List[IntVector]:
    """Affine dependencies of minimal point subsets, as forms on height space."""
    points = lattice_points(d)
    free = free_points(d)
    out = set()
    for size in (3, 4):
        for subset in combinations(range(len(points)), size):
            rows = [[points[t][0] for t in subset], [points[t][1] for t in subset], [1] * size]
            kernel = nullspace(rows, size)
            if len(kernel) != 1 or any(x == 0 for x in kernel[0]):
                continue
            coeffs = {points[t]: x for t, x in zip(subset, kernel[0])}
            form = primitive([coeffs.get(p, 0) for p in free])
            if all(x == 0 for x in form):
                continue
            out.add(form if lex_positive(form) else negate(form))
    return sorted(out)


@dataclass(frozen=True)
class SecondaryFanReport:
    d: int
    cones: Tuple[SecondaryCone, ...]
    covers: bool
    pairwise_faces: bool

    @property
    def maximal_cones(self) -> int:
        return len(self.cones)

    @property
    def triangulations(self) -> int:
        return sum(1 for c in self.cones if c.subdivision.is_triangulation)

    @property
    def all_triangulations(self) -> bool:
        return self.triangulations == self.maximal_cones

    @property
    def unimodular(self) -> int:
        return sum(1 for c in self.cones if c.subdivision.is_unimodular)

    @property
    def fine(self) -> int:
        return sum(1 for c in self.cones if c.subdivision.is_fine)

    @property
    def unimodular_are_fine(self) -> bool:
        """Unimodular triangulations are exactly the fine ones; the rest use fewer points."""
        return all(c.subdivision.is_unimodular == c.subdivision.is_fine for c in self.cones)


def _orthants(m: int) -> List[Cone]:
    out = []
    for signs in product((1, -1), repeat=m):
        out.append(make_cone(m, [tuple(s if k == i else 0 for k in range(m)) for i, s in enumerate(signs)]))
    return out


def _chamber_cone(d: int, cell: Cone) -> SecondaryCone:
    return secondary_cone(subdivision_from_heights(d, lift_heights(d, cell.relative_interior_point())))


def enumerate_secondary_fan(d: int, budget: Optional[int] = None, workers: int = 4) -> SecondaryFanReport:
    """
    All maximal secondary cones, found by cutting every orthant of height
    space with the circuit hyperplanes and reading off the subdivision of
    each full-dimensional chamber.

    Raises:
        BadIndex: d not in {1, 2}
        BudgetExceeded: more than ``budget`` chambers; ``partial`` holds the
            cones found so far
    """
    _check_degree(d, ENUMERABLE_DEGREES)
    m = len(free_points(d))
    forms = circuit_forms(d)
    logger.info(f"Secondary fan of {d}Δ: {m} free heights, {len(forms)} circuit hyperplanes")

    chambers: List[Cone] = []
    exceeded = None
    for orthant in _orthants(m):
        remaining = None if budget is None else max(budget - len(chambers), 0)
        try:
            complex_ = subdivide_by_hyperplanes(orthant, forms, remaining)
        except BudgetExceeded as e:
            exceeded = e
            complex_ = e.partial
        chambers += [c for c in complex_.cones if c.dim == m]
        if exceeded is not None:
            break

    found: Dict[tuple, SecondaryCone] = {}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_chamber = {executor.submit(_chamber_cone, d, c): c for c in chambers}
        for future in as_completed(future_to_chamber):
            cone = future.result()
            found.setdefault(cone.subdivision.cells, cone)
    cones = tuple(found[k] for k in sorted(found))

    if exceeded is not None:
        raise BudgetExceeded(str(exceeded), partial=list(cones))

    covers = all(any(c.cone.contains_cone(ch) for c in cones) for ch in chambers)
    pairwise = True
    for a, b in combinations(cones, 2):
        common = a.cone.intersect(b.cone)
        if common.dim >= m or not (common.is_face_of(a.cone) and common.is_face_of(b.cone)):
            logger.warning(f"Secondary cones {a.subdivision.cells} and {b.subdivision.cells} overlap")
            pairwise = False
    report = SecondaryFanReport(d, cones, covers, pairwise)
    logger.info(
        f"{report.maximal_cones} maximal cones, {report.triangulations} triangulations, "
        f"{report.unimodular} unimodular, {report.fine} fine"
    )
    return report


# ============================================================================
# Weight forgetting
# ============================================================================

def forget_weights(w: WeightedOneComplex) -> EmbeddedOneComplex:
    return w.base


def _vertex_map(s: RegularSubdivision) -> List[List[Fraction]]:
    """Linear map from free heights to the stacked dual vertices -gradient(cell)."""
    free = free_points(s.d)
    rows: List[List[Fraction]] = []
    for cell in s.cells:
        a, b, c = _affine_basis(s.points, cell)
        mat = [[s.points[t][0], s.points[t][1], 1] for t in (a, b, c)]
        columns = []
        for p in free:
            h = [Fraction(1) if s.points[t] == p else Fraction(0) for t in (a, b, c)]
            coeffs = solve(mat, h)
            columns.append((-coeffs[0], -coeffs[1]))
        rows.append([col[0] for col in columns])
        rows.append([col[1] for col in columns])
    return rows


@dataclass(frozen=True)
class ForgettingEntry:
    cells: Tuple[Tuple[int, ...], ...]
    fine: bool
    image_dim: int
    injective: bool
    type_hash: str
    realized: bool


@dataclass(frozen=True)
class WeightForgettingReport:
    entries: Tuple[ForgettingEntry, ...]

    @property
    def isomorphic_on_fine(self) -> bool:
        """True iff every fine maximal cone maps injectively onto its image."""
        return all(e.injective for e in self.entries if e.fine)


def weight_forgetting_check(
    d: int,
    sigma: Optional[ConeComplex] = None,
    budget: Optional[int] = None,
    workers: int = 4,
) -> WeightForgettingReport:
    """
    Map every maximal secondary cone to dual vertex positions and record
    whether its interior maps isomorphically, together with the type of the
    forgotten curve in the fan and whether that type's realization cone
    contains it.
    """
    if sigma is None:
        sigma = projective_plane_fan()
    report = enumerate_secondary_fan(d, budget, workers)
    entries = []
    for sc in report.cones:
        s = sc.subdivision
        vertex_map = _vertex_map(s)
        images = [mat_vec(vertex_map, r) for r in sc.cone.rays] if vertex_map else []
        image_dim = rank(images) if images else 0
        heights = lift_heights(d, sc.cone.relative_interior_point())
        curve = forget_weights(dual_curve(s, heights, sigma))
        xg = build_XG(curve.graph, sigma, witness=curve)
        entries.append(ForgettingEntry(
            s.cells, s.is_fine, image_dim, image_dim == sc.cone.dim,
            type_hash(curve.graph), xg.contains(xg.point_of(curve)),
        ))
    return WeightForgettingReport(tuple(entries))
