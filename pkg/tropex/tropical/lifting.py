"""
Lifted Point Configurations

Lower hulls of planar lattice point sets lifted by rational heights, and
the balanced dual 1-complex of the induced regular subdivision.

Author: tropex developers
License: MIT
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.logging import get_logger
from .lattice import IntVector, RatVector, gcd_list, primitive, rank, solve, sub

logger = get_logger(__name__)

# (start, direction, length or None, weight) as consumed by graphs.embed_in_fan
DualPiece = Tuple[RatVector, Tuple, Optional[Fraction], int]


@dataclass(frozen=True)
class LowerCell:
    """A 2-dimensional lower face: z = gradient . p + offset on ``points``."""

    points: Tuple[int, ...]
    gradient: Tuple[Fraction, Fraction]
    offset: Fraction


def lattice_length(p: Sequence[int], q: Sequence[int]) -> int:
    """Number of lattice steps on the segment [p, q]."""
    return gcd_list(sub(q, p))


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[Sequence]) -> List[tuple]:
    """Vertices of the convex hull in counter-clockwise order (monotone chain)."""
    pts = sorted({tuple(p) for p in points})
    if len(pts) <= 2:
        return pts

    lower: List[tuple] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[tuple] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def is_planar(points: Sequence[Sequence]) -> bool:
    """True when the points affinely span the plane."""
    if len(points) < 3:
        return False
    base = points[0]
    return rank([sub(p, base) for p in points[1:]]) == 2


def lower_hull_cells(points: Sequence[Sequence[int]], heights: Sequence) -> List[LowerCell]:
    """
    Maximal cells of the regular subdivision induced by ``heights``.

    Every affinely independent triple spans a candidate plane; the plane is
    a lower face when no lifted point lies below it, and its cell collects
    all points on it. Requires planar points.
    """
    heights = [Fraction(h) for h in heights]
    cells: Dict[Tuple[int, ...], LowerCell] = {}
    for i, j, k in combinations(range(len(points)), 3):
        rows = [[points[t][0], points[t][1], 1] for t in (i, j, k)]
        coeffs = solve(rows, [heights[i], heights[j], heights[k]])
        if coeffs is None:
            continue
        a, b, c = coeffs
        values = [h - (a * p[0] + b * p[1] + c) for p, h in zip(points, heights)]
        if any(v < 0 for v in values):
            continue
        members = tuple(t for t, v in enumerate(values) if v == 0)
        if members not in cells:
            cells[members] = LowerCell(members, (a, b), c)
    out = sorted(cells.values(), key=lambda cell: cell.points)
    logger.debug(f"Lower hull of {len(points)} points: {len(out)} cells")
    return out


def cell_edges(points: Sequence[Sequence[int]], cell: LowerCell) -> List[Tuple[tuple, tuple]]:
    """Boundary edges (p, q) of a cell, counter-clockwise."""
    hull = convex_hull([points[t] for t in cell.points])
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def dual_pieces(
    points: Sequence[Sequence[int]],
    heights: Sequence,
    cells: Optional[Sequence[LowerCell]] = None,
) -> Tuple[List[DualPiece], List[RatVector]]:
    """
    Min-plus dual of a planar regular subdivision.

    A cell with lower face z = a.p + c dualizes to the vertex -a, where
    exactly its terms attain min(h_i + <p_i, x>). An interior edge shared by
    two cells joins their vertices; a boundary edge becomes a ray along its
    inward normal. Weights are lattice lengths of the dual edges.

    Returns:
        (pieces, vertices)
    """
    if cells is None:
        cells = lower_hull_cells(points, heights)
    vertex_of = {cell.points: tuple(-g for g in cell.gradient) for cell in cells}

    owners: Dict[frozenset, List[Tuple[LowerCell, tuple, tuple]]] = {}
    for cell in cells:
        for p, q in cell_edges(points, cell):
            owners.setdefault(frozenset((p, q)), []).append((cell, p, q))

    pieces: List[DualPiece] = []
    for key in sorted(owners, key=lambda k: sorted(k)):
        entries = owners[key]
        cell, p, q = entries[0]
        weight = lattice_length(p, q)
        start = vertex_of[cell.points]
        if len(entries) == 1:
            d = sub(q, p)
            pieces.append((start, primitive((-d[1], d[0])), None, weight))
        else:
            end = vertex_of[entries[1][0].points]
            pieces.append((start, sub(end, start), Fraction(1), weight))
    return pieces, sorted(set(vertex_of.values()))


def collinear_pieces(points: Sequence[Sequence[int]], heights: Sequence) -> List[DualPiece]:
    """
    Dual of a 1-dimensional Newton polytope: one line per lower-hull segment.

    Each line {x : <q - p, x> = h_p - h_q} is a vertex at its point closest
    to the origin with two opposite rays, weighted by the lattice length of
    the segment.
    """
    heights = [Fraction(h) for h in heights]
    base = points[0]
    u: IntVector = primitive(next(sub(p, base) for p in points if tuple(p) != tuple(base)))
    k = next(i for i, x in enumerate(u) if x != 0)
    param = [Fraction(p[k] - base[k], u[k]) for p in points]

    best: Dict[Fraction, Fraction] = {}
    for s, h in zip(param, heights):
        if s not in best or h < best[s]:
            best[s] = h
    lifted = sorted(best.items())

    chain: List[Tuple[Fraction, Fraction]] = []
    for s, h in lifted:
        while len(chain) >= 2:
            (s0, h0), (s1, h1) = chain[-2], chain[-1]
            if (h1 - h0) * (s - s0) >= (h - h0) * (s1 - s0):
                chain.pop()
            else:
                break
        chain.append((s, h))

    pieces: List[DualPiece] = []
    normal = (-u[1], u[0])
    for (s0, h0), (s1, h1) in zip(chain, chain[1:]):
        diff = tuple((s1 - s0) * x for x in u)
        norm = diff[0] * diff[0] + diff[1] * diff[1]
        x0 = tuple(Fraction(h0 - h1) / norm * x for x in diff)
        weight = int(s1 - s0)
        pieces.append((x0, normal, None, weight))
        pieces.append((x0, (-normal[0], -normal[1]), None, weight))
    return pieces
