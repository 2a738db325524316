"""
Exact Integer and Rational Linear Algebra

Small dense helpers used by every polyhedral routine:
- rational parsing and formatting ("p/q" strings)
- primitive integer vectors, gcd / lcm of coefficient lists
- rank, nullspace, determinants and solves over QQ (sympy DomainMatrix)
- Hermite normal form and integer kernel bases
- lattice indices (gcd of maximal minors)

No floating point value ever enters these functions.

Author: tropex developers
License: MIT
"""

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ..core.errors import DimensionMismatch

Rational = Union[int, Fraction]
IntVector = Tuple[int, ...]
RatVector = Tuple[Fraction, ...]


# ============================================================================
# Scalars
# ============================================================================

def to_fraction(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(value, bool):
        raise DimensionMismatch(f"Not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise DimensionMismatch(f"Not a rational number: {value!r}") from e
    raise DimensionMismatch(f"Not a rational number: {value!r}")


def format_rational(value: Rational) -> str:
    """Render a rational as "p/q", or "p" when integral."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def gcd_list(values: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(v)) for v in values), 0)


def lcm_list(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        v = abs(int(v))
        if v:
            out = out * v // gcd(out, v)
    return out


# ============================================================================
# Vectors
# ============================================================================

def as_vector(values: Sequence, n: Optional[int] = None) -> RatVector:
    """Convert a sequence to a tuple of Fractions, checking its length."""
    try:
        vec = tuple(to_fraction(v) for v in values)
    except TypeError as e:
        raise DimensionMismatch(f"Not a vector: {values!r}") from e
    if n is not None and len(vec) != n:
        raise DimensionMismatch(f"Expected a vector of length {n}, got {len(vec)}")
    return vec


def primitive(vec: Sequence[Rational]) -> IntVector:
    """Scale a rational vector to the primitive integer vector on its ray.

    The sign is kept; the zero vector maps to the zero vector.
    """
    fracs = [Fraction(v) for v in vec]
    den = lcm_list(f.denominator for f in fracs)
    ints = [int(f * den) for f in fracs]
    g = gcd_list(ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def is_zero(vec: Sequence[Rational]) -> bool:
    return all(v == 0 for v in vec)


def dot(u: Sequence[Rational], v: Sequence[Rational]):
    return sum((a * b for a, b in zip(u, v)), 0)


def add(u: Sequence[Rational], v: Sequence[Rational]) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Rational], v: Sequence[Rational]) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Rational, v: Sequence[Rational]) -> tuple:
    return tuple(c * a for a in v)


def negate(v: Sequence[Rational]) -> tuple:
    return tuple(-a for a in v)


def vector_sum(vectors: Iterable[Sequence[Rational]], n: int) -> tuple:
    out: tuple = tuple(0 for _ in range(n))
    for v in vectors:
        out = add(out, v)
    return out


def mat_vec(matrix: Sequence[Sequence[Rational]], vec: Sequence[Rational]) -> tuple:
    return tuple(dot(row, vec) for row in matrix)


def mat_mul(a: Sequence[Sequence[Rational]], b: Sequence[Sequence[Rational]]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def identity(n: int) -> Tuple[IntVector, ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def lex_positive(vec: Sequence[Rational]) -> bool:
    """True when the first nonzero coordinate is positive."""
    for v in vec:
        if v != 0:
            return v > 0
    return False


def parallel(u: Sequence[Rational], v: Sequence[Rational]) -> bool:
    """True when u and v are linearly dependent."""
    return rank([u, v]) <= 1


def same_direction(u: Sequence[Rational], v: Sequence[Rational]) -> bool:
    """True when u and v are positive multiples of each other."""
    return not is_zero(u) and primitive(u) == primitive(v)


# ============================================================================
# Matrices (sympy DomainMatrix over QQ)
# ============================================================================

def _qq(value: Rational) -> Tuple[int, int]:
    q = Fraction(value)
    return (q.numerator, q.denominator)


def _from_qq(element) -> Fraction:
    return Fraction(int(element.numerator), int(element.denominator))


def _domain_matrix(rows: Sequence[Sequence[Rational]]) -> DomainMatrix:
    return DomainMatrix.from_list([[_qq(x) for x in r] for r in rows], QQ)


def _to_rows(matrix: DomainMatrix) -> List[RatVector]:
    return [tuple(_from_qq(x) for x in row) for row in matrix.to_list()]


def rank(rows: Sequence[Sequence[Rational]]) -> int:
    rows = [r for r in rows if not is_zero(r)]
    if not rows:
        return 0
    return int(_domain_matrix(rows).rank())


def independent_rows(rows: Sequence[Sequence[Rational]]) -> List[tuple]:
    """Greedy maximal linearly independent subfamily, in input order."""
    chosen: List[tuple] = []
    for r in rows:
        if rank(chosen + [tuple(r)]) > len(chosen):
            chosen.append(tuple(r))
    return chosen


def nullspace(rows: Sequence[Sequence[Rational]], n: int) -> List[IntVector]:
    """Primitive integer basis of {x : r.x = 0 for every row r} over Q."""
    rows = [r for r in rows if not is_zero(r)]
    if not rows:
        return list(identity(n))
    return [primitive(v) for v in _to_rows(_domain_matrix(rows).nullspace())]


def det(rows: Sequence[Sequence[Rational]]) -> Fraction:
    if not rows:
        return Fraction(1)
    return _from_qq(_domain_matrix(rows).det())


def solve(rows: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> Optional[RatVector]:
    """The solution of rows * x = rhs when it exists and is unique, else None."""
    if not rows:
        return None
    n = len(rows[0])
    augmented = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    reduced, pivots = _domain_matrix(augmented).rref()
    if n in pivots or len(pivots) != n:
        return None
    table = _to_rows(reduced)
    return tuple(table[i][n] for i in range(n))


def project_onto_span(vec: Sequence[Rational], basis: Sequence[Sequence[Rational]]) -> RatVector:
    """Orthogonal projection of vec onto the span of basis."""
    basis = independent_rows(basis)
    if not basis:
        return tuple(Fraction(0) for _ in vec)
    gram = [[dot(u, v) for v in basis] for u in basis]
    coeffs = solve(gram, [dot(u, vec) for u in basis])
    return tuple(Fraction(x) for x in vector_sum((scale(c, b) for c, b in zip(coeffs, basis)), len(vec)))


# ============================================================================
# Integer lattices
# ============================================================================

def hermite_normal_form(rows: Sequence[Sequence[int]]) -> List[IntVector]:
    """Row Hermite normal form of an integer matrix.

    Zero rows are dropped; pivots are positive and the entries above each
    pivot are reduced into [0, pivot).
    """
    m = [list(int(x) for x in r) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            rest = [i for i in range(r + 1, len(m)) if m[i][c] != 0]
            if not rest:
                break
            for i in rest:
                q = m[i][c] // m[r][c]
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
    return [tuple(row) for row in m[:r] if any(row)]


def integer_rows(rows: Sequence[Sequence[Rational]]) -> List[IntVector]:
    """Clear denominators row by row (keeps each row's ray, not its length)."""
    out = []
    for r in rows:
        den = lcm_list(Fraction(x).denominator for x in r)
        out.append(tuple(int(Fraction(x) * den) for x in r))
    return out


def integer_kernel_basis(rows: Sequence[Sequence[Rational]], n: int) -> List[IntVector]:
    """Canonical (Hermite) basis of the lattice {x in Z^n : r.x = 0 for all rows r}."""
    rows = [r for r in integer_rows(rows) if any(r)]
    if not rows:
        return list(identity(n))
    m = len(rows)
    augmented = [
        tuple(rows[i][j] for i in range(m)) + tuple(1 if k == j else 0 for k in range(n))
        for j in range(n)
    ]
    hnf = hermite_normal_form(augmented)
    return [tuple(h[m:]) for h in hnf if not any(h[:m])]


def saturated_basis(vectors: Sequence[Sequence[Rational]], n: int) -> List[IntVector]:
    """Basis of span(vectors) intersected with Z^n."""
    if rank(vectors) == 0:
        return []
    return integer_kernel_basis(integer_kernel_basis(vectors, n), n)


def lattice_index(basis: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by basis inside its saturation.

    The basis is first reduced to Hermite form; the index is the gcd of its
    maximal minors.
    """
    hnf = hermite_normal_form(integer_rows(basis))
    if not hnf:
        return 1
    k = len(hnf)
    n = len(hnf[0])
    minors = []
    for cols in combinations(range(n), k):
        minors.append(int(det([[row[c] for c in cols] for row in hnf])))
    return gcd_list(minors) or 1


def restrict_lattice(basis: Sequence[Sequence[int]], equations: Sequence[Sequence[Rational]]) -> List[IntVector]:
    """Sublattice of the lattice spanned by basis cut out by linear equations."""
    basis = hermite_normal_form(integer_rows(basis))
    if not basis:
        return []
    k = len(basis)
    rows = [tuple(dot(a, b) for b in basis) for a in equations]
    coeffs = integer_kernel_basis(rows, k)
    n = len(basis[0])
    out = []
    for c in coeffs:
        out.append(tuple(sum(c[i] * basis[i][j] for i in range(k)) for j in range(n)))
    return hermite_normal_form(out)
