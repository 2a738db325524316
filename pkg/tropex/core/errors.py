"""
Tropex Error Hierarchy

Every failure the library can report deliberately derives from TropexError.
Each class carries the process exit code the CLI maps it to:
  2 - validation failure (bad input, violated precondition)
  1 - anything else (internal error)

Author: tropex developers
License: MIT
"""

from typing import Any, List, Optional


class TropexError(Exception):
    """Base class for all tropex errors."""

    exit_code: int = 1


class ValidationError(TropexError, ValueError):
    """A precondition or invariant of an operation was violated."""

    exit_code = 2


class InputError(TropexError):
    """An input file could not be read, parsed or schema-validated."""

    exit_code = 2


# ============================================================================
# cones
# ============================================================================

class NotStronglyConvex(ValidationError):
    """The generators span a cone that contains a line."""


class DimensionMismatch(ValidationError):
    """A vector does not have the ambient dimension."""


class AmbientMismatch(ValidationError):
    """Two complexes live in different ambient spaces."""


class RayNotInComplex(ValidationError):
    """The requested ray (or cone) is not part of the complex."""


# ============================================================================
# graphs
# ============================================================================

class InvalidInput(ValidationError):
    """An embedded 1-complex failed validation."""

    def __init__(self, message: str, violations: Optional[List[Any]] = None):
        super().__init__(message)
        self.violations = list(violations or [])


class NotConeOverGraph(ValidationError):
    """A cone complex is not the cone over an embedded 1-complex."""


# ============================================================================
# troplim
# ============================================================================

class UnsupportedDimension(ValidationError):
    """Hypersurface tropicalization is only available in dimension 2."""


class DegenerateInput(ValidationError):
    """A polynomial with fewer than two terms has an empty break locus."""


class NonparallelRay(ValidationError):
    """An unbounded direction is not a ray of the fan."""


# ============================================================================
# expansion
# ============================================================================

class NotARefinement(ValidationError):
    """A complex is not a refinement by collinear 2-valent vertices."""


class ShapeMismatch(ValidationError):
    """Component sets of a dual complex and a subscheme shadow differ."""


# ============================================================================
# moduli
# ============================================================================

class EmptyInterior(ValidationError):
    """No point of the realization cone embeds with exactly the given type."""


class BudgetExceeded(TropexError):
    """An enumeration exceeded its cell budget.

    ``partial`` holds the results certified before the budget ran out.
    """

    exit_code = 2

    def __init__(self, message: str, partial: Any = None):
        super().__init__(message)
        self.partial = partial


class NotStable(ValidationError):
    """A subcomplex is not stable under the group action."""


class NotClosed(ValidationError):
    """A graph family is not closed under image surjections."""


class NotEquivariant(ValidationError):
    """A subdivision is not invariant under the automorphism group."""


class FaceMismatch(ValidationError):
    """A face of a cell is not identified with a cell of the fragment."""


class SupportMismatch(ValidationError):
    """Two fragments are not built over the same graph family."""


# ============================================================================
# secondary
# ============================================================================

class BadIndex(ValidationError):
    """Unsupported dilation factor or height vector of the wrong length."""


class NotRegular(ValidationError):
    """A cell list is not a regular subdivision."""


class NotInterior(ValidationError):
    """Heights do not lie in the interior of the secondary cone."""
