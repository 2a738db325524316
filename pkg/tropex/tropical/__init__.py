# ============================================================================
# tropex/tropical/__init__.py
# ---------------------------
# Polyhedral and tropical kernels.
# ============================================================================

"""
Exact polyhedral computations: cones and cone complexes, embedded
1-complexes, tropical flat limits, expansions, moduli cones of graph
embeddings and secondary fans.
"""

from .cones import Cone, ConeComplex, ConeSpace, make_complex, make_cone
from .graphs import (
    CombinatorialOneComplex,
    EmbeddedOneComplex,
    WeightedOneComplex,
    embedded_complex,
    validate_embedded,
)
from .troplim import TropicalPolynomial, limit_expansion, projective_plane_fan, tropicalize_hypersurface

__all__ = [
    'Cone',
    'ConeComplex',
    'ConeSpace',
    'make_cone',
    'make_complex',
    'CombinatorialOneComplex',
    'EmbeddedOneComplex',
    'WeightedOneComplex',
    'embedded_complex',
    'validate_embedded',
    'TropicalPolynomial',
    'tropicalize_hypersurface',
    'limit_expansion',
    'projective_plane_fan',
]
