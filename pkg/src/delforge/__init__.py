"""delforge: exact-arithmetic certificates for lattice Delaunay polytopes.

Everything is computed over the rationals.  A verified certificate is a
proof object: the empty-sphere check enumerates every lattice point of the
closed circumscribed ball, the extremality check exhibits the full space of
inscribed quadrics, and the symmetry report's generators can be replayed
against the distance matrix.
"""

from .constructions import (
    DelaunayInstance,
    construct_cross_polytope,
    construct_half_cube,
    construct_pn,
    l_n_lattice,
    pn_form,
    pn_third_layer,
    standard_d_lattice,
)
from .delaunay import (
    DegenerateVertexSetError,
    NotCosphericalError,
    SphereCertificate,
    affine_rank,
    circumcenter,
    verify_delaunay,
)
from .exactlin import (
    Matrix,
    Rational,
    Vector,
    apply_form,
    is_positive_definite,
    isqrt_floor,
    kernel,
    matrix,
    rank,
    rational,
    solve,
    vector,
)
from .extremality import (
    ExtremalityCertificate,
    NotDelaunayError,
    QuadricTriple,
    certify_extreme,
    condition_matrix,
    evaluate_quadric,
    kernel_dim_oracle,
)
from .lattice import (
    DEFAULT_MAX_ENUM,
    BallQuery,
    EnumerationLimitError,
    Lattice,
    coordinates,
    enumerate_brute_force,
    enumerate_in_ball,
    membership,
)
from .symmetry import SymmetryReport, automorphisms, distance_matrix, group_order

__version__ = "0.1.0"

__all__ = [
    "BallQuery",
    "DEFAULT_MAX_ENUM",
    "DegenerateVertexSetError",
    "DelaunayInstance",
    "EnumerationLimitError",
    "ExtremalityCertificate",
    "Lattice",
    "Matrix",
    "NotCosphericalError",
    "NotDelaunayError",
    "QuadricTriple",
    "Rational",
    "SphereCertificate",
    "SymmetryReport",
    "Vector",
    "affine_rank",
    "apply_form",
    "automorphisms",
    "certify_extreme",
    "circumcenter",
    "condition_matrix",
    "construct_cross_polytope",
    "construct_half_cube",
    "construct_pn",
    "coordinates",
    "distance_matrix",
    "enumerate_brute_force",
    "enumerate_in_ball",
    "evaluate_quadric",
    "group_order",
    "is_positive_definite",
    "isqrt_floor",
    "kernel",
    "kernel_dim_oracle",
    "l_n_lattice",
    "matrix",
    "membership",
    "pn_form",
    "pn_third_layer",
    "rank",
    "rational",
    "solve",
    "standard_d_lattice",
    "vector",
    "verify_delaunay",
    "__version__",
]
