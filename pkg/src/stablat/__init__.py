"""stablat: exact linear data of stability structures on products of curves.

Cohomology-ring and Chern-character arithmetic for products of smooth
projective curves, subset-indexed lattices with class maps onto them,
exact central-charge functionals, support-property and gluing checks, and
symmetric-group descent data for Hilbert schemes of points.  All core
arithmetic is exact (arbitrary-precision rationals and Gaussian rationals);
floating point appears only in optional display output.
"""

from fractions import Fraction

from .errors import (
    DegenerateBasis,
    DimensionMismatch,
    InvalidIndex,
    InvalidKummer,
    InvalidParameter,
    InvalidSpace,
    NonNilpotentExponent,
    NotARealClass,
    NotSymmetricSpace,
    ParseError,
    PositiveGenusRequired,
    SpaceMismatch,
    StablatError,
    ZeroCharge,
    ZeroVector,
)
from .gaussian import GaussianRational, format_rational, gr, parse_rational
from .cohomology import (
    CohClass,
    ProductSpace,
    canonical_subsets,
    ch_line_bundle,
    ch_skyscraper,
    coh_exp,
    coh_h,
    coh_h_total,
    coh_mul,
    coh_one,
    coh_zero,
    dualize,
    euler_form,
    integrate,
    make_space,
    permute_curves,
    pullback,
    pushforward,
    todd,
)
from .lattice import (
    IntegerMatrixAction,
    LatticeDesc,
    LatticeVector,
    apply_action,
    image_lattice_of_charge,
    image_lattice_of_v,
    invariant_sublattice,
    lattice_for,
    permutation_matrix,
    quotient_by_kernel,
    v_map,
    v_matrix,
    v_recursive,
)
from .charges import (
    ChargeFunctional,
    PhaseDescriptor,
    StabilityDatum,
    abcd_functionals,
    charge_functional,
    linear_data_equal,
    phase,
    phase_equals,
    product_charge,
    quotient_datum,
    standard_datum,
    verify_zbw,
    weak_charge,
)
from .support import (
    GlueProjection,
    QuadraticForm,
    check_support,
    glue_check,
    glue_projection,
    is_negative_definite_on,
    kernel_basis,
    support_constant,
)
from .descent import (
    DescentResult,
    HilbertSetup,
    check_equivariance,
    descend,
    hilbert_setup,
)

__version__ = "1.0.0"

__all__ = [
    "Fraction",
    "GaussianRational",
    "gr",
    "parse_rational",
    "format_rational",
    "ProductSpace",
    "make_space",
    "CohClass",
    "canonical_subsets",
    "coh_zero",
    "coh_one",
    "coh_h",
    "coh_h_total",
    "coh_mul",
    "coh_exp",
    "integrate",
    "ch_line_bundle",
    "ch_skyscraper",
    "todd",
    "pushforward",
    "pullback",
    "permute_curves",
    "dualize",
    "euler_form",
    "LatticeDesc",
    "LatticeVector",
    "IntegerMatrixAction",
    "lattice_for",
    "permutation_matrix",
    "v_map",
    "v_matrix",
    "v_recursive",
    "apply_action",
    "invariant_sublattice",
    "quotient_by_kernel",
    "image_lattice_of_v",
    "image_lattice_of_charge",
    "ChargeFunctional",
    "StabilityDatum",
    "PhaseDescriptor",
    "charge_functional",
    "abcd_functionals",
    "weak_charge",
    "product_charge",
    "verify_zbw",
    "phase",
    "phase_equals",
    "standard_datum",
    "quotient_datum",
    "linear_data_equal",
    "QuadraticForm",
    "GlueProjection",
    "kernel_basis",
    "is_negative_definite_on",
    "check_support",
    "support_constant",
    "glue_projection",
    "glue_check",
    "HilbertSetup",
    "DescentResult",
    "hilbert_setup",
    "check_equivariance",
    "descend",
    "StablatError",
    "ParseError",
    "InvalidSpace",
    "SpaceMismatch",
    "NonNilpotentExponent",
    "InvalidIndex",
    "NotARealClass",
    "InvalidParameter",
    "ZeroCharge",
    "DimensionMismatch",
    "DegenerateBasis",
    "ZeroVector",
    "PositiveGenusRequired",
    "InvalidKummer",
    "NotSymmetricSpace",
]
