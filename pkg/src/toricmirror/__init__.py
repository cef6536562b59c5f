"""Toric fan combinatorics and Landau-Ginzburg mirror superpotentials.

The pipeline: validate a smooth complete fan, read off its curve-class
combinatorics (primitive collections/relations, positivity class, effective
cone generators), optionally build the projectivized canonical bundle of a
Fano base, attach Kahler data, and assemble the mirror superpotential as an
exact Laurent polynomial whose zero-section coefficient carries the
Gromov-Witten correction factor. A multistart Newton solver locates the
critical points numerically.
"""

from .bundle import (
    BundleDecomposition,
    decompose_bundle,
    default_q_basis,
    fiber_class,
    projectivize_canonical,
    push_h2,
)
from .critical import (
    CriticalReport,
    SolverOptions,
    find_critical_points,
    gradient,
    moduli_from_polytope,
)
from .fan import (
    Fan,
    Positivity,
    PrimitiveRelation,
    chern_degree,
    classify_positivity,
    effective_classes_up_to,
    forced_divisors,
    validate_fan,
)
from .gw import GWProvider, GWTable, f2_one_point_rule
from .kahler import KahlerData, boundary_vector, maslov_index
from .lattice import (
    cone_coefficients,
    is_primitive,
    kernel_basis,
    unimodular_map_search,
)
from .laurent import LaurentPoly, QPoly, evaluate
from .linform import LinForm, parse_linear_form
from .potential import (
    basic_monomial,
    contributing_classes,
    corrected_potential,
    correction_factor,
    hori_vafa,
)

__version__ = "0.1.0"

__all__ = [
    "BundleDecomposition",
    "CriticalReport",
    "Fan",
    "GWProvider",
    "GWTable",
    "KahlerData",
    "LaurentPoly",
    "LinForm",
    "Positivity",
    "PrimitiveRelation",
    "QPoly",
    "SolverOptions",
    "basic_monomial",
    "boundary_vector",
    "chern_degree",
    "classify_positivity",
    "cone_coefficients",
    "contributing_classes",
    "corrected_potential",
    "correction_factor",
    "decompose_bundle",
    "default_q_basis",
    "effective_classes_up_to",
    "evaluate",
    "f2_one_point_rule",
    "fiber_class",
    "find_critical_points",
    "forced_divisors",
    "gradient",
    "hori_vafa",
    "is_primitive",
    "kernel_basis",
    "maslov_index",
    "moduli_from_polytope",
    "parse_linear_form",
    "projectivize_canonical",
    "push_h2",
    "unimodular_map_search",
    "validate_fan",
]
