"""Exact invariant theory for restricted Lie algebra actions in characteristic p."""

from .actions import (
    LieAction,
    RationalPoint,
    adjoint_action,
    codim_at,
    estimate_c_g,
    is_regular,
    stabilizer,
)
from .derivations import (
    Derivation,
    RestrictedLieAlgebra,
    WnAlgebra,
    bracket,
    build_wn,
    fd_bracket,
    fd_power,
    p_power,
    verify_restricted,
)
from .errors import BudgetError, PreconditionError, VanishingPatternError
from .field import GF, FieldDescriptor, FieldElement, extension_sample, stream_rng
from .finite_groups import ConstantGroupAction, constant_invariants, freeness_check, max_orbit_index
from .groupscheme import (
    build_enveloping,
    induced_dimension,
    is_torus,
    semisimplicity_oracle,
    subgroup_index,
)
from .invariants import (
    char_poly_invariants_at,
    char_poly_invariants_symbolic,
    check_generation,
    freeness_monomial_check,
    invariants_up_to_degree,
    premet_identity_check,
    psi_differential,
)
from .poly import PolyRing, Polynomial, TruncatedAlgebra, parse_polynomial

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "ConstantGroupAction",
    "Derivation",
    "FieldDescriptor",
    "FieldElement",
    "GF",
    "LieAction",
    "PolyRing",
    "Polynomial",
    "PreconditionError",
    "RationalPoint",
    "RestrictedLieAlgebra",
    "TruncatedAlgebra",
    "VanishingPatternError",
    "WnAlgebra",
    "adjoint_action",
    "bracket",
    "build_enveloping",
    "build_wn",
    "char_poly_invariants_at",
    "char_poly_invariants_symbolic",
    "check_generation",
    "codim_at",
    "constant_invariants",
    "estimate_c_g",
    "extension_sample",
    "fd_bracket",
    "fd_power",
    "freeness_check",
    "freeness_monomial_check",
    "induced_dimension",
    "invariants_up_to_degree",
    "is_regular",
    "is_torus",
    "max_orbit_index",
    "p_power",
    "parse_polynomial",
    "premet_identity_check",
    "psi_differential",
    "semisimplicity_oracle",
    "stabilizer",
    "stream_rng",
    "subgroup_index",
    "verify_restricted",
]
