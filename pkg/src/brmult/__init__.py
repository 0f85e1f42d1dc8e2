"""Buchsbaum-Rim multiplicities over weighted-graded quotient rings."""
from .errors import (
    BrimError,
    HomogeneityError,
    HypothesisError,
    MultiplicityError,
    NotContainedError,
    ResourceError,
    RingMismatchError,
)
from .exact import QQ, PrimeField, PrimeFieldElement, parse_field, rat_arith
from .formulas import (
    AlgebraExtension,
    check_additivity,
    check_dvr_fitting,
    check_hs_consistency,
    check_projection,
    compute_pure_degree,
)
from .groebner import FreeModuleElement, groebner_basis, ideal_groebner, normal_form
from .modules import INFINITE, SubmoduleOfFree, fitting_ideal_0, quotient_length
from .polyring import MonomialOrder, PolyRing, QuotientRing, krull_dimension, weighted_degree
from .rees import br_length, br_multiplicity, br_polynomial, rees_graded_generators

__version__ = "0.1.0"

__all__ = [
    "AlgebraExtension",
    "BrimError",
    "FreeModuleElement",
    "HomogeneityError",
    "HypothesisError",
    "INFINITE",
    "MonomialOrder",
    "MultiplicityError",
    "NotContainedError",
    "PolyRing",
    "PrimeField",
    "PrimeFieldElement",
    "QQ",
    "QuotientRing",
    "ResourceError",
    "RingMismatchError",
    "SubmoduleOfFree",
    "br_length",
    "br_multiplicity",
    "br_polynomial",
    "check_additivity",
    "check_dvr_fitting",
    "check_hs_consistency",
    "check_projection",
    "compute_pure_degree",
    "fitting_ideal_0",
    "groebner_basis",
    "ideal_groebner",
    "krull_dimension",
    "normal_form",
    "parse_field",
    "quotient_length",
    "rat_arith",
    "rees_graded_generators",
    "weighted_degree",
]
