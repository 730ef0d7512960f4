"""Exact arithmetic for elliptic curves of prime conductor over number fields, with Fermat-equation audits."""
from .numberfield import (
    FieldElement,
    NumberField,
    PrimeIdeal,
    factor_rational_prime,
    is_local_square,
    make_field,
    sqrt_in_field,
    valuation,
)
from .curves import WeierstrassModel, change_coordinates, invariants, quadratic_twist, two_torsion_structure
from .localred import conductor, tate_reduce
from .kraus import normalize, twisted_model
from .frey import check_solution, frey_curve, property_check
from .audit import builtin_field, check_theorem1_hypotheses, check_theorem2_hypotheses, registry_lookup
from .scout import SearchBox, search_conductor_target, trace_congruence_scan

__version__ = "0.1.0"
