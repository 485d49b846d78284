"""Central automorphisms of finite groups through the adjoint group of Hom(G, Z(G))."""
from .adjoint import AdjointGroup, adjoint_group, circle, quasi_inverse
from .central import (AutMap, adney_yen, aut_c, construct_noninner_central_order_p, d_invariants,
                      has_noninner_central_order_p, to_aut)
from .errors import BudgetExceeded, CriterionInapplicable, InvalidGroupError, SpecParseError, TheoremViolation
from .groups import CayleyGroup, center, derived_subgroup, frattini, make_group, second_center
from .homring import HomRing, RingElem, build_hom_ring, idempotent_in_powers, is_radical
from .report import analyze
from .verify import CHECKS, search_question, verify

__all__ = [
    "AdjointGroup", "AutMap", "BudgetExceeded", "CHECKS", "CayleyGroup", "CriterionInapplicable", "HomRing",
    "InvalidGroupError", "RingElem", "SpecParseError", "TheoremViolation", "adjoint_group", "adney_yen",
    "analyze", "aut_c", "build_hom_ring", "center", "circle", "construct_noninner_central_order_p",
    "d_invariants", "derived_subgroup", "frattini", "has_noninner_central_order_p", "idempotent_in_powers",
    "is_radical", "make_group", "quasi_inverse", "search_question", "second_center", "to_aut", "verify",
]
