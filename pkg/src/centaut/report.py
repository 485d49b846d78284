"""Per-group JSON record."""
from __future__ import annotations

from .adjoint import adjoint_group, group_class, group_rank
from .central import aut_c, construct_noninner_central_order_p, d_invariants, has_noninner_central_order_p, is_inner
from .corpus import corpus_group
from .errors import BudgetExceeded, CriterionInapplicable
from .groups import center, derived_subgroup, frattini, nilpotency_class, second_center
from .homring import build_hom_ring, is_radical, ring_report


def analyze(spec: str) -> dict:
    G = corpus_group(spec)
    rec: dict = {"group": spec, "order": G.order, "prime": G.prime}
    rec["center_order"] = center(G).order
    rec["derived_order"] = derived_subgroup(G).order
    rec["second_center_order"] = second_center(G).order
    is_pgroup = G.order == 1 or G.prime is not None
    if is_pgroup:
        rec["frattini_order"] = frattini(G).order
        d, d1, d2, _ = d_invariants(G)
        rec.update(d=d, d1=d1, d2=d2)

    R = build_hom_ring(G)
    rec["purely_non_abelian"] = is_radical(R).radical
    rec["ring"] = ring_report(R)
    A = adjoint_group(R)
    adj = {"adjoint_order": A.order, "abelian": A.is_abelian()}
    cls = group_class(A)
    if cls is not None:
        adj["class"] = cls
    # rank is only defined here for p-groups and abelian groups
    if A.group.prime is not None or A.is_abelian():
        try:
            adj["rank"] = group_rank(A)
        except BudgetExceeded:
            adj["rank"] = "skipped"
    rec["adjoint"] = adj

    C = aut_c(G)
    rec["autc_order"] = C.order
    rec["autc_class"] = nilpotency_class(C.table)

    if not is_pgroup or G.order == 1 or G.is_abelian:
        rec["criterion"] = "inapplicable_abelian" if G.is_abelian else "inapplicable"
        return rec
    try:
        rec["criterion"] = has_noninner_central_order_p(G)
    except CriterionInapplicable:
        rec["criterion"] = "inapplicable_p2"
    if rec["criterion"] is True or not rec["purely_non_abelian"]:
        sigma = construct_noninner_central_order_p(G)
        rec["witness"] = {"perm": list(sigma.perm), "order": sigma.order, "inner": is_inner(sigma)[0]}
    return rec
