"""Acceptance criteria, each checked with zero tolerance.

Every test records one PASS/FAIL line; the lines are printed together at the
end of the session (see conftest.py).
"""
import time

import numpy as np

from centaut import oracle
from centaut.abelian import decompose, hom_shape
from centaut.central import construct_noninner_central_order_p, has_noninner_central_order_p
from centaut.corpus import DEFAULT_CORPUS
from centaut.groups import abelian
from centaut.homring import ModMatrixRing, idempotent_in_powers
from centaut.verify import FAIL, PASS, SKIP, CHECKS, Context, run_check, search_question

LINES: list[str] = []
BUDGET = oracle.Budget()
CONTEXTS = {}


def ctx(spec):
    if spec not in CONTEXTS:
        CONTEXTS[spec] = Context(spec, BUDGET)
    return CONTEXTS[spec]


def rows(*names):
    """Run the named checks over the default corpus; return {(row, group): Outcome}."""
    by_name = {c.name: c for c in CHECKS}
    return {(n, g): run_check(by_name[n], ctx(g)) for n in names for g in DEFAULT_CORPUS}


def record(number, title, failures, detail=""):
    status = "PASS" if not failures else "FAIL"
    LINES.append(f"criterion {number} {status}: {title}" + (f" ({detail})" if detail else ""))
    for f in failures:
        LINES.append(f"    {f}")
    assert not failures, failures


def failures_of(results):
    return [f"{row} on {g}: {o.detail}" for (row, g), o in results.items() if o.status == FAIL]


def counts(results):
    c = {s: sum(o.status == s for o in results.values()) for s in (PASS, SKIP)}
    return f"{c[PASS]} checks passed, {c[SKIP]} skipped for budget"


def test_1_autc_is_adjoint_group():
    start = time.perf_counter()
    res = rows("adney_yen_isomorphism")
    elapsed = time.perf_counter() - start
    fails = failures_of(res)
    if any(o.status != PASS for o in res.values()):
        fails.append("not every corpus group was checked")
    if elapsed >= 60:
        fails.append(f"runtime {elapsed:.1f}s exceeds 60s")
    record(1, "|Aut_c| = oracle count, equal permutation sets, composition = circle", fails,
           f"{len(res)} groups in {elapsed:.1f}s")


def test_2_radical_iff_no_abelian_factor():
    res = rows("radical_iff_purely_non_abelian")
    fails = failures_of(res) + [f"{g} not checked" for (_, g), o in res.items() if o.status != PASS]
    record(2, "radical Hom ring <=> no abelian direct factor", fails, f"{len(res)} groups")


def test_3_idempotents_in_powers():
    res = rows("radical_iff_no_idempotent", "idempotent_in_powers")
    fails = failures_of(res)
    z12 = ModMatrixRing(12)
    if idempotent_in_powers(z12(2)) != z12(4):
        fails.append("Z/12, x = 2 did not give 4")
    for R in (z12, ModMatrixRing(4), ModMatrixRing(3, 2), ModMatrixRing(4, 2, "upper"),
              ModMatrixRing(9, 2, "strict")):
        elems = R.elements()
        idems = [x for x in elems if x * x == x]
        for x in elems:
            e = idempotent_in_powers(x)
            if e * e != e:
                fails.append(f"{R}: {x} -> {e} not idempotent")
        nilpotent_all = all(any((x ** k).is_zero for k in range(1, 10)) for x in elems)
        if nilpotent_all != (len(idems) == 1):
            fails.append(f"{R}: radical/idempotent mismatch")
    record(3, "some power is idempotent; radical <=> 0 is the only idempotent", fails, counts(res))


EXPECTED_CRITERION = {"heisenberg:3": False, "wreath:3": True, "modular:3": False,
                      "product(cyclic:3,heisenberg:3)": True}


def test_4_noninner_order_p_criterion():
    res = rows("noninner_criterion")
    fails = failures_of(res)
    checked = [g for (_, g), o in res.items() if o.status == PASS]
    for spec, expected in EXPECTED_CRITERION.items():
        G = ctx(spec).G
        got = has_noninner_central_order_p(G)
        if got != expected:
            fails.append(f"{spec}: criterion {got}, expected {expected}")
        if got:
            sigma = construct_noninner_central_order_p(G)
            if not (sigma.is_central() and sigma.order == G.prime and sigma.perm not in oracle.inner_automorphisms(G)):
                fails.append(f"{spec}: witness not verified")
    if sorted(checked) != sorted(EXPECTED_CRITERION):
        fails.append(f"odd-p non-abelian groups checked: {checked}")
    record(4, "d2 != d*d1 <=> non-inner central automorphism of order p (p odd)", fails,
           f"{len(checked)} groups")


def test_5_p_nil_structure():
    names = ("right_p_nil", "p_nil_class_bound", "omega_exchange", "omega_autc", "autc_class_bound")
    res = rows(*names)
    fails = failures_of(res)
    eligible = [g for g in DEFAULT_CORPUS if ctx(g).p not in (None, 2) and ctx(g).center_in_frattini]
    for g in eligible:
        for n in names:
            if res[(n, g)].status != PASS:
                fails.append(f"{n} on {g}: {res[(n, g)].status} {res[(n, g)].detail}")
    if not eligible:
        fails.append("no corpus group with Z(G) <= Phi(G) and p odd")
    record(5, "Z(G) <= Phi(G), p odd: right p-nil, class <= m, Omega exchange, Omega_n(Aut_c), class bound",
           fails, f"{len(eligible)} groups: {', '.join(eligible)}")


ABELIAN_TYPES = {2: [[2], [4], [8], [16], [2, 2], [4, 2], [4, 4], [8, 2], [2, 2, 2], [4, 2, 2]],
                 3: [[3], [9], [27], [81], [3, 3], [9, 3], [9, 9], [27, 3], [3, 3, 3]]}


def _pairs():
    out = []
    for types in ABELIAN_TYPES.values():
        for m in types:
            for n in types:
                if len(m) + len(n) <= 4 and np.prod(m) <= 81 and np.prod(n) <= 81:
                    out.append((m, n))
    return out


def test_6_hom_shape_against_enumeration():
    fails = []
    pairs = _pairs()
    for m, n in pairs:
        M, N = abelian(m), abelian(n)
        shape = hom_shape(decompose(M.whole()), decompose(N.whole()))
        brute = oracle.hom_invariants_bruteforce(M, N)
        if (shape.size, shape.rank, shape.exponent) != tuple(brute):
            fails.append(f"Hom({m}, {n}): {tuple(shape)} vs {tuple(brute)}")
    res = rows("hom_shape")
    fails += failures_of(res)
    if len(pairs) < 20:
        fails.append(f"only {len(pairs)} pairs")
    record(6, "rank, exponent, order of Hom(M, N) = enumeration", fails,
           f"{len(pairs)} abelian pairs plus {len(res)} corpus sections")


def test_7_class_and_rank_bounds():
    res = rows("adjoint_class_bound", "adjoint_rank_bound", "autc_rank_bound")
    fails = failures_of(res)
    odd = [g for (n, g), o in res.items() if n == "adjoint_rank_bound" and o.status == PASS
           and ctx(g).R.size % 2]
    if not odd:
        fails.append("no odd-order adjoint group checked")
    record(7, "adjoint class <= ring class; r(adjoint) <= 2 r(R+) (odd); r(Aut_c) <= 2 d d1 (p > 2)", fails,
           counts(res))


def test_8_socle_and_decomposable_witness():
    res = rows("center_socle_in_frattini", "decomposable_noninner")
    fails = failures_of(res)
    for g in ("product(cyclic:3,heisenberg:3)", "product(cyclic:2,dihedral:8)"):
        if res[("decomposable_noninner", g)].status != PASS:
            fails.append(f"decomposable construction not verified on {g}")
    record(8, "Omega_1(Z) <= Phi for purely non-abelian G; decomposable G has a non-inner order-p witness", fails,
           counts(res))


def test_9_search_question():
    hits = search_question(DEFAULT_CORPUS)
    record(9, "no group with d2 = d*d1 and non-cyclic center in the default corpus",
           [f"candidate {h}" for h in hits])
