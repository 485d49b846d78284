"""Check every structural result on a corpus of groups, against the brute-force oracle.

Each check returns one of ``pass``, ``fail``, ``skip`` (a brute-force budget was
hit) or ``inapplicable`` (the group does not meet the hypotheses).
"""
from __future__ import annotations

import math
import traceback
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from . import oracle
from .abelian import decompose, hom_shape, omega
from .adjoint import (adjoint_group, binomial_circle_power, circle_power, group_class, group_rank, omega_set,
                      quasi_inverse)
from .central import (AutMap, aut_c, aut_Zn, autc_omega, check_witness, construct_noninner_central_order_p,
                      d_invariants, decomposable_automorphism, has_noninner_central_order_p,
                      inner_central_image, to_aut, adney_yen)
from .corpus import corpus_group
from .errors import BudgetExceeded, TheoremViolation
from .groups import CayleyGroup, center, derived_subgroup, frattini, nilpotency_class as group_nilpotency_class
from .groups import quotient, rank as group_rank_of
from .homring import (ModMatrixRing, build_hom_ring, exponent as ring_exponent, factor_is_p_nil, idempotent_in_powers,
                      is_left_p_nil, is_radical, is_right_p_nil, is_two_sided_ideal, nilpotency_class, omega_ideal,
                      power_chain, ring_rank)

PASS, FAIL, SKIP, NA = "pass", "fail", "skip", "inapplicable"


@dataclass
class Outcome:
    status: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"status": self.status, "detail": self.detail} if self.detail else {"status": self.status}


class Inapplicable(Exception):
    pass


class Context:
    """Per-group computations shared by all checks."""

    def __init__(self, spec: str, budget: oracle.Budget):
        self.spec = spec
        self.budget = budget
        self.G: CayleyGroup = corpus_group(spec)

    @property
    def p(self) -> int | None:
        return self.G.prime

    @cached_property
    def R(self):
        return build_hom_ring(self.G)

    @cached_property
    def radical(self):
        return is_radical(self.R)

    @cached_property
    def adjoint(self):
        return adjoint_group(self.R)

    @cached_property
    def autc(self):
        return aut_c(self.G)

    @cached_property
    def direct_factor(self):
        return oracle.has_abelian_direct_factor(self.G, self.budget)

    @cached_property
    def purely_non_abelian(self) -> bool:
        return not self.direct_factor.found

    @cached_property
    def oracle_central(self):
        return oracle.central_automorphisms(self.G, self.budget)

    @cached_property
    def center_in_frattini(self) -> bool:
        return self.p is not None and center(self.G).issubset(frattini(self.G))

    @cached_property
    def ring_exp(self) -> int:
        """m with exp(R+) = p^m."""
        e = ring_exponent(self.R)
        return round(math.log(e, self.p)) if e > 1 else 0

    def need_pgroup(self):
        if self.p is None:
            raise Inapplicable("not a non-trivial p-group")

    def need_odd(self):
        self.need_pgroup()
        if self.p == 2:
            raise Inapplicable("needs an odd prime")

    def need_purely_non_abelian(self):
        if not self.purely_non_abelian:
            raise Inapplicable("has an abelian direct factor")

    def need_center_in_frattini(self):
        self.need_pgroup()
        if not self.center_in_frattini:
            raise Inapplicable("Z(G) is not contained in the Frattini subgroup")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise TheoremViolation(message)


# ------------------------------------------------------------------ the checks


def check_hom_shape(ctx: Context) -> str:
    G = ctx.G
    ctx.need_pgroup()
    Q, _ = quotient(G, derived_subgroup(G))
    sections = {"G/G'": Q.whole(), "Z(G)": center(G)}
    n = 0
    for (na, A), (nb, B) in [(x, y) for x in sections.items() for y in sections.items()]:
        shape = hom_shape(decompose(A), decompose(B))
        brute = oracle.hom_invariants_bruteforce(A, B, ctx.budget)
        _require(tuple(shape) == (brute.rank, brute.exponent, brute.size),
                 f"Hom({na}, {nb}): shape {tuple(shape)} vs brute force {(brute.rank, brute.exponent, brute.size)}")
        n += 1
    return f"{n} pairs"


def check_adjoint_class_bound(ctx: Context) -> str:
    if not ctx.radical.radical:
        raise Inapplicable("ring is not radical")
    R, A = ctx.R, ctx.adjoint
    ring_cls, grp_cls = nilpotency_class(R), group_class(A)
    _require(grp_cls is not None and grp_cls <= ring_cls, f"adjoint class {grp_cls} > ring class {ring_cls}")
    # the ring's power chain gives a central series of the adjoint group
    chain = power_chain(R)
    inv = dict(zip(A.members, A.inverse.tolist()))
    circ = lambda x, y: int(R.add_table[R.add_table[x, y], R.mul_table[x, y]])
    for k in range(len(chain) - 1):
        nxt = chain[k + 1]
        for x in chain[k]:
            for y in A.members:
                c = circ(circ(inv[x], inv[y]), circ(x, y))
                _require(c in nxt, f"commutator of R^{k + 1} with the adjoint group leaves R^{k + 2}")
    return f"group class {grp_cls} <= ring class {ring_cls}"


def check_adjoint_rank_bound(ctx: Context) -> str:
    if not ctx.radical.radical or ctx.R.size == 1:
        raise Inapplicable("ring is not radical" if not ctx.radical.radical else "zero ring")
    r_add = ring_rank(ctx.R)
    r_adj = group_rank(ctx.adjoint)
    factor = 2 if ctx.R.size % 2 else 3
    _require(r_adj <= factor * r_add, f"r(adjoint) = {r_adj} > {factor} * {r_add}")
    return f"r(adjoint) = {r_adj} <= {factor} * r(R+) = {factor * r_add}"


def check_adney_yen_isomorphism(ctx: Context) -> str:
    C, A, R = ctx.autc, ctx.adjoint, ctx.R
    brute = ctx.oracle_central
    mine = {s.perm for s in C.elements}
    _require(len(brute) == C.order, f"oracle finds {len(brute)} central automorphisms, adjoint group has {C.order}")
    _require(brute.as_set() == mine, "permutation sets differ")
    _require(np.array_equal(C.table.table, A.group.table), "composition table differs from the circle table")
    members = set(A.members)
    for i, h in enumerate(R.elements()):
        bij = to_aut(h) is not None
        _require(bij == (i in members), f"{h}: bijective={bij} but quasi-invertible={i in members}")
    for k, sigma in enumerate(C.elements):
        _require(adney_yen(sigma, R) == A.element(k), "h_sigma does not recover the ring element")
    return f"|Aut_c| = {C.order}"


def check_radical_iff_purely_non_abelian(ctx: Context) -> str:
    rad = ctx.radical.radical
    _require(rad == ctx.purely_non_abelian,
             f"radical={rad} but abelian direct factor found={ctx.direct_factor.found}")
    return f"radical={rad}"


def check_radical_iff_no_idempotent(ctx: Context) -> str:
    R = ctx.R
    walk = [idempotent_in_powers(x) for x in R.elements()]
    only_zero = all(e.is_zero for e in walk)
    _require(only_zero == ctx.radical.radical, "power-walk and idempotent scan disagree")
    _require((ctx.adjoint.order == R.size) == ctx.radical.radical, "adjoint group size does not match radicality")
    if not ctx.radical.radical:
        e = ctx.radical.witness
        _require(e * e == e and not e.is_zero, "witness is not a non-zero idempotent")
        _require((-e).index not in set(ctx.adjoint.members), "-e is quasi-invertible")
    return f"radical={ctx.radical.radical}"


def check_idempotent_in_powers(ctx: Context) -> str:
    count = 0
    for x in ctx.R.elements():
        e = idempotent_in_powers(x)
        _require(e * e == e, f"{e} is not idempotent")
        powers, p = set(), x
        while p not in powers:
            powers.add(p)
            p = p * x
        _require(e in powers, f"{e} is not a power of {x}")
        count += 1
    return f"{count} elements"


def check_homs_nilpotent(ctx: Context) -> str:
    ctx.need_purely_non_abelian()
    cls = nilpotency_class(ctx.R)
    _require(cls is not None, "Hom ring is not nilpotent")
    for h in ctx.R.elements():
        _require((h ** (cls + 1)).is_zero, f"{h}^{cls + 1} != 0")
    return f"ring class {cls}"


def check_autc_nilpotent(ctx: Context) -> str:
    ctx.need_purely_non_abelian()
    cls = group_nilpotency_class(ctx.autc.table)
    _require(cls is not None, "Aut_c(G) is not nilpotent")
    return f"class {cls}"


def check_autc_rank_bound(ctx: Context) -> str:
    ctx.need_purely_non_abelian()
    ctx.need_pgroup()
    r = group_rank_of(ctx.autc.table)
    r_add = ring_rank(ctx.R)
    factor = 2 if center(ctx.G).order % 2 else 3
    _require(r <= factor * r_add, f"r(Aut_c) = {r} > {factor} * r(R+) = {factor * r_add}")
    d, d1, _, _ = d_invariants(ctx.G)
    bound = (2 if ctx.p > 2 else 3) * d * d1
    _require(r <= bound, f"r(Aut_c) = {r} > {bound}")
    return f"r(Aut_c) = {r} <= {bound}"


def _p_nil_sides(ctx: Context) -> tuple[bool, bool]:
    return is_left_p_nil(ctx.R), is_right_p_nil(ctx.R)


def check_p_nil_class_bound(ctx: Context) -> str:
    ctx.need_pgroup()
    left, right = _p_nil_sides(ctx)
    if not (left or right):
        raise Inapplicable("ring is neither left nor right p-nil")
    R, m, p = ctx.R, ctx.ring_exp, ctx.p
    cls = nilpotency_class(R)
    _require(cls is not None and cls <= m, f"ring class {cls} > {m}")
    chain = power_chain(R, m + 1)
    for n in range(1, m + 2):
        scaled = R.scalar_table(p ** (m - n + 1))[sorted(chain[n - 1])]
        _require((scaled == 0).all(), f"p^{m - n + 1} R^{n} != 0")
    gcls = group_class(adjoint_group(R))
    _require(gcls is not None and gcls <= m, f"adjoint class {gcls} > {m}")
    return f"class {cls} <= m = {m}"


def check_p_nil_factor_rings(ctx: Context) -> str:
    ctx.need_pgroup()
    left, right = _p_nil_sides(ctx)
    if not (left or right):
        raise Inapplicable("ring is neither left nor right p-nil")
    R = ctx.R
    for n in range(1, max(ctx.ring_exp, 1) + 1):
        _require(is_two_sided_ideal(R, omega_ideal(R, n)), f"Omega_{n}(R) is not an ideal")
        if left:
            _require(factor_is_p_nil(R, n, "left"), f"R/Omega_{n}(R) is not left p-nil")
        if right:
            _require(factor_is_p_nil(R, n, "right"), f"R/Omega_{n}(R) is not right p-nil")
    return f"n = 1..{max(ctx.ring_exp, 1)}"


def check_omega_exchange(ctx: Context) -> str:
    ctx.need_odd()
    left, right = _p_nil_sides(ctx)
    if not (left or right):
        raise Inapplicable("ring is neither left nor right p-nil")
    R, A = ctx.R, adjoint_group(ctx.R)
    for n in range(1, max(ctx.ring_exp, 1) + 1):
        raw, sub = omega_set(A, n)
        _require(raw == omega_ideal(R, n), f"elements of circle order | p^{n} differ from Omega_{n}(R)")
        _require(sub == raw, f"Omega_{n} of the adjoint group is larger than its generating set")
    for h in R.elements():
        _require(circle_power(h, ctx.p) == binomial_circle_power(h, ctx.p), "binomial expansion of x^(p) fails")
    return f"n = 1..{max(ctx.ring_exp, 1)}"


def check_p_central(ctx: Context) -> str:
    ctx.need_odd()
    left, right = _p_nil_sides(ctx)
    if not (left and right):
        raise Inapplicable("ring is not p-nil on both sides")
    A = adjoint_group(ctx.R)
    raw, _ = omega_set(A, 1)
    pos = [A.position[x] for x in raw]
    T = A.group.table
    _require(bool((T[pos, :] == T[:, pos].T).all()), "an element of order p is not central in the adjoint group")
    return f"{len(raw)} elements of order dividing p"


def check_right_p_nil(ctx: Context) -> str:
    ctx.need_center_in_frattini()
    _require(is_right_p_nil(ctx.R), "Hom ring is not right p-nil")
    return "right p-nil"


def check_autc_class_bound(ctx: Context) -> str:
    ctx.need_center_in_frattini()
    G = ctx.G
    Q, _ = quotient(G, derived_subgroup(G))
    r = round(math.log(Q.exponent, ctx.p))
    s = round(math.log(_exp(center(G)), ctx.p))
    cls = group_nilpotency_class(ctx.autc.table)
    _require(cls is not None and cls <= min(r, s), f"class(Aut_c) = {cls} > min({r}, {s})")
    return f"class {cls} <= min({r}, {s})"


def _exp(S) -> int:
    G = S.parent
    return int(np.lcm.reduce(G.element_orders[list(S.members)]))


def check_omega_autc(ctx: Context) -> str:
    ctx.need_odd()
    ctx.need_center_in_frattini()
    C = ctx.autc
    s = round(math.log(_exp(center(ctx.G)), ctx.p))
    for n in range(1, s + 1):
        raw, sub = autc_omega(C, n)
        zn = {a.perm for a in aut_Zn(ctx.G, n)}
        _require(raw == sub, f"Omega_{n}(Aut_c) is larger than its generating set")
        _require({C.elements[k].perm for k in raw} == zn, f"Omega_{n}(Aut_c) differs from Aut_Z{n}(G)")
    return f"n = 1..{s}"


def check_decomposable_noninner(ctx: Context) -> str:
    G = ctx.G
    ctx.need_pgroup()
    if G.is_abelian:
        raise Inapplicable("abelian")
    df = ctx.direct_factor
    if not df.found:
        raise Inapplicable("no abelian direct factor found")
    for sigma in (decomposable_automorphism(G, df.abelian_factor, df.complement),
                  construct_noninner_central_order_p(G)):
        w = check_witness(sigma)
        _require(w.automorphism and w.central and not w.inner and w.order == ctx.p, f"witness fails: {w}")
    return "witness verified"


def check_noninner_criterion(ctx: Context) -> str:
    ctx.need_odd()
    if ctx.G.is_abelian:
        raise Inapplicable("abelian")
    crit = has_noninner_central_order_p(ctx.G)
    brute = oracle.noninner_central_of_order(ctx.G, ctx.p, ctx.budget)
    _require(crit == bool(brute), f"criterion says {crit}, oracle found {len(brute)}")
    if crit:
        sigma = construct_noninner_central_order_p(ctx.G)
        _require(sigma.perm in set(brute), "constructed witness is not among the oracle's")
    return f"criterion={crit}, oracle count={len(brute)}"


def check_center_socle_in_frattini(ctx: Context) -> str:
    ctx.need_pgroup()
    ctx.need_purely_non_abelian()
    Z1 = omega(decompose(center(ctx.G)), 1)
    _require(Z1.issubset(frattini(ctx.G)), "Omega_1(Z(G)) is not inside the Frattini subgroup")
    return f"|Omega_1(Z)| = {Z1.order}"


def check_inner_central_order_p(ctx: Context) -> str:
    ctx.need_pgroup()
    G, R, p = ctx.G, ctx.R, ctx.p
    killed = omega_ideal(R, 1)
    inner = oracle.inner_automorphisms(G)
    count = 0
    for perm in ctx.oracle_central:
        if perm in inner and oracle.perm_order(perm) == p:
            h = adney_yen(AutMap(G, perm), R)
            _require(not h.is_zero and h.index in killed, "inner central automorphism of order p not in Hom(G, Omega_1(Z))")
            count += 1
    I = inner_central_image(G)
    idx = {h.index for h in I}
    _require(all((x + y).index in idx for x in I for y in I), "inner image is not closed under addition")
    if not G.is_abelian:
        d2 = d_invariants(G).d2
        _require(len(I) == p ** d2, f"|I| = {len(I)} but p^d2 = {p ** d2}")
    if ctx.purely_non_abelian:
        for i in killed:
            h = R[i]
            if h.is_zero:
                continue
            _require((h * h).is_zero, f"{h}^2 != 0")
            sigma = to_aut(h)
            _require(sigma is not None and sigma.order == p, f"1 + {h} does not have order p")
    return f"{count} inner central automorphisms of order p"


@dataclass(frozen=True)
class Check:
    name: str
    statement: str
    run: Callable[[Context], str]


CHECKS: tuple[Check, ...] = (
    Check("hom_shape", "rank, exponent and order of Hom(M, N) match the cyclic-factor formula", check_hom_shape),
    Check("adjoint_class_bound", "class of the adjoint group <= class of the nilpotent ring", check_adjoint_class_bound),
    Check("adjoint_rank_bound", "r(adjoint) <= 3 r(R+), and <= 2 r(R+) for odd |R|", check_adjoint_rank_bound),
    Check("adney_yen_isomorphism", "Aut_c(G) is the adjoint group of Hom(G, Z(G))", check_adney_yen_isomorphism),
    Check("radical_iff_purely_non_abelian", "Hom(G, Z(G)) radical iff G has no abelian direct factor",
          check_radical_iff_purely_non_abelian),
    Check("radical_iff_no_idempotent", "a finite ring is radical iff 0 is its only idempotent",
          check_radical_iff_no_idempotent),
    Check("idempotent_in_powers", "some power of every element of a finite ring is idempotent",
          check_idempotent_in_powers),
    Check("homs_nilpotent", "Hom(G, Z(G)) is nilpotent for purely non-abelian G", check_homs_nilpotent),
    Check("autc_nilpotent", "Aut_c(G) is nilpotent for purely non-abelian G", check_autc_nilpotent),
    Check("autc_rank_bound", "r(Aut_c) <= 2 d d1 (p odd), <= 3 d d1 (p = 2)", check_autc_rank_bound),
    Check("p_nil_class_bound", "one-sided p-nil ring of exponent p^m has class <= m", check_p_nil_class_bound),
    Check("p_nil_factor_rings", "R/Omega_n(R) stays one-sided p-nil", check_p_nil_factor_rings),
    Check("omega_exchange", "elements of circle order | p^n are exactly Omega_n(R) (p odd)", check_omega_exchange),
    Check("p_central_adjoint", "adjoint group of a p-nil ring is p-central (p odd)", check_p_central),
    Check("right_p_nil", "Z(G) <= Phi(G) makes Hom(G, Z(G)) right p-nil", check_right_p_nil),
    Check("autc_class_bound", "Z(G) <= Phi(G): class(Aut_c) <= min(r, s)", check_autc_class_bound),
    Check("omega_autc", "Z(G) <= Phi(G), p odd: Omega_n(Aut_c) = Aut_{Z_n}(G)", check_omega_autc),
    Check("decomposable_noninner", "decomposable non-abelian G has a non-inner central automorphism of order p",
          check_decomposable_noninner),
    Check("noninner_criterion", "p odd: non-inner central automorphism of order p iff d2 != d d1",
          check_noninner_criterion),
    Check("center_socle_in_frattini", "purely non-abelian: Omega_1(Z(G)) <= Phi(G)", check_center_socle_in_frattini),
    Check("inner_central_order_p", "inner central automorphisms of order p come from Hom(G, Omega_1(Z))",
          check_inner_central_order_p),
)


def run_check(check: Check, ctx: Context) -> Outcome:
    try:
        return Outcome(PASS, check.run(ctx) or "")
    except Inapplicable as exc:
        return Outcome(NA, str(exc))
    except BudgetExceeded as exc:
        return Outcome(SKIP, str(exc))
    except TheoremViolation as exc:
        return Outcome(FAIL, str(exc))
    except Exception as exc:  # a crash is a failed check, with the traceback tail as diagnostic
        return Outcome(FAIL, f"{type(exc).__name__}: {exc} [{traceback.format_exc().splitlines()[-3].strip()}]")


def _aggregate(statuses: list[str]) -> str:
    for s in (FAIL, PASS, SKIP):
        if s in statuses:
            return s
    return NA


def small_ring_checks() -> dict[str, Outcome]:
    """Group-free checks on small explicit rings."""
    out = {}
    rings = [ModMatrixRing(12), ModMatrixRing(4), ModMatrixRing(3), ModMatrixRing(2, 2),
             ModMatrixRing(4, 2, "upper"), ModMatrixRing(9, 3, "strict")]
    for R in rings:
        try:
            idems = [x for x in R.elements() if x * x == x]
            for x in R.elements():
                e = idempotent_in_powers(x)
                _require(e * e == e, f"{R}: {e} not idempotent")
            units = [x for x in R.elements() if quasi_inverse(x) is not None]
            radical = len(units) == R.size
            _require(radical == (len(idems) == 1), f"{R}: radical={radical} but {len(idems)} idempotents")
            out[repr(R)] = Outcome(PASS, f"{len(idems)} idempotents")
        except TheoremViolation as exc:
            out[repr(R)] = Outcome(FAIL, str(exc))
    z12 = ModMatrixRing(12)
    ok = idempotent_in_powers(z12(2)) == z12(4)
    out["Z/12, x = 2"] = Outcome(PASS if ok else FAIL, "idempotent 4")
    return out


@dataclass
class Report:
    corpus: tuple[str, ...]
    rows: dict[str, dict[str, Outcome]] = field(default_factory=dict)
    load_errors: dict[str, str] = field(default_factory=dict)

    def row_status(self, name: str) -> str:
        return _aggregate([o.status for o in self.rows[name].values()])

    @property
    def failed(self) -> bool:
        return bool(self.load_errors) or any(self.row_status(n) == FAIL for n in self.rows)

    def as_dict(self) -> dict:
        statements = {c.name: c.statement for c in CHECKS}
        return {
            "corpus": list(self.corpus),
            "load_errors": self.load_errors,
            "rows": {
                name: {
                    "statement": statements.get(name, ""),
                    "status": self.row_status(name),
                    "groups": {g: o.as_dict() for g, o in sorted(res.items())},
                }
                for name, res in self.rows.items()
            },
        }

    def render(self) -> str:
        width = max(len(n) for n in self.rows) if self.rows else 10
        lines = []
        for name, res in self.rows.items():
            counts = {s: sum(o.status == s for o in res.values()) for s in (PASS, FAIL, SKIP, NA)}
            summary = ", ".join(f"{v} {k}" for k, v in counts.items() if v)
            lines.append(f"{name:<{width}}  {self.row_status(name).upper():<12}  {summary}")
            for g, o in sorted(res.items()):
                if o.status == FAIL:
                    lines.append(f"{'':<{width}}    {g}: {o.detail}")
        for spec, err in self.load_errors.items():
            lines.append(f"load error {spec}: {err}")
        return "\n".join(lines)


def verify(corpus, budget: oracle.Budget | None = None, prime_filter: int | None = None,
           checks: tuple[Check, ...] = CHECKS) -> Report:
    budget = budget or oracle.Budget.from_env()
    report = Report(tuple(corpus))
    contexts = []
    for spec in corpus:
        try:
            ctx = Context(spec, budget)
        except ValueError as exc:
            report.load_errors[spec] = str(exc)
            continue
        if prime_filter is not None and ctx.p != prime_filter:
            continue
        contexts.append(ctx)
    for check in checks:
        report.rows[check.name] = {ctx.spec: run_check(check, ctx) for ctx in contexts}
    if any(c.name == "idempotent_in_powers" for c in checks):
        for name, outcome in small_ring_checks().items():
            report.rows["idempotent_in_powers"]["ring " + name] = outcome
    return report


def search_question(corpus) -> list[str]:
    """Odd-p non-abelian groups with d2 = d d1 whose center is not cyclic."""
    hits = []
    for spec in corpus:
        G = corpus_group(spec)
        if G.prime is None or G.prime == 2 or G.is_abelian:
            continue
        d, d1, d2, _ = d_invariants(G)
        if d2 == d * d1 and d1 > 1:
            hits.append(spec)
    return hits
