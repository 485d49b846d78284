"""Brute-force ground truth.

Nothing here goes through Hom rings or adjoint groups: automorphisms and
homomorphisms come from exhaustive generator-image search on the Cayley table,
and circle inverses from an exhaustive pair search.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BudgetExceeded
from .groups import (CayleyGroup, Subgroup, center, cyclic, derived_subgroup, enumerate_subgroups, generate,
                     preimage, quotient)


@dataclass(frozen=True)
class Budget:
    max_order: int = 128
    max_candidates: int = 5_000_000
    max_ring: int = 4096

    @classmethod
    def from_env(cls, **overrides) -> "Budget":
        env = os.environ.get("CENTAUT_BUDGET")
        if env and "max_order" not in overrides:
            overrides["max_order"] = int(env)
        return cls(**overrides)


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True, eq=False)
class AutSet:
    group: CayleyGroup
    perms: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.perms)

    def __iter__(self):
        return iter(self.perms)

    def as_set(self) -> set[tuple[int, ...]]:
        return set(self.perms)


def generating_set(G: CayleyGroup) -> list[int]:
    """Greedy generators: each step adds the element that enlarges the span most.

    Ties go to elements with the smallest centralizer, so central elements are
    only picked when nothing else helps.
    """
    gens: list[int] = []
    span = G.trivial().members
    centralizer = (G.table == G.table.T).sum(axis=1)
    by_preference = sorted(range(G.order), key=lambda g: (centralizer[g], g))
    while len(span) < G.order:
        best, best_span = None, span
        for g in by_preference:
            if g in span:
                continue
            s = generate(G, [g], start=span).members
            if len(s) > len(best_span):
                best, best_span = g, s
        gens.append(best)
        span = best_span
    return gens


def _spanning_tree(G: CayleyGroup, gens: list[int]) -> list[tuple[int, int, int]]:
    """BFS order of ``(x, parent, k)`` with ``x = parent * gens[k]``."""
    order, seen = [], {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for y in frontier:
            for k, g in enumerate(gens):
                x = G.mul(y, g)
                if x not in seen:
                    seen.add(x)
                    order.append((x, y, k))
                    nxt.append(x)
        frontier = nxt
    return order


def _search(G: CayleyGroup, H: CayleyGroup, candidates: list[np.ndarray], bijective: bool,
            budget: Budget) -> list[np.ndarray]:
    """Every homomorphism G -> H whose generator images come from ``candidates``."""
    gens = generating_set(G)
    d = len(gens)
    total = int(np.prod([len(c) for c in candidates])) if d else 1
    if total > budget.max_candidates:
        raise BudgetExceeded(f"{total} generator-image candidates for {G!r} exceed {budget.max_candidates}")
    if d == 0:
        return [np.full(G.order, H.identity)]
    tree = _spanning_tree(G, gens)
    split, size = d, 1
    while split > 0 and size < 4096:
        split -= 1
        size *= len(candidates[split])
    vec = np.array(list(itertools.product(*candidates[split:])), dtype=np.int64).reshape(-1, d - split)
    edges = [G.table[:, g] for g in gens]
    found = []
    for prefix in itertools.product(*candidates[:split]):
        batch = np.concatenate([np.broadcast_to(np.array(prefix, dtype=np.int64), (len(vec), split)), vec], axis=1)
        img = np.empty((len(batch), G.order), dtype=np.int64)
        img[:, G.identity] = H.identity
        for x, parent, k in tree:
            img[:, x] = H.table[img[:, parent], batch[:, k]]
        ok = np.ones(len(batch), dtype=bool)
        for k in range(d):
            ok &= (img[:, edges[k]] == H.table[img, batch[:, k][:, None]]).all(axis=1)
        good = img[ok]
        if bijective and len(good):
            good = good[(np.sort(good, axis=1) == np.arange(H.order)).all(axis=1)]
        found.extend(good)
    return found


def _check_order(G: CayleyGroup, budget: Budget) -> None:
    if G.order > budget.max_order:
        raise BudgetExceeded(f"{G!r} is larger than the oracle cap {budget.max_order}")


def enumerate_automorphisms(G: CayleyGroup, budget: Budget = DEFAULT_BUDGET) -> AutSet:
    _check_order(G, budget)
    gens = generating_set(G)
    orders = G.element_orders
    cands = [np.flatnonzero(orders == orders[g]) for g in gens]
    perms = _search(G, G, cands, bijective=True, budget=budget)
    return AutSet(G, tuple(sorted(tuple(int(v) for v in p) for p in perms)))


def _central_by_quotient(G: CayleyGroup, perm: np.ndarray) -> bool:
    zmask = np.zeros(G.order, dtype=bool)
    zmask[list(center(G).members)] = True
    return bool(zmask[G.table[G.inverse, perm]].all())


def _central_by_commuting(G: CayleyGroup, perm: np.ndarray) -> bool:
    conj = G.conjugation_table
    return bool((perm[conj] == conj[:, perm]).all())


def central_automorphisms(G: CayleyGroup, budget: Budget = DEFAULT_BUDGET) -> AutSet:
    """Automorphisms commuting with every inner automorphism.

    Each candidate is tested both literally and through ``x^-1 sigma(x) in Z(G)``;
    any disagreement is raised.
    """
    out = []
    for perm in enumerate_automorphisms(G, budget):
        p = np.array(perm)
        a, b = _central_by_quotient(G, p), _central_by_commuting(G, p)
        if a != b:
            raise AssertionError(f"centrality tests disagree on {perm}")
        if a:
            out.append(perm)
    return AutSet(G, tuple(out))


def inner_automorphisms(G: CayleyGroup) -> set[tuple[int, ...]]:
    return {tuple(int(v) for v in G.conjugation_table[g]) for g in range(G.order)}


def perm_order(perm: tuple[int, ...]) -> int:
    ident = tuple(range(len(perm)))
    cur, k = perm, 1
    while cur != ident:
        cur = tuple(perm[x] for x in cur)
        k += 1
    return k


def noninner_central_of_order(G: CayleyGroup, k: int, budget: Budget = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    inner = inner_automorphisms(G)
    return [s for s in central_automorphisms(G, budget) if s not in inner and perm_order(s) == k]


class DirectFactor(NamedTuple):
    found: bool
    abelian_factor: Subgroup | None = None
    complement: Subgroup | None = None


def has_abelian_direct_factor(G: CayleyGroup, budget: Budget = DEFAULT_BUDGET) -> DirectFactor:
    """Search for ``G = A x B`` with ``A`` abelian and non-trivial.

    It suffices to try cyclic ``A = <a>`` with ``a`` central, against subgroups
    ``B`` containing ``G'`` (such ``B`` are normal, and ``G/B = A`` is abelian).
    """
    _check_order(G, budget)
    if G.order == 1:
        return DirectFactor(False)
    if G.is_abelian:
        return DirectFactor(True, G.whole(), G.trivial())
    Gp = derived_subgroup(G)

    Q, proj = quotient(G, Gp)
    over_derived = [preimage(G, proj, S) for S in enumerate_subgroups(Q)]
    cyclics = {}
    for a in center(G).elements:
        if a != G.identity:
            A = generate(G, [a])
            cyclics.setdefault(A.members, A)
    for A in cyclics.values():
        for B in over_derived:
            if A.order * B.order == G.order and A.members & B.members == {G.identity}:
                return DirectFactor(True, A, B)
    return DirectFactor(False)


def adjoint_bruteforce(R, budget: Budget = DEFAULT_BUDGET) -> frozenset[int]:
    """Indices of ring elements with a two-sided circle inverse, by pair search."""
    if R.size > budget.max_ring:
        raise BudgetExceeded(f"ring of size {R.size} exceeds {budget.max_ring}")
    elems = R.elements()
    units = set()
    for i, x in enumerate(elems):
        for y in elems:
            if (x + y + x * y).is_zero and (y + x + y * x).is_zero:
                units.add(i)
                break
    return frozenset(units)


def enumerate_homs(M: Subgroup | CayleyGroup, N: Subgroup | CayleyGroup,
                   budget: Budget = DEFAULT_BUDGET) -> tuple[CayleyGroup, CayleyGroup, list[np.ndarray]]:
    """All homomorphisms between two groups, as image arrays on standalone copies."""
    GM = M.as_group()[0] if isinstance(M, Subgroup) else M
    GN = N.as_group()[0] if isinstance(N, Subgroup) else N
    gens = generating_set(GM)
    orders = GN.element_orders
    cands = [np.flatnonzero(GM.element_orders[g] % orders == 0) for g in gens]
    return GM, GN, _search(GM, GN, cands, bijective=False, budget=budget)


def hom_count_bruteforce(M, N, budget: Budget = DEFAULT_BUDGET) -> int:
    return len(enumerate_homs(M, N, budget)[2])


class HomInvariants(NamedTuple):
    size: int
    rank: int
    exponent: int


def hom_invariants_bruteforce(M, N, budget: Budget = DEFAULT_BUDGET) -> HomInvariants:
    """Order, rank and exponent of the group Hom(M, N) for abelian p-groups M, N.

    The exponent is the largest pointwise order of a homomorphism; the rank is
    ``log_p`` of the number of homomorphisms killed by p.
    """
    GM, GN, homs = enumerate_homs(M, N, budget)
    if len(homs) == 1:
        return HomInvariants(1, 0, 1)
    orders = GN.element_orders
    hom_orders = [int(np.lcm.reduce(orders[h])) for h in homs]
    p = GN.prime
    killed = sum(1 for o in hom_orders if o in (1, p))
    r = round(np.log(killed) / np.log(p))
    return HomInvariants(len(homs), r, max(hom_orders))


def frattini_bruteforce(G: CayleyGroup, budget: Budget = DEFAULT_BUDGET) -> frozenset[int]:
    """Intersection of the kernels of all non-trivial maps ``G -> Z_p`` (the index-p subgroups)."""
    if G.order == 1:
        return frozenset([G.identity])
    Cp = cyclic(G.prime)
    _, _, homs = enumerate_homs(G, Cp, budget)
    result = set(range(G.order))
    for h in homs:
        if (h != Cp.identity).any():
            result &= set(np.flatnonzero(h == Cp.identity).tolist())
    return frozenset(result)


def exponent_bruteforce(G: CayleyGroup) -> int:
    best = 1
    for g in range(G.order):
        k, x = 1, g
        while x != G.identity:
            x = G.mul(x, g)
            k += 1
        best = np.lcm(best, k)
    return int(best)


def class_bruteforce(G: CayleyGroup, max_class: int = 8) -> int | None:
    """Least c with every (c+1)-fold left-normed commutator trivial, by direct iteration."""
    comm = G.commutator_table
    values = set(range(G.order))
    for c in range(0, max_class + 1):
        if values == {G.identity}:
            return c
        values = {int(comm[v, g]) for v in values for g in range(G.order)}
    return None
