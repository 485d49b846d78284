"""Central automorphisms through the adjoint group of Hom(G, Z(G)).

``h -> (x -> x h(x))`` sends the circle composition of ``Hom(G, Z(G))`` to
composition of maps, with the left factor applied first:
``to_aut(circle(x, y)) == to_aut(x).then(to_aut(y))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np

from .abelian import decompose, omega
from .adjoint import AdjointGroup, adjoint_group
from .errors import CriterionInapplicable, TheoremViolation
from .groups import (CayleyGroup, Subgroup, center, frattini, generate, min_generators, quotient,
                     second_center)
from .homring import HomRing, RingElem, build_hom_ring, is_radical, omega_ideal


@dataclass(frozen=True, eq=False)
class AutMap:
    """An automorphism of ``group`` as the permutation ``g -> perm[g]``."""

    group: CayleyGroup
    perm: tuple[int, ...]
    source: tuple = field(default=("composed",))

    def __eq__(self, other):
        if not isinstance(other, AutMap):
            return NotImplemented
        return self.group is other.group and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        return f"AutMap({self.group.name}, source={self.source[0]})"

    def __call__(self, g: int) -> int:
        return self.perm[g]

    def then(self, other: "AutMap") -> "AutMap":
        """Apply ``self`` first, then ``other``."""
        return AutMap(self.group, tuple(other.perm[g] for g in self.perm))

    def power(self, k: int) -> "AutMap":
        result = identity_map(self.group)
        for _ in range(k):
            result = result.then(self)
        return result

    @property
    def order(self) -> int:
        ident = tuple(range(self.group.order))
        cur, k = self.perm, 1
        while cur != ident:
            cur = tuple(self.perm[g] for g in cur)
            k += 1
        return k

    def is_automorphism(self) -> bool:
        P = np.array(self.perm)
        T = self.group.table
        return len(set(self.perm)) == len(self.perm) and bool((P[T] == T[P[:, None], P[None, :]]).all())

    def is_central(self) -> bool:
        G = self.group
        Z = center(G)
        return all(G.mul(G.inv(x), self.perm[x]) in Z for x in range(G.order))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.group.order))


def identity_map(G: CayleyGroup) -> AutMap:
    return AutMap(G, tuple(range(G.order)), ("inner", G.identity))


def conjugation(G: CayleyGroup, g: int) -> AutMap:
    """``x -> g^-1 x g``."""
    return AutMap(G, tuple(int(v) for v in G.conjugation_table[g]), ("inner", g))


def _images(h: RingElem) -> np.ndarray:
    R = h.ring
    coords = R.proj_coords @ np.array(h.mat, dtype=np.int64).reshape(R.shape).T
    return R.target.lookup[R.target.encode(coords)]


def to_aut(h: RingElem) -> AutMap | None:
    """The endomorphism ``x -> x h(x)``, or None when it is not bijective."""
    G = h.ring.group
    perm = G.table[np.arange(G.order), _images(h)]
    if len(np.unique(perm)) != G.order:
        return None
    return AutMap(G, tuple(int(v) for v in perm), ("adney_yen", h))


def adney_yen(sigma: AutMap, R: HomRing | None = None) -> RingElem:
    """``h(x) = x^-1 sigma(x)`` as an element of Hom(G, Z(G))."""
    G = sigma.group
    R = R or build_hom_ring(G)
    values = G.table[G.inverse, np.array(sigma.perm)]
    if not np.isin(values, list(center(G).members)).all():
        raise ValueError("automorphism is not central")
    return R.from_function(values)


@dataclass(frozen=True, eq=False)
class AutCGroup:
    """Aut_c(G), carried over from the adjoint group element by element.

    ``elements[k]`` corresponds to adjoint member ``k``; ``table`` is the
    composition table with the left factor applied first.
    """

    group: CayleyGroup
    ring: HomRing
    adjoint: AdjointGroup
    elements: tuple[AutMap, ...]
    table: CayleyGroup

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def ring_iso(self) -> dict[RingElem, AutMap]:
        return {self.adjoint.element(k): a for k, a in enumerate(self.elements)}

    def iso(self, h: RingElem) -> AutMap:
        return self.elements[self.adjoint.position[h.index]]

    @cached_property
    def perms(self) -> np.ndarray:
        return np.array([a.perm for a in self.elements], dtype=np.int64).reshape(self.order, self.group.order)


def composition_table(perms: np.ndarray) -> np.ndarray:
    """``out[a, b]``: index of "apply a, then b" among the rows of ``perms``."""
    index = {row.tobytes(): k for k, row in enumerate(perms)}
    m = len(perms)
    out = np.empty((m, m), dtype=np.int64)
    for a in range(m):
        comp = perms[:, perms[a]]  # row b: perms[b][perms[a][g]]
        for b in range(m):
            out[a, b] = index[comp[b].tobytes()]
    return out


@lru_cache(maxsize=None)
def aut_c(G: CayleyGroup) -> AutCGroup:
    R = build_hom_ring(G)
    A = adjoint_group(R)
    elements = []
    for k in range(A.order):
        sigma = to_aut(A.element(k))
        if sigma is None:
            raise TheoremViolation(f"quasi-invertible element {A.element(k)} gave a non-bijective map")
        elements.append(sigma)
    perms = np.array([s.perm for s in elements], dtype=np.int64).reshape(len(elements), G.order)
    table = CayleyGroup(composition_table(perms), 0, None, f"autc({G.name})", validate=len(elements) <= 64)
    return AutCGroup(G, R, A, tuple(elements), table)


def autc_omega(C: AutCGroup, n: int) -> tuple[frozenset[int], frozenset[int]]:
    """Positions in ``C.elements`` of order dividing ``p^n``, and the subgroup they generate."""
    q = C.ring.p ** n if C.ring.p else 1
    raw = np.flatnonzero(q % C.table.element_orders == 0)
    return frozenset(raw.tolist()), generate(C.table, raw.tolist()).members


def is_inner(sigma: AutMap) -> tuple[bool, int | None]:
    """Whether ``sigma`` is conjugation by some g; scans one g per coset of Z(G)."""
    G = sigma.group
    _, proj = quotient(G, center(G))
    seen = set()
    target = np.array(sigma.perm)
    for g in range(G.order):
        if proj[g] in seen:
            continue
        seen.add(int(proj[g]))
        if np.array_equal(G.conjugation_table[g], target):
            return True, g
    return False, None


def inner_central_image(G: CayleyGroup) -> frozenset[RingElem]:
    """Images under the Adney-Yen map of the inner central automorphisms of order dividing p."""
    R = build_hom_ring(G)
    if G.order == 1:
        return frozenset([R.zero])
    Z = center(G)
    p = G.prime
    out = set()
    for g in second_center(G).elements:
        if G.power(g, p) not in Z:
            continue
        out.add(R.from_function(G.commutator_table[:, g]))
    return frozenset(out)


class DInvariants(NamedTuple):
    d: int
    d1: int
    d2: int
    abelian: bool


def d_invariants(G: CayleyGroup) -> DInvariants:
    """``d(G)``, ``d(Z(G))`` and ``d(Z(Inn G))`` with ``Inn G = G/Z(G)``."""
    if G.order > 1 and G.prime is None:
        raise ValueError(f"{G!r} is not a p-group")
    d = min_generators(G)
    d1 = min_generators(center(G))
    if G.is_abelian:
        return DInvariants(d, d1, 0, True)
    Q, _ = quotient(G, center(G))
    return DInvariants(d, d1, min_generators(center(Q)), False)


def _check_criterion_domain(G: CayleyGroup) -> None:
    if G.order == 1 or G.prime is None:
        raise ValueError(f"{G!r} is not a non-trivial p-group")
    if G.is_abelian:
        raise ValueError(f"{G!r} is abelian; the order-p criterion needs a non-abelian group")
    if G.prime == 2:
        raise CriterionInapplicable(f"{G!r}: the criterion d2 != d*d1 is only established for odd p")


def has_noninner_central_order_p(G: CayleyGroup) -> bool:
    """For odd p and non-abelian G: is there a non-inner central automorphism of order p?"""
    _check_criterion_domain(G)
    d, d1, d2, _ = d_invariants(G)
    return d2 != d * d1


def decomposition_from_idempotent(e: RingElem) -> tuple[Subgroup, Subgroup]:
    """``G = image(e) x kernel(e)`` for a nonzero idempotent ``e`` of Hom(G, Z(G))."""
    G = e.ring.group
    images = _images(e)
    A = Subgroup(G, frozenset(np.unique(images).tolist()))
    B = Subgroup(G, frozenset(np.flatnonzero(images == G.identity).tolist()))
    if A.order * B.order != G.order or A.members & B.members != {G.identity}:
        raise TheoremViolation("idempotent does not split G")
    return A, B


def is_direct_product(G: CayleyGroup, A: Subgroup, B: Subgroup) -> bool:
    return (A.is_normal() and B.is_normal() and A.members & B.members == {G.identity}
            and A.order * B.order == G.order)


def decomposable_automorphism(G: CayleyGroup, G1: Subgroup, G2: Subgroup) -> AutMap:
    """For ``G = G1 x G2``: the map ``x g^i -> x g^i z^i``.

    Here ``g`` lies in ``G1`` outside a maximal subgroup ``M`` of ``G1``, ``x``
    runs over ``M G2`` and ``z`` is a central element of order p in ``G2``. The
    map is central of order p and not inner, since it moves ``g`` out of the
    normal subgroup ``G1``.
    """
    if not is_direct_product(G, G1, G2):
        raise ValueError("G is not the direct product of the given subgroups")
    if G1.order == 1 or G2.order == 1 or G.prime is None:
        raise ValueError("need two non-trivial factors of a p-group")
    p = G.prime
    H1, embed = G1.as_group()
    phi = frattini(H1)
    Q, proj = quotient(H1, phi)
    basis = decompose(Q.whole()).basis
    g_local = int(np.flatnonzero(proj == basis[0])[0])
    rest = [int(np.flatnonzero(proj == b)[0]) for b in basis[1:]]
    M_local = generate(H1, rest, start=phi.members)
    M = {int(embed[m]) for m in M_local.members}
    g = int(embed[g_local])
    MG2 = {G.mul(m, y) for m in M for y in G2.elements}

    Z = center(G)
    z = next((y for y in G2.elements if y in Z and G.element_orders[y] == p), None)
    if z is None:
        raise TheoremViolation("second factor has no central element of order p")
    g_inv = G.inv(g)
    perm = []
    for x in range(G.order):
        y, i = x, 0
        while y not in MG2:
            y = G.mul(y, g_inv)
            i += 1
            if i >= p:
                raise TheoremViolation(f"element {x} not in any coset of M G2")
        perm.append(G.mul(x, G.power(z, i)))
    return AutMap(G, tuple(perm), ("decomposable", g, z))


class WitnessCheck(NamedTuple):
    automorphism: bool
    central: bool
    inner: bool
    order: int


def check_witness(sigma: AutMap) -> WitnessCheck:
    return WitnessCheck(sigma.is_automorphism(), sigma.is_central(), is_inner(sigma)[0], sigma.order)


def construct_noninner_central_order_p(G: CayleyGroup) -> AutMap:
    """A central, non-inner automorphism of order p, built and then verified.

    Groups with an abelian direct factor (non-radical Hom ring) get the
    decomposable-group construction from the splitting idempotent; the rest
    search Hom(G, Omega_1(Z(G))) outside the inner image for ``h`` and return
    ``x -> x h(x)``.
    """
    if G.order == 1 or G.prime is None or G.is_abelian:
        raise ValueError(f"{G!r}: need a non-abelian p-group")
    R = build_hom_ring(G)
    rad = is_radical(R)
    if not rad.radical:
        A, B = decomposition_from_idempotent(rad.witness)
        sigma = decomposable_automorphism(G, A, B)
    else:
        if not has_noninner_central_order_p(G):
            raise ValueError(f"{G!r}: every central automorphism of order p is inner")
        inner = {h.index for h in inner_central_image(G)}
        candidates = sorted(omega_ideal(R, 1) - inner)
        if not candidates:
            raise TheoremViolation(f"{G!r}: criterion holds but Hom(G, Omega_1(Z)) equals the inner image")
        sigma = to_aut(R[candidates[0]])
        if sigma is None:
            raise TheoremViolation(f"{G!r}: 1 + h is not bijective for h = {R[candidates[0]]}")
    check = check_witness(sigma)
    if not (check.automorphism and check.central and not check.inner and check.order == G.prime):
        raise TheoremViolation(f"{G!r}: constructed map fails verification: {check}")
    return sigma


def aut_Zn(G: CayleyGroup, n: int) -> list[AutMap]:
    """Central automorphisms whose Adney-Yen image takes values in Omega_n(Z(G))."""
    C = aut_c(G)
    Zn = omega(decompose(center(G)), n).members
    out = []
    for sigma in C.elements:
        if all(G.mul(G.inv(x), sigma.perm[x]) in Zn for x in range(G.order)):
            out.append(sigma)
    return out
