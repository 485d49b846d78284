"""Primary decomposition of finite abelian p-groups and the shape of Hom(M, N)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .groups import CayleyGroup, Subgroup, prime_power


@dataclass(frozen=True, eq=False)
class AbelianDecomp:
    """``parent`` written as a product of cyclic groups of the given orders.

    ``orders`` is non-increasing; ``basis[i]`` has order ``orders[i]``;
    ``coords[g]`` is the coordinate vector of ``g`` with entry ``i`` taken
    modulo ``orders[i]``.
    """

    parent: Subgroup
    prime: int | None
    orders: tuple[int, ...]
    basis: tuple[int, ...]
    coords: dict[int, tuple[int, ...]]

    @property
    def group(self) -> CayleyGroup:
        return self.parent.parent

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def exponent(self) -> int:
        return self.orders[0] if self.orders else 1

    @property
    def exponents(self) -> tuple[int, ...]:
        """``a_i`` with ``orders[i] == p**a_i``."""
        return tuple(_log(m, self.prime) for m in self.orders)

    def element(self, coords) -> int:
        G = self.group
        g = G.identity
        for b, c in zip(self.basis, coords):
            g = G.mul(g, G.power(b, int(c)))
        return g

    def encode(self, coords: np.ndarray) -> np.ndarray:
        """Mixed-radix index of coordinate rows (last axis), reduced modulo the orders."""
        idx = np.zeros(coords.shape[:-1], dtype=np.int64)
        for i, m in enumerate(self.orders):
            idx = idx * m + np.mod(coords[..., i], m)
        return idx

    @cached_property
    def lookup(self) -> np.ndarray:
        """Element index for every mixed-radix coordinate index."""
        table = np.empty(self.parent.order, dtype=np.int64)
        for g, c in self.coords.items():
            table[self.encode(np.array(c, dtype=np.int64))] = g
        return table


def _log(m: int, p: int) -> int:
    k = 0
    while m > 1:
        m //= p
        k += 1
    return k


def decompose(A: Subgroup) -> AbelianDecomp:
    """Split an abelian p-group into cyclic factors.

    Repeatedly takes an element of largest order modulo the part split off so
    far, corrects it by a basis combination so that its own order equals that
    relative order, and adjoins it.
    """
    G = A.parent
    if not A.is_abelian():
        raise ValueError("decompose needs an abelian subgroup")
    if A.order == 1:
        return AbelianDecomp(A, None, (), (), {G.identity: ()})
    pp = prime_power(A.order)
    if pp is None:
        raise ValueError(f"decompose needs a p-group, got order {A.order}")
    p = pp[0]

    basis: list[int] = []
    orders: list[int] = []
    span: dict[int, tuple[int, ...]] = {G.identity: ()}
    members = A.elements
    while len(span) < A.order:
        best, best_q = None, 0
        for y in members:
            if y in span:
                continue
            q, z = 1, y
            while z not in span:
                z = G.power(z, p)
                q *= p
            if q > best_q:
                best, best_q = y, q
        c = span[G.power(best, best_q)]
        if any(ci % best_q for ci in c):
            raise ArithmeticError(f"basis correction failed for element {best}")
        y = best
        for b, ci in zip(basis, c):
            y = G.mul(y, G.power(b, -(ci // best_q)))
        new_span = {}
        for g, co in span.items():
            h = g
            for k in range(best_q):
                new_span[h] = co + (k,)
                h = G.mul(h, y)
        if len(new_span) != len(span) * best_q:
            raise ArithmeticError("chosen basis is not independent")
        basis.append(y)
        orders.append(best_q)
        span = new_span
    return AbelianDecomp(A, p, tuple(orders), tuple(basis), span)


class HomShape(NamedTuple):
    rank: int
    exponent: int
    size: int


def hom_shape(M: AbelianDecomp, N: AbelianDecomp) -> HomShape:
    """Rank, exponent and order of Hom(M, N) from the invariants alone.

    Hom(Z_{p^a}, Z_{p^b}) is cyclic of order ``p^min(a, b)`` and Hom is
    biadditive, so ``|Hom(M, N)|`` is the product over all factor pairs.
    """
    if M.prime and N.prime and M.prime != N.prime:
        raise ValueError(f"mixed primes {M.prime} and {N.prime}")
    if not M.orders or not N.orders:
        return HomShape(0, 1, 1)
    size = 1
    for m in M.orders:
        for n in N.orders:
            size *= min(m, n)
    return HomShape(M.rank * N.rank, min(M.exponent, N.exponent), size)


def omega(A: AbelianDecomp, n: int) -> Subgroup:
    """Elements of ``A`` killed by ``p**n``."""
    if n < 1:
        raise ValueError("omega needs n >= 1")
    if A.prime is None:
        return A.parent
    G = A.group
    q = A.prime ** n
    return Subgroup(G, frozenset(g for g in A.parent.elements if G.power(g, q) == G.identity))
