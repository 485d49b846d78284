"""Circle composition ``x o y = x + y + xy`` and the adjoint group of a ring."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from functools import cached_property, lru_cache

import numpy as np

from .errors import BudgetExceeded
from .groups import CayleyGroup, generate, nilpotency_class, rank
from .homring import HomRing, RingElem


def circle(x, y):
    return x + y + x * y


def circle_power(x, k: int):
    """``x^(k)``, the k-th power under circle composition (k >= 1)."""
    result = x
    for _ in range(k - 1):
        result = circle(result, x)
    return result


def _zero_of(x):
    return x - x


def quasi_inverse(x):
    """The circle inverse of ``x``, or None when ``x`` has none.

    Nilpotent elements get the alternating power series; anything else is
    looked up by scanning the ring.
    """
    zero = _zero_of(x)
    powers, seen, p = [], set(), x
    while not p.is_zero and p not in seen:
        seen.add(p)
        powers.append(p)
        p = p * x
    if p.is_zero:
        total = zero
        for i, xi in enumerate(powers, start=1):
            total = total + xi if i % 2 == 0 else total - xi
        return total
    for y in x.ring.elements():
        if circle(x, y).is_zero and circle(y, x).is_zero:
            return y
    return None


@dataclass(frozen=True, eq=False)
class AdjointGroup:
    """The quasi-invertible elements of a Hom ring under circle composition.

    ``members[k]`` is the ring index of group element ``k``; ``group`` is the
    Cayley table on those positions with the identity (ring zero) at 0.
    """

    ring: HomRing
    members: tuple[int, ...]
    group: CayleyGroup

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def position(self) -> dict[int, int]:
        return {m: k for k, m in enumerate(self.members)}

    def element(self, k: int) -> RingElem:
        return self.ring[self.members[k]]

    @property
    def inverse(self) -> np.ndarray:
        """Ring index of the circle inverse of each member."""
        return np.array(self.members)[self.group.inverse]

    def is_abelian(self) -> bool:
        return self.group.is_abelian


def circle_table(R: HomRing) -> np.ndarray:
    return R.add_table[R.add_table, R.mul_table]


@lru_cache(maxsize=None)
def adjoint_group(R: HomRing) -> AdjointGroup:
    circ = circle_table(R)
    zero = circ == 0
    units = np.flatnonzero((zero & zero.T).any(axis=1))
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[units] = np.arange(len(units))
    table = pos[circ[np.ix_(units, units)]]
    if (table < 0).any():
        raise ArithmeticError("adjoint group is not closed under circle composition")
    G = CayleyGroup(table, int(pos[0]), tuple(str(R[int(u)]) for u in units),
                    f"adjoint({R.group.name})", validate=len(units) <= 64)
    return AdjointGroup(R, tuple(int(u) for u in units), G)


def group_class(A: AdjointGroup) -> int | None:
    """Nilpotency class of the adjoint group via its lower central series."""
    return nilpotency_class(A.group)


def omega_set(A: AdjointGroup, n: int) -> tuple[frozenset[int], frozenset[int]]:
    """Members of circle-order dividing ``p^n``, and the subgroup they generate (ring indices)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = A.ring.p
    if p is None:
        everything = frozenset(A.members)
        return everything, everything
    q = p ** n
    raw = np.flatnonzero(q % A.group.element_orders == 0)
    sub = generate(A.group, raw.tolist())
    members = np.array(A.members)
    return frozenset(members[raw].tolist()), frozenset(members[list(sub.members)].tolist())


RANK_BUDGET = 729


def group_rank(A: AdjointGroup, budget: int = RANK_BUDGET, subgroup_limit: int = 20000) -> int:
    """Largest minimal generator count over all subgroups.

    Raises BudgetExceeded when the group is larger than ``budget`` or has more
    than ``subgroup_limit`` subgroups.
    """
    if A.order > budget:
        raise BudgetExceeded(f"adjoint group of order {A.order} exceeds the rank budget {budget}")
    return rank(A.group, subgroup_limit)


def binomial_circle_power(x, p: int):
    """``sum_{i>=1} C(p, i) x^i``, which equals the circle power ``x^(p)``."""
    total = _zero_of(x)
    xi = x
    for i in range(1, p + 1):
        total = total + comb(p, i) * xi
        xi = xi * x
    return total
