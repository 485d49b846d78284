"""The ring Hom(G, Z(G)) as constrained integer matrices.

A homomorphism ``h: G -> Z(G)`` factors through ``G/G'``. Writing ``G/G'`` as a
product of cyclic groups of orders ``p^a_i`` and ``Z(G)`` as a product of cyclic
groups of orders ``p^b_j``, ``h`` is the matrix whose column ``i`` holds the
``Z(G)``-coordinates of the image of the ``i``-th generator of ``G/G'``. Entry
``(j, i)`` lives in ``Z/p^b_j`` and must be divisible by ``p^max(0, b_j - a_i)``.

Products compose left to right: ``x * y`` is "apply x, then y". Going from the
image of ``x`` in ``Z(G)`` back to ``G/G'`` coordinates uses the connecting
matrix ``C`` (``Z(G) -> G -> G/G'``), so ``mat(x * y) = mat(y) @ C @ mat(x)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, NamedTuple

import numpy as np

from .abelian import AbelianDecomp, decompose, hom_shape
from .errors import BudgetExceeded
from .groups import CayleyGroup, center, derived_subgroup, quotient

TABLE_CAP = 4096


class HomRing:
    """Hom(G, Z(G)) with addition pointwise and multiplication by composition."""

    def __init__(self, group: CayleyGroup, source: AbelianDecomp, target: AbelianDecomp,
                 proj: np.ndarray, p: int | None):
        self.group = group
        self.source = source
        self.target = target
        self.proj = proj
        self.p = p
        self.a = np.array(source.orders, dtype=np.int64)
        self.b = np.array(target.orders, dtype=np.int64)
        d, d1 = len(self.a), len(self.b)
        self.shape = (d1, d)
        # steps[j, i] = p^max(0, b_j - a_i); counts[j, i] = p^min(a_i, b_j)
        self.counts = np.minimum(self.b[:, None], self.a[None, :]).reshape(d1, d)
        self.steps = (self.b[:, None] // self.counts).reshape(d1, d) if d1 and d else np.ones((d1, d), np.int64)
        self.size = int(np.prod(self.counts)) if self.counts.size else 1
        self.proj_coords = np.array([source.coords[int(q)] for q in proj], dtype=np.int64).reshape(group.order, d)
        self.connect = np.array(
            [[source.coords[int(proj[z])][i] for z in target.basis] for i in range(d)], dtype=np.int64
        ).reshape(d, d1)
        lifts = []
        for q in source.basis:
            lifts.append(int(np.flatnonzero(proj == q)[0]))
        self.lifts = tuple(lifts)

    def __repr__(self):
        return f"HomRing({self.group.name}, size={self.size})"

    # -- element construction ------------------------------------------------

    def reduce(self, mats: np.ndarray) -> np.ndarray:
        return np.mod(mats, self.b[:, None]) if len(self.b) else mats

    def check_mask(self, mat) -> bool:
        m = np.asarray(mat, dtype=np.int64).reshape(self.shape)
        return bool((np.mod(self.reduce(m), self.steps) == 0).all())

    def element(self, mat) -> "RingElem":
        m = self.reduce(np.asarray(mat, dtype=np.int64).reshape(self.shape))
        if not (np.mod(m, self.steps) == 0).all():
            raise ValueError(f"matrix {m.tolist()} violates the well-definedness constraint")
        return RingElem(self, tuple(tuple(int(v) for v in row) for row in m))

    @property
    def zero(self) -> "RingElem":
        return self.element(np.zeros(self.shape, dtype=np.int64))

    def encode(self, mats: np.ndarray) -> np.ndarray:
        """Index of each (reduced) matrix in the canonical element order."""
        mats = self.reduce(np.asarray(mats, dtype=np.int64))
        digits = (mats // self.steps).reshape(mats.shape[:-2] + (-1,))
        idx = np.zeros(mats.shape[:-2], dtype=np.int64)
        for k, c in enumerate(self.counts.ravel()):
            idx = idx * c + digits[..., k]
        return idx

    @cached_property
    def matrices(self) -> np.ndarray:
        """All elements as an ``(size, d1, d)`` array, in index order."""
        if self.size > TABLE_CAP * 16:
            raise BudgetExceeded(f"{self!r} is too large to enumerate")
        counts = self.counts.ravel()
        if counts.size == 0:
            return np.zeros((1,) + self.shape, dtype=np.int64)
        digits = np.indices(tuple(counts)).reshape(len(counts), -1).T
        mats = digits.reshape((-1,) + self.shape) * self.steps
        mats.setflags(write=False)
        return mats

    def elements(self) -> list["RingElem"]:
        return [RingElem(self, tuple(map(tuple, m.tolist()))) for m in self.matrices]

    def __getitem__(self, index: int) -> "RingElem":
        return RingElem(self, tuple(map(tuple, self.matrices[index].tolist())))

    def __len__(self) -> int:
        return self.size

    # -- vectorised operation tables -------------------------------------------

    def _pairwise(self, op: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> np.ndarray:
        if self.size > TABLE_CAP:
            raise BudgetExceeded(f"{self!r}: operation tables capped at {TABLE_CAP} elements")
        E = self.matrices
        out = np.empty((self.size, self.size), dtype=np.int64)
        chunk = max(1, 2_000_000 // (self.size * max(1, E[0].size)))
        for start in range(0, self.size, chunk):
            out[start:start + chunk] = self.encode(op(E[start:start + chunk, None], E[None, :]))
        out.setflags(write=False)
        return out

    @cached_property
    def add_table(self) -> np.ndarray:
        return self._pairwise(lambda x, y: x + y)

    @cached_property
    def mul_table(self) -> np.ndarray:
        """``mul_table[x, y]`` is the index of ``x * y`` (x applied first)."""
        C = self.connect
        return self._pairwise(lambda x, y: y @ (C @ x))

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self.encode(-self.matrices)

    def scalar_table(self, k: int) -> np.ndarray:
        return self.encode(k * self.matrices)

    @cached_property
    def evaluation(self) -> np.ndarray:
        """``evaluation[h, g]``: the element ``h(g)`` of G, for every h and g."""
        coords = np.einsum("hji,gi->hgj", self.matrices, self.proj_coords)
        return self.target.lookup[self.target.encode(coords)]

    # -- conversions -------------------------------------------------------------

    def from_function(self, f, check: bool = True) -> "RingElem":
        """The ring element agreeing with ``f: G -> Z(G)`` (callable or array)."""
        values = np.array([f(g) for g in range(self.group.order)]) if callable(f) else np.asarray(f)
        mat = [[self.target.coords[int(values[g])][j] if int(values[g]) in self.target.coords else None
                for g in self.lifts] for j in range(len(self.b))]
        if any(v is None for row in mat for v in row):
            raise ValueError("function does not take values in Z(G)")
        h = self.element(np.array(mat, dtype=np.int64).reshape(self.shape))
        if check and not all(h(g) == int(values[g]) for g in range(self.group.order)):
            raise ValueError("function is not a homomorphism G -> Z(G)")
        return h


@dataclass(frozen=True, eq=False)
class RingElem:
    ring: HomRing
    mat: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.ring is other.ring and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"RingElem({list(map(list, self.mat))})"

    def _same(self, other: "RingElem") -> None:
        if not isinstance(other, RingElem) or other.ring is not self.ring:
            raise ValueError("ring mismatch")

    def _wrap(self, rows) -> "RingElem":
        b = self.ring.target.orders
        return RingElem(self.ring, tuple(tuple(v % b[j] for v in row) for j, row in enumerate(rows)))

    def __add__(self, other: "RingElem") -> "RingElem":
        self._same(other)
        return self._wrap([[u + v for u, v in zip(r, s)] for r, s in zip(self.mat, other.mat)])

    def __neg__(self) -> "RingElem":
        return self._wrap([[-u for u in r] for r in self.mat])

    def __sub__(self, other: "RingElem") -> "RingElem":
        return self + (-other)

    def __rmul__(self, k: int) -> "RingElem":
        return self._wrap([[k * u for u in r] for r in self.mat])

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return int(other) * self
        self._same(other)
        C = self.ring.connect
        d, d1 = C.shape
        cx = [[sum(int(C[i, j]) * self.mat[j][k] for j in range(d1)) for k in range(d)] for i in range(d)]
        return self._wrap([[sum(row[i] * cx[i][k] for i in range(d)) for k in range(d)] for row in other.mat])

    def __pow__(self, k: int) -> "RingElem":
        if k < 1:
            raise ValueError("rings here need not have a unit; powers start at 1")
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def __call__(self, g: int) -> int:
        """``h(g)`` as an element index of G (it lies in Z(G))."""
        R = self.ring
        c = R.proj_coords[g]
        t = [sum(row[i] * int(c[i]) for i in range(len(c))) for row in self.mat]
        return int(R.target.lookup[R.target.encode(np.array(t, dtype=np.int64))])

    @property
    def index(self) -> int:
        return int(self.ring.encode(np.array(self.mat, dtype=np.int64).reshape(self.ring.shape)))

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for row in self.mat for v in row)


@lru_cache(maxsize=None)
def build_hom_ring(G: CayleyGroup) -> HomRing:
    """Hom(G, Z(G)), realised as Hom(G/G', Z(G))."""
    Q, proj = quotient(G, derived_subgroup(G))
    source = decompose(Q.whole())
    target = decompose(center(G))
    primes = {x.prime for x in (source, target) if x.prime is not None}
    if len(primes) > 1:
        raise ValueError(f"{G!r}: G/G' and Z(G) are primary for different primes {sorted(primes)}")
    p = primes.pop() if primes else G.prime
    return HomRing(G, source, target, proj, p)


# -------------------------------------------------------------- test rings


class ModMatrixRing:
    """``k x k`` matrices over ``Z/n``, optionally restricted to (strictly) upper triangular ones.

    A small explicit ring for exercising the generic ring routines outside of
    Hom rings; ``ModMatrixRing(12)`` is ``Z/12``.
    """

    def __init__(self, n: int, k: int = 1, shape: str = "full"):
        if shape not in ("full", "upper", "strict"):
            raise ValueError(f"unknown shape {shape!r}")
        self.n, self.k, self.kind = n, k, shape
        self.free = [(i, j) for i in range(k) for j in range(k)
                     if shape == "full" or (shape == "upper" and j >= i) or (shape == "strict" and j > i)]

    def __repr__(self):
        return f"ModMatrixRing(n={self.n}, k={self.k}, {self.kind})"

    def __call__(self, entries) -> "ModMatrix":
        if isinstance(entries, int):
            entries = [[entries]]
        m = [[0] * self.k for _ in range(self.k)]
        for i, j in self.free:
            m[i][j] = entries[i][j] % self.n
        return ModMatrix(self, tuple(map(tuple, m)))

    @property
    def zero(self) -> "ModMatrix":
        return self(0 if self.k == 1 else [[0] * self.k for _ in range(self.k)])

    @property
    def size(self) -> int:
        return self.n ** len(self.free)

    def elements(self) -> list["ModMatrix"]:
        out = []
        for vals in itertools.product(range(self.n), repeat=len(self.free)):
            m = [[0] * self.k for _ in range(self.k)]
            for (i, j), v in zip(self.free, vals):
                m[i][j] = v
            out.append(ModMatrix(self, tuple(map(tuple, m))))
        return out


@dataclass(frozen=True)
class ModMatrix:
    ring: ModMatrixRing
    mat: tuple[tuple[int, ...], ...]

    def _wrap(self, m) -> "ModMatrix":
        n = self.ring.n
        return ModMatrix(self.ring, tuple(tuple(v % n for v in row) for row in m))

    def __add__(self, other):
        return self._wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self.mat, other.mat)])

    def __neg__(self):
        return self._wrap([[-a for a in r] for r in self.mat])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._wrap([[other * a for a in r] for r in self.mat])
        k = self.ring.k
        return self._wrap([[sum(self.mat[i][t] * other.mat[t][j] for t in range(k)) for j in range(k)]
                           for i in range(k)])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = self
        for _ in range(e - 1):
            result = result * self
        return result

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for row in self.mat for v in row)


# ------------------------------------------------------- ring-level predicates


def idempotent_in_powers(x):
    """Some power ``x^k`` (k >= 1) with ``(x^k)^2 == x^k``.

    Walks the powers of ``x`` until one repeats. With ``t`` the first index of
    the repeating part and ``L`` its period, ``x^m`` for the least multiple ``m``
    of ``L`` with ``m >= t`` is idempotent.
    """
    seen = {}
    power, k = x, 1
    while power not in seen:
        seen[power] = k
        power, k = power * x, k + 1
    tail = seen[power]
    period = k - tail
    m = period * -(-tail // period)
    return next(e for e, j in seen.items() if j == m)


class RadicalResult(NamedTuple):
    radical: bool
    witness: object = None


def is_radical(R) -> RadicalResult:
    """A finite ring is radical exactly when 0 is its only idempotent.

    Hom rings up to TABLE_CAP elements are scanned through the multiplication
    table; larger ones (and other rings) run the power walk on every element.
    """
    if isinstance(R, HomRing) and R.size <= TABLE_CAP:
        diag = np.flatnonzero(R.mul_table[np.arange(R.size), np.arange(R.size)] == np.arange(R.size))
        nonzero = [int(i) for i in diag if i != 0]
        return RadicalResult(not nonzero, R[nonzero[0]] if nonzero else None)
    for x in R.elements():
        e = idempotent_in_powers(x)
        if not e.is_zero:
            return RadicalResult(False, e)
    return RadicalResult(True, None)


def additive_closure(R: HomRing, gens) -> frozenset[int]:
    """Additive subgroup of R generated by the given element indices."""
    gens = sorted(set(int(g) for g in gens))
    seen = {0}
    frontier = [0]
    add = R.add_table
    while frontier:
        nxt = np.unique(add[np.ix_(frontier, gens)]) if gens else np.array([], dtype=np.int64)
        frontier = [int(v) for v in nxt if int(v) not in seen]
        seen.update(frontier)
    return frozenset(seen)


def power_subring(R: HomRing, n: int) -> frozenset[int]:
    """``R^n``: the additive subgroup generated by all ``n``-fold products."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return power_chain(R, n)[n - 1]


def power_chain(R: HomRing, n: int | None = None) -> list[frozenset[int]]:
    """``[R^1, R^2, ...]``: up to ``R^n``, or until the chain stabilises."""
    chain = [frozenset(range(R.size))]
    while n is None or len(chain) < n:
        cur = sorted(chain[-1])
        nxt = additive_closure(R, np.unique(R.mul_table[cur]).tolist())
        if n is None and nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def nilpotency_class(R: HomRing) -> int | None:
    """Least ``n`` with ``R^(n+1) = 0``, or None when the powers stabilise above zero."""
    chain = power_chain(R)
    if chain[-1] != frozenset([0]):
        return None
    return len(chain) - 1


def omega_ideal(R: HomRing, n: int) -> frozenset[int]:
    """``{x : p^n x = 0}`` as element indices."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if R.p is None:
        return frozenset(range(R.size))
    return frozenset(np.flatnonzero(R.scalar_table(R.p ** n) == 0).tolist())


def is_left_p_nil(R: HomRing) -> bool:
    """Every x with ``p x = 0`` has ``x y = 0`` for all y."""
    killed = sorted(omega_ideal(R, 1))
    return bool((R.mul_table[killed, :] == 0).all())


def is_right_p_nil(R: HomRing) -> bool:
    """Every x with ``p x = 0`` has ``y x = 0`` for all y."""
    killed = sorted(omega_ideal(R, 1))
    return bool((R.mul_table[:, killed] == 0).all())


def is_two_sided_ideal(R: HomRing, S: frozenset[int]) -> bool:
    idx = sorted(S)
    inside = np.zeros(R.size, dtype=bool)
    inside[idx] = True
    return bool(inside[R.add_table[np.ix_(idx, idx)]].all()
                and inside[R.mul_table[idx, :]].all()
                and inside[R.mul_table[:, idx]].all())


def factor_is_p_nil(R: HomRing, n: int, side: str) -> bool:
    """Whether ``R / omega_ideal(R, n)`` is left or right p-nil.

    In the factor ring, ``x`` has ``p x = 0`` iff ``p x`` lies in the ideal, and
    annihilating means every product lands in the ideal.
    """
    ideal = np.zeros(R.size, dtype=bool)
    ideal[sorted(omega_ideal(R, n))] = True
    killed = np.flatnonzero(ideal[R.scalar_table(R.p)]) if R.p else np.arange(R.size)
    prods = R.mul_table[killed, :] if side == "left" else R.mul_table[:, killed]
    return bool(ideal[prods].all())


def exponent(R: HomRing) -> int:
    """Exponent of the additive group R+."""
    return int(max(min(int(a), int(b)) for a in R.a for b in R.b)) if R.size > 1 else 1


def ring_report(R: HomRing) -> dict:
    rad = is_radical(R)
    out = {
        "size": R.size,
        "source_orders": list(R.source.orders),
        "target_orders": list(R.target.orders),
        "connect": R.connect.tolist(),
        "radical": rad.radical,
        "left_p_nil": is_left_p_nil(R),
        "right_p_nil": is_right_p_nil(R),
    }
    if rad.witness is not None:
        out["witness"] = [list(r) for r in rad.witness.mat]
    cls = nilpotency_class(R)
    if cls is not None:
        out["class"] = cls
    return out


def ring_rank(R: HomRing) -> int:
    """Rank of the additive group, from the Hom invariants."""
    return hom_shape(R.source, R.target).rank
