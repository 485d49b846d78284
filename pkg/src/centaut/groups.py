"""Finite groups as explicit Cayley tables, and their characteristic subgroups.

Elements are the integers ``0..n-1``; ``G.table[a, b]`` is the index of ``a*b``.
Everything here is a scan or a closure over the table, which is all the
machinery needed for groups of a few hundred elements.
"""
from __future__ import annotations

import itertools
import json
import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidGroupError, SpecParseError

MAX_ORDER = 512


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k`` and ``k >= 1``, else None."""
    if n < 2:
        return None
    p = next(q for q in range(2, n + 1) if n % q == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def validate_table(table: np.ndarray, identity: int) -> None:
    """Raise InvalidGroupError naming the first violated group axiom."""
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise InvalidGroupError(f"table must be square, got shape {table.shape}")
    n = table.shape[0]
    if n == 0:
        raise InvalidGroupError("empty table")
    if table.min() < 0 or table.max() >= n:
        bad = np.argwhere((table < 0) | (table >= n))[0]
        raise InvalidGroupError(f"entry ({bad[0]}, {bad[1]}) = {table[bad[0], bad[1]]} out of range 0..{n - 1}")
    if not 0 <= identity < n:
        raise InvalidGroupError(f"identity {identity} out of range")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(table[i]), full):
            raise InvalidGroupError(f"row {i} is not a permutation (not a Latin square)")
        if not np.array_equal(np.sort(table[:, i]), full):
            raise InvalidGroupError(f"column {i} is not a permutation (not a Latin square)")
    if not np.array_equal(table[identity], full) or not np.array_equal(table[:, identity], full):
        raise InvalidGroupError(f"element {identity} is not a two-sided identity")
    for i in range(n):
        lhs = table[table[i]]  # [j, k] -> (i*j)*k
        rhs = table[i][table]  # [j, k] -> i*(j*k)
        if not np.array_equal(lhs, rhs):
            j, k = np.argwhere(lhs != rhs)[0]
            raise InvalidGroupError(
                f"associativity fails for triple ({i}, {j}, {k}): "
                f"({i}*{j})*{k} = {lhs[j, k]} but {i}*({j}*{k}) = {rhs[j, k]}"
            )


@dataclass(frozen=True, eq=False)
class CayleyGroup:
    """A finite group given by its multiplication table.

    Instances compare by identity; derived data is memoised on the instance.
    """

    table: np.ndarray
    identity: int = 0
    labels: tuple[str, ...] | None = None
    name: str = ""
    prime: int | None = None
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        table = np.ascontiguousarray(self.table, dtype=np.int64)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        n = table.shape[0] if table.ndim == 2 else 0
        if self.validate:
            if n > MAX_ORDER:
                raise InvalidGroupError(f"order {n} exceeds the cap of {MAX_ORDER}")
            validate_table(table, self.identity)
        if self.labels is not None and len(self.labels) != n:
            raise InvalidGroupError(f"{len(self.labels)} labels for {n} elements")
        pp = prime_power(n)
        if self.prime is None:
            if pp is not None:
                object.__setattr__(self, "prime", pp[0])
        elif pp is None or pp[0] != self.prime:
            raise InvalidGroupError(f"order {n} is not a power of {self.prime}")

    def __repr__(self):
        return f"CayleyGroup({self.name or '?'}, order={self.order})"

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmax(self.table == self.identity, axis=1)
        inv.setflags(write=False)
        return inv

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result, base = self.identity, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def power_map(self, k: int) -> np.ndarray:
        """``x -> x**k`` for every element at once."""
        result = np.full(self.order, self.identity)
        base = np.arange(self.order)
        if k < 0:
            base, k = self.inverse.copy(), -k
        while k:
            if k & 1:
                result = self.table[result, base]
            base = self.table[base, base]
            k >>= 1
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        k = 1
        while (orders == 0).any():
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            cur = self.table[cur, np.arange(self.order)]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def commutator_table(self) -> np.ndarray:
        """``[x, y] = x^-1 y^-1 x y``."""
        inv = self.inverse
        c = self.table[self.table[inv[:, None], inv[None, :]], self.table]
        c.setflags(write=False)
        return c

    @cached_property
    def conjugation_table(self) -> np.ndarray:
        """``[g, x] -> g^-1 x g``."""
        c = self.table[self.table[self.inverse[:, None], np.arange(self.order)[None, :]], np.arange(self.order)[:, None]]
        c.setflags(write=False)
        return c

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([self.identity]))


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: CayleyGroup
    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(m) for m in self.members))

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __contains__(self, a) -> bool:
        return int(a) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent!r})"

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def issubset(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def is_normal(self) -> bool:
        conj = self.parent.conjugation_table
        idx = np.array(self.elements)
        return bool(np.isin(conj[:, idx], idx).all())

    def is_abelian(self) -> bool:
        idx = np.array(self.elements)
        sub = self.parent.table[np.ix_(idx, idx)]
        return bool(np.array_equal(sub, sub.T))

    def as_group(self, name: str = "") -> tuple[CayleyGroup, np.ndarray]:
        """Relabel the subgroup as a standalone group.

        Returns the group and ``embed``, where ``embed[i]`` is the parent index of
        the subgroup's element ``i``.
        """
        embed = np.array(self.elements)
        pos = {int(e): i for i, e in enumerate(embed)}
        sub = self.parent.table[np.ix_(embed, embed)]
        table = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub) if len(embed) else sub
        labels = tuple(self.parent.label(int(e)) for e in embed)
        g = CayleyGroup(table, pos[self.parent.identity], labels, name or f"sub({self.parent.name})",
                        validate=len(embed) <= 128)
        return g, embed


def generate(G: CayleyGroup, gens: Iterable[int], start: Iterable[int] = ()) -> Subgroup:
    """Subgroup generated by ``gens`` together with the elements of ``start``."""
    gens = sorted({int(g) for g in gens} | {int(s) for s in start})
    seen = {G.identity}
    queue = deque([G.identity])
    table = G.table
    while queue:
        x = queue.popleft()
        for g in gens:
            y = int(table[x, g])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(G, frozenset(seen))


def cyclic_subgroup(G: CayleyGroup, g: int) -> Subgroup:
    return generate(G, [g])


@lru_cache(maxsize=None)
def center(G: CayleyGroup) -> Subgroup:
    t = G.table
    return Subgroup(G, frozenset(np.flatnonzero((t == t.T).all(axis=1)).tolist()))


@lru_cache(maxsize=None)
def derived_subgroup(G: CayleyGroup) -> Subgroup:
    comms = np.unique(G.commutator_table)
    return generate(G, comms.tolist())


@lru_cache(maxsize=None)
def frattini(G: CayleyGroup) -> Subgroup:
    """Frattini subgroup of a p-group, as the subgroup generated by commutators and p-th powers."""
    if G.order == 1:
        return G.trivial()
    if G.prime is None:
        raise ValueError(f"{G!r} is not a p-group; Frattini subgroup is only supported for p-groups")
    gens = set(np.unique(G.commutator_table).tolist()) | set(np.unique(G.power_map(G.prime)).tolist())
    return generate(G, gens)


def quotient(G: CayleyGroup, N: Subgroup) -> tuple[CayleyGroup, np.ndarray]:
    """Factor group ``G/N`` and the projection array ``proj[g] -> coset index``.

    Coset ``k`` is represented by its smallest member; cosets are numbered by
    that representative, so the trivial coset is 0 only if the identity is 0.
    """
    if N.parent is not G:
        raise ValueError("subgroup belongs to a different group")
    if not N.is_normal():
        raise ValueError("cannot form a quotient by a non-normal subgroup")
    proj = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    nidx = np.array(N.elements)
    for g in range(G.order):
        if proj[g] < 0:
            proj[G.table[g, nidx]] = len(reps)
            reps.append(g)
    reps_arr = np.array(reps)
    table = proj[G.table[np.ix_(reps_arr, reps_arr)]]
    labels = tuple(G.label(r) + ("" if N.order == 1 else "N") for r in reps)
    Q = CayleyGroup(table, int(proj[G.identity]), labels, f"{G.name}/N", validate=len(reps) <= 128)
    return Q, proj


def preimage(G: CayleyGroup, proj: np.ndarray, S: Subgroup) -> Subgroup:
    return Subgroup(G, frozenset(np.flatnonzero(np.isin(proj, list(S.members))).tolist()))


@lru_cache(maxsize=None)
def second_center(G: CayleyGroup) -> Subgroup:
    Z = center(G)
    Q, proj = quotient(G, Z)
    return preimage(G, proj, center(Q))


def min_generators(G: CayleyGroup | Subgroup) -> int:
    """Minimal number of generators of a p-group or of an abelian group."""
    if isinstance(G, Subgroup):
        G = G.as_group()[0]
    if G.order == 1:
        return 0
    if G.prime is not None:
        index = G.order // frattini(G).order
        return round(math.log(index, G.prime))
    if G.is_abelian:
        # d of an abelian group is the largest rank among its primary parts
        best = 0
        for p in (q for q in range(2, G.order + 1) if G.order % q == 0 and _is_prime(q)):
            part = [g for g in range(G.order) if _is_power_of(int(G.element_orders[g]), p)]
            best = max(best, min_generators(Subgroup(G, frozenset(part))))
        return best
    raise ValueError(f"min_generators needs a p-group or an abelian group, got {G!r}")


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def lower_central_series(G: CayleyGroup) -> list[Subgroup]:
    """``G = g_1 >= g_2 >= ...`` until it stabilises; the last term repeats no more."""
    series = [G.whole()]
    comm = G.commutator_table
    all_g = np.arange(G.order)
    while True:
        cur = np.array(series[-1].elements)
        nxt = generate(G, np.unique(comm[np.ix_(cur, all_g)]).tolist())
        if nxt == series[-1]:
            return series
        series.append(nxt)


def nilpotency_class(G: CayleyGroup) -> int | None:
    """Class of a nilpotent group (0 for the trivial group); None when not nilpotent."""
    series = lower_central_series(G)
    if series[-1].order != 1:
        return None
    return len(series) - 1


def enumerate_subgroups(G: CayleyGroup, limit: int = 20000) -> list[Subgroup]:
    """Every subgroup of G, found as joins of cyclic subgroups.

    Raises BudgetExceeded once more than ``limit`` subgroups turn up.
    """
    cyclic: dict[frozenset, int] = {}
    for g in range(G.order):
        c = cyclic_subgroup(G, g).members
        cyclic.setdefault(c, g)
    found: set[frozenset] = {frozenset([G.identity])}
    frontier = list(found)
    while frontier:
        new = []
        for H in frontier:
            for C, g in cyclic.items():
                if C <= H:
                    continue
                J = generate(G, [g], start=H).members if len(H) > 1 else C
                if J not in found:
                    found.add(J)
                    new.append(J)
                    if len(found) > limit:
                        raise BudgetExceeded(f"{G!r} has more than {limit} subgroups")
        frontier = new
    return sorted((Subgroup(G, s) for s in found), key=lambda s: (s.order, s.elements))


def rank(G: CayleyGroup, limit: int = 20000) -> int:
    """``max d(H)`` over all subgroups H of a p-group or an abelian group."""
    if G.order == 1:
        return 0
    if G.prime is None and not G.is_abelian:
        raise ValueError("rank is only implemented for p-groups and abelian groups")
    return max(min_generators(H) for H in enumerate_subgroups(G, limit))


# ---------------------------------------------------------------- constructors


def from_elements(elements: Sequence[Hashable], mul: Callable, name: str, identity=None,
                  label: Callable = str) -> CayleyGroup:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[mul(a, b)]
    if identity is None:
        identity = elements[0]
    return CayleyGroup(table, index[identity], tuple(label(e) for e in elements), name)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def cyclic(n: int) -> CayleyGroup:
    if n < 1:
        raise SpecParseError(f"cyclic order must be positive, got {n}")
    return from_elements(list(range(n)), lambda a, b: (a + b) % n, f"cyclic:{n}", label=lambda k: f"a^{k}")


def abelian(orders: Sequence[int]) -> CayleyGroup:
    if not orders or any(m < 1 for m in orders):
        raise SpecParseError(f"abelian needs positive orders, got {orders}")
    elements = list(itertools.product(*(range(m) for m in orders)))
    return from_elements(elements, lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, orders)),
                         "abelian:" + ",".join(map(str, orders)))


def dihedral(order: int) -> CayleyGroup:
    """Dihedral group of the given order (symmetries of an order/2-gon)."""
    if order < 2 or order % 2:
        raise SpecParseError(f"dihedral order must be even and >= 2, got {order}")
    m = order // 2
    elements = [(k, s) for s in range(2) for k in range(m)]
    return from_elements(elements, lambda a, b: ((a[0] + (-1) ** a[1] * b[0]) % m, (a[1] + b[1]) % 2),
                         f"dihedral:{order}", label=lambda e: f"r^{e[0]}s^{e[1]}")


def quaternion(order: int) -> CayleyGroup:
    """Generalised quaternion (dicyclic) group: <a, x | a^(n/2), x^2 = a^(n/4), a^x = a^-1>."""
    if order < 8 or order % 4:
        raise SpecParseError(f"quaternion order must be a multiple of 4 and >= 8, got {order}")
    m = order // 2

    def mul(a, b):
        (i, s), (j, t) = a, b
        k = (i + (-1) ** s * j) % m
        if s and t:
            k = (k + m // 2) % m
        return (k, (s + t) % 2)

    elements = [(k, s) for s in range(2) for k in range(m)]
    return from_elements(elements, mul, f"quaternion:{order}", label=lambda e: f"a^{e[0]}x^{e[1]}")


def heisenberg(p: int) -> CayleyGroup:
    """Upper unitriangular 3x3 matrices over F_p (extraspecial of exponent p for odd p)."""
    if not _is_prime(p):
        raise SpecParseError(f"heisenberg needs a prime, got {p}")
    elements = list(itertools.product(range(p), repeat=3))
    return from_elements(elements, lambda x, y: ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p),
                         f"heisenberg:{p}")


def modular(p: int, n: int = 3) -> CayleyGroup:
    """<a, b | a^(p^(n-1)), b^p, b a b^-1 = a^(1+p^(n-2))>, of order p^n (n >= 3)."""
    if not _is_prime(p):
        raise SpecParseError(f"modular needs a prime, got {p}")
    if n < 3:
        raise SpecParseError(f"modular group order exponent must be >= 3, got {n}")
    q = p ** (n - 1)
    s = 1 + p ** (n - 2)

    def mul(x, y):
        return ((x[0] + y[0] * pow(s, x[1], q)) % q, (x[1] + y[1]) % p)

    elements = [(i, j) for j in range(p) for i in range(q)]
    name = f"modular:{p}" if n == 3 else f"modular:{p},{n}"
    return from_elements(elements, mul, name, label=lambda e: f"a^{e[0]}b^{e[1]}")


def wreath(p: int) -> CayleyGroup:
    """Regular wreath product Z_p wr Z_p, of order p^(p+1) and maximal class."""
    if not _is_prime(p):
        raise SpecParseError(f"wreath needs a prime, got {p}")
    if p > 3:
        raise SpecParseError(f"wreath:{p} has order {p ** (p + 1)}, beyond the supported range (p <= 3)")

    def mul(x, y):
        base = tuple((x[0][i] + y[0][(i - x[1]) % p]) % p for i in range(p))
        return (base, (x[1] + y[1]) % p)

    elements = [(b, t) for t in range(p) for b in itertools.product(range(p), repeat=p)]
    return from_elements(elements, mul, f"wreath:{p}",
                         label=lambda e: "".join(map(str, e[0])) + f"|{e[1]}")


def direct_product(A: CayleyGroup, B: CayleyGroup, name: str = "") -> CayleyGroup:
    n, m = A.order, B.order
    a = np.repeat(np.arange(n), m)
    b = np.tile(np.arange(m), n)
    table = A.table[a[:, None], a[None, :]] * m + B.table[b[:, None], b[None, :]]
    labels = tuple(f"({A.label(int(i))},{B.label(int(j))})" for i, j in zip(a, b))
    return CayleyGroup(table, A.identity * m + B.identity, labels,
                       name or f"product({A.name},{B.name})")


def load_cayley(path: str | Path) -> CayleyGroup:
    """Read a Cayley JSON file: ``{"order", "identity", "table", "labels"?}``."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise InvalidGroupError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise InvalidGroupError(f"{path}: invalid JSON ({exc})") from None
    try:
        order = int(data["order"])
        identity = int(data.get("identity", 0))
        table = np.array(data["table"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGroupError(f"{path}: malformed Cayley file ({exc!r})") from None
    if table.shape != (order, order):
        raise InvalidGroupError(f"{path}: table shape {table.shape} does not match order {order}")
    labels = data.get("labels")
    try:
        return CayleyGroup(table, identity, tuple(map(str, labels)) if labels else None, f"cayley:{path}")
    except InvalidGroupError as exc:
        raise InvalidGroupError(f"{path}: {exc}") from None


def save_cayley(G: CayleyGroup, path: str | Path) -> None:
    data = {"order": G.order, "identity": G.identity, "table": G.table.tolist()}
    if G.labels:
        data["labels"] = list(G.labels)
    Path(path).write_text(json.dumps(data))


_SIMPLE = {
    "cyclic": lambda args: cyclic(_one(args)),
    "abelian": lambda args: abelian(args),
    "dihedral": lambda args: dihedral(_one(args)),
    "quaternion": lambda args: quaternion(_one(args)),
    "heisenberg": lambda args: heisenberg(_one(args)),
    "modular": lambda args: modular(*args) if 1 <= len(args) <= 2 else _one(args),
    "wreath": lambda args: wreath(_one(args)),
}


def _one(args: list[int]) -> int:
    if len(args) != 1:
        raise SpecParseError(f"expected a single integer, got {args}")
    return args[0]


def _split_top(s: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecParseError(f"unbalanced ')' at position {i} in {s!r}")
        elif ch == "," and depth == 0:
            parts.append(s[start:i])
            start = i + 1
    if depth:
        raise SpecParseError(f"unbalanced '(' in {s!r}")
    parts.append(s[start:])
    return parts


def make_group(spec: str) -> CayleyGroup:
    """Build a group from a spec string such as ``heisenberg:3`` or ``product(cyclic:3,heisenberg:3)``."""
    spec = spec.strip()
    if spec.startswith("product(") or spec.startswith("product ("):
        if not spec.endswith(")"):
            raise SpecParseError(f"missing closing ')' at position {len(spec)} in {spec!r}")
        inner = spec[spec.index("(") + 1:-1]
        parts = _split_top(inner)
        if len(parts) < 2:
            raise SpecParseError(f"product needs at least two factors: {spec!r}")
        groups = [make_group(p) for p in parts]
        G = groups[0]
        for H in groups[1:]:
            G = direct_product(G, H)
        canon = "product(" + ",".join(g.name for g in groups) + ")"
        return CayleyGroup(G.table, G.identity, G.labels, canon)
    if spec.startswith("cayley:"):
        return load_cayley(spec[len("cayley:"):])
    m = re.fullmatch(r"([a-z]+):([0-9]+(?:\s*,\s*[0-9]+)*)", spec)
    if not m:
        pos = next((i for i, ch in enumerate(spec) if not (ch.isalnum() or ch in ":,")), len(spec))
        raise SpecParseError(f"malformed group spec {spec!r} (problem near position {pos})")
    kind, args = m.group(1), [int(a) for a in m.group(2).split(",")]
    if kind not in _SIMPLE:
        raise SpecParseError(f"unknown group family {kind!r}; expected one of {sorted(_SIMPLE)} or product(...)/cayley:path")
    G = _SIMPLE[kind](args)
    if G.order > MAX_ORDER:
        raise InvalidGroupError(f"{spec} has order {G.order} > {MAX_ORDER}")
    return G
