"""Finite groups as multiplication tables.

Every group is fully materialised: ``mul[a][b]`` is the index of the product
``elements[a] * elements[b]`` and index 0 is always the identity.  This is
meant for desk-scale groups (order at most a few hundred), where exhaustive
checks are cheap and make a better foundation than clever presentations.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidGroupError

__all__ = [
    "FiniteGroup",
    "QuotientMap",
    "Subgroup",
    "abelian_group",
    "builtin_group",
    "conjugacy_classes",
    "cyclic_group",
    "heisenberg_group",
    "load_group",
    "normal_subgroups",
    "quotient_group",
    "xi_set",
]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its full multiplication table."""

    name: str
    elements: tuple[str, ...]
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]

    @classmethod
    def from_table(cls, name: str, elements: Sequence[str], mul: Sequence[Sequence[int]],
                   validate: bool = True) -> "FiniteGroup":
        """Build a group from a table, re-indexing so the identity sits at 0."""
        n = len(elements)
        if n == 0:
            raise InvalidGroupError("a group needs at least one element")
        table = np.asarray(mul, dtype=np.int64)
        if table.shape != (n, n):
            raise InvalidGroupError(f"multiplication table must be {n}x{n}, got {table.shape}")
        if table.min() < 0 or table.max() >= n:
            raise InvalidGroupError("multiplication table has out-of-range entries")
        ident = [e for e in range(n) if (table[e] == np.arange(n)).all() and (table[:, e] == np.arange(n)).all()]
        if not ident:
            raise InvalidGroupError("no identity element in multiplication table")
        e = ident[0]
        if e != 0:
            perm = [e] + [i for i in range(n) if i != e]
            pos = np.empty(n, dtype=np.int64)
            pos[perm] = np.arange(n)
            table = pos[table[np.ix_(perm, perm)]]
            elements = [elements[i] for i in perm]
        if validate:
            _check_group_law(table)
        inv = []
        for a in range(n):
            hits = np.flatnonzero(table[a] == 0)
            if len(hits) != 1 or table[hits[0], a] != 0:
                raise InvalidGroupError(f"element {elements[a]!r} has no consistent inverse")
            inv.append(int(hits[0]))
        return cls(name, tuple(str(x) for x in elements),
                   tuple(tuple(int(v) for v in row) for row in table), tuple(inv))

    # -- basic data -----------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        result, base = 0, g
        while k:
            if k & 1:
                result = self.mul[result][base]
            base = self.mul[base][base]
            k >>= 1
        return result

    def conj(self, x: int, g: int) -> int:
        """Return x g x^-1."""
        return self.mul[self.mul[x][g]][self.inv[x]]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = self.mul[x][g]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def exponent(self) -> int:
        e = 1
        for o in self.element_orders:
            e = e * o // gcd(e, o)
        return e

    @cached_property
    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.order) for b in range(a))

    @cached_property
    def prime(self) -> int | None:
        """The prime p if this is a non-trivial p-group, else None."""
        n = self.order
        if n == 1:
            return None
        p = next(q for q in range(2, n + 1) if n % q == 0)
        while n % p == 0:
            n //= p
        return p if n == 1 else None

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    # -- conjugacy --------------------------------------------------------
    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.order
        out = []
        for g in range(self.order):
            if seen[g]:
                continue
            cls = sorted({self.conj(x, g) for x in range(self.order)})
            for c in cls:
                seen[c] = True
            out.append(tuple(cls))
        return tuple(out)

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        idx = [0] * self.order
        for k, cls in enumerate(self.classes):
            for g in cls:
                idx[g] = k
        return tuple(idx)

    def class_power_map(self, k: int) -> tuple[int, ...]:
        """Index of the class of g^k for a representative g of every class."""
        return tuple(self.class_of[self.power(c[0], k)] for c in self.classes)

    # -- subgroups ----------------------------------------------------------
    def generate(self, gens: Iterable[int]) -> frozenset[int]:
        gens = [g for g in gens if g != 0]
        members = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul[x][g]
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(set(members))))

    @cached_property
    def all_subgroups(self) -> tuple["Subgroup", ...]:
        """All subgroups: cyclic subgroups closed under pairwise joins."""
        subs = {self.generate([g]) for g in range(self.order)}
        frontier = set(subs)
        while frontier:
            new = set()
            for a in frontier:
                for b in subs:
                    if a <= b or b <= a:
                        continue
                    j = self.generate(sorted(a | b))
                    if j not in subs:
                        new.add(j)
            subs |= new
            frontier = new
        return tuple(sorted((self.subgroup(s) for s in subs), key=lambda h: (h.order, h.members)))

    @cached_property
    def center(self) -> "Subgroup":
        return self.subgroup(z for z in range(self.order)
                             if all(self.mul[z][g] == self.mul[g][z] for g in range(self.order)))

    @cached_property
    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,))

    @cached_property
    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def _subgroup_groups(self) -> dict:
        return {}

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "elements": list(self.elements),
                "mul": [list(r) for r in self.mul]}


def _check_group_law(table: np.ndarray) -> None:
    n = table.shape[0]
    left = table[table, :]  # (ab)c indexed [a, b, c]
    right = table[:, table]  # a(bc) indexed [a, b, c]
    if not np.array_equal(left, right):
        a, b, c = (int(v[0]) for v in np.nonzero(left != right))
        raise InvalidGroupError(f"multiplication table is not associative at ({a}, {b}, {c})")
    for a in range(n):
        if len(set(table[a].tolist())) != n or len(set(table[:, a].tolist())) != n:
            raise InvalidGroupError(f"row/column {a} of the table is not a permutation")


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        if not self.members or self.members[0] != 0:
            raise InvalidGroupError("subgroup must contain the identity")

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, g: int) -> bool:
        return g in self._member_set

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def is_closed(self) -> bool:
        G = self.parent
        s = self._member_set
        return all(G.mul[a][b] in s for a in self.members for b in self.members) and \
            all(G.inv[a] in s for a in self.members)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self._member_set <= other._member_set

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conj(x, h) in self._member_set for x in range(G.order) for h in self.members)

    @cached_property
    def is_abelian(self) -> bool:
        G = self.parent
        return all(G.mul[a][b] == G.mul[b][a] for a in self.members for b in self.members)

    @cached_property
    def exponent(self) -> int:
        e = 1
        for h in self.members:
            o = self.parent.element_orders[h]
            e = e * o // gcd(e, o)
        return e

    @property
    def as_group(self) -> FiniteGroup:
        """This subgroup as a standalone group; element i is ``members[i]``.

        The materialised group is cached on the parent, so equal subgroups share it.
        """
        cache = self.parent._subgroup_groups
        if self.members not in cache:
            cache[self.members] = self._materialise()
        return cache[self.members]

    def _materialise(self) -> FiniteGroup:
        G = self.parent
        pos = {m: i for i, m in enumerate(self.members)}
        mul = [[pos[G.mul[a][b]] for b in self.members] for a in self.members]
        inv = tuple(pos[G.inv[a]] for a in self.members)
        return FiniteGroup(f"{G.name}:sub{self.order}", tuple(G.elements[m] for m in self.members),
                           tuple(tuple(r) for r in mul), inv)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.name}, members={list(self.members)})"


@dataclass(frozen=True)
class QuotientMap:
    source: FiniteGroup
    kernel: Subgroup
    target: FiniteGroup
    image: tuple[int, ...] = field(repr=False)

    def __call__(self, g: int) -> int:
        return self.image[g]


def conjugacy_classes(G: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    return G.classes


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return [H for H in G.all_subgroups if H.is_normal()]


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, QuotientMap]:
    if N.parent is not G:
        raise InvalidGroupError("subgroup belongs to a different group")
    if not N.is_normal():
        raise InvalidGroupError("quotient by a non-normal subgroup")
    coset_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        k = len(reps)
        reps.append(g)
        for n in N.members:
            coset_of[G.mul[g][n]] = k
    mul = [[coset_of[G.mul[a][b]] for b in reps] for a in reps]
    inv = tuple(coset_of[G.inv[a]] for a in reps)
    labels = tuple(G.elements[r] + "N" if r else "e" for r in reps)
    Q = FiniteGroup(f"{G.name}/N{N.order}", labels, tuple(tuple(r) for r in mul), inv)
    return Q, QuotientMap(G, N, Q, tuple(coset_of))


def xi_set(G: FiniteGroup, tbl) -> list[Subgroup]:
    """Distinct kernels of the irreducible characters in ``tbl``."""
    if tbl.group is not G:
        raise InvalidGroupError("character table belongs to a different group")
    kernels = {chi.kernel().members for chi in tbl.characters}
    return sorted((Subgroup(G, k) for k in kernels), key=lambda h: (h.order, h.members))


# -- constructors ---------------------------------------------------------------

def cyclic_group(n: int, name: str | None = None) -> FiniteGroup:
    if n < 1:
        raise InvalidGroupError("cyclic group order must be positive")
    labels = ["e"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    return FiniteGroup(name or f"C{n}", tuple(labels), mul, inv)


def abelian_group(invariants: Sequence[int], name: str | None = None) -> FiniteGroup:
    """Direct product of cyclic groups of the given orders (lexicographic elements)."""
    invariants = [int(d) for d in invariants]
    if any(d < 1 for d in invariants):
        raise InvalidGroupError("abelian invariants must be positive")
    if len(invariants) == 1:
        return cyclic_group(invariants[0], name)
    tuples = list(itertools.product(*(range(d) for d in invariants)))
    pos = {t: i for i, t in enumerate(tuples)}
    mul = tuple(tuple(pos[tuple((x + y) % d for x, y, d in zip(a, b, invariants))] for b in tuples)
                for a in tuples)
    inv = tuple(pos[tuple((-x) % d for x, d in zip(a, invariants))] for a in tuples)
    labels = tuple("(" + ",".join(map(str, t)) + ")" for t in tuples)
    return FiniteGroup(name or "x".join(f"C{d}" for d in invariants) or "C1", labels, mul, inv)


def heisenberg_group(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over F_p: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')."""
    tuples = list(itertools.product(range(p), repeat=3))
    pos = {t: i for i, t in enumerate(tuples)}

    def prod(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    mul = tuple(tuple(pos[prod(a, b)] for b in tuples) for a in tuples)
    inv = tuple(next(pos[b] for b in tuples if prod(a, b) == (0, 0, 0)) for a in tuples)
    labels = tuple("(" + ",".join(map(str, t)) + ")" for t in tuples)
    return FiniteGroup(f"heisenberg-{p ** 3}", labels, mul, inv)


_ABELIAN_NAME = re.compile(r"^C\d+(xC\d+)*$")


@lru_cache(maxsize=None)
def builtin_group(name: str) -> FiniteGroup:
    """Named groups: ``heisenberg-p^3`` for odd p, ``trivial``, and ``C9``, ``C3xC3``, ...

    Cached, so every lookup of a name returns the same object and shares its
    character table and DT computations.
    """
    if name == "trivial":
        return cyclic_group(1, "trivial")
    m = re.fullmatch(r"heisenberg-(\d+)", name)
    if m:
        n = int(m.group(1))
        p = round(n ** (1 / 3))
        for q in (p - 1, p, p + 1):
            if q > 2 and q ** 3 == n and all(q % r for r in range(2, q)):
                return heisenberg_group(q)
        raise InvalidGroupError(f"unknown builtin group {name!r}")
    if _ABELIAN_NAME.match(name):
        return abelian_group([int(x) for x in name[1:].split("xC")], name)
    raise InvalidGroupError(f"unknown builtin group {name!r}")


def load_group(doc) -> FiniteGroup:
    """Load a group from its JSON document (table, abelian invariants or builtin name)."""
    if isinstance(doc, str):
        return builtin_group(doc)
    if not isinstance(doc, dict):
        raise InvalidGroupError("group description must be a JSON object or builtin name")
    if "builtin" in doc:
        return builtin_group(str(doc["builtin"]))
    if "abelian" in doc:
        inv = doc["abelian"]
        if not isinstance(inv, list) or not all(isinstance(d, int) for d in inv):
            raise InvalidGroupError("'abelian' must be a list of integers")
        G = abelian_group(inv, doc.get("name"))
        return G
    if "mul" in doc:
        mul = doc["mul"]
        n = doc.get("order", len(mul))
        elements = doc.get("elements") or [str(i) for i in range(n)]
        if len(elements) != n or len(mul) != n:
            raise InvalidGroupError("order, elements and mul disagree in size")
        try:
            return FiniteGroup.from_table(doc.get("name", f"G{n}"), elements, mul)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InvalidGroupError):
                raise
            raise InvalidGroupError(f"malformed multiplication table: {exc}") from exc
    raise InvalidGroupError("group description needs 'mul', 'abelian' or 'builtin'")
