"""Wedderburn components of Q_p[G] for a p-group and truncated unit tuples over them."""

from __future__ import annotations

import random
import weakref
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd

import numpy as np

from ..center import CenterElement, representation
from ..characters import CharacterTable, ClassFunction, character_table
from ..errors import InputError, UnsupportedGroupError
from ..groups import FiniteGroup, QuotientMap, Subgroup, quotient_group
from .local_ring import LocalRing, local_ring

__all__ = [
    "ComponentUnits",
    "WedderburnComponent",
    "WedderburnData",
    "component_units_from_center",
    "congruence_check",
    "nrd_batch",
    "nrd_truncated",
    "project_quotient",
    "random_component_units",
    "wedderburn",
]


@dataclass(frozen=True)
class WedderburnComponent:
    """One simple factor M_n(Q_p(zeta_{p^m})) with its Galois orbit of characters.

    ``orbit`` lists pairs (character index, a) meaning that character is the
    representative twisted by zeta -> zeta^a.
    """

    index: int
    character: int
    m: int
    conductor: int
    degree: int
    orbit: tuple[tuple[int, int], ...]

    @property
    def field_degree(self) -> int:
        return len(self.orbit)

    def to_json(self) -> dict:
        return {"character": self.character, "conductor": self.conductor, "matrix_size": self.degree,
                "orbit": [i for i, _ in self.orbit]}


@dataclass(frozen=True, eq=False)
class WedderburnData:
    group: FiniteGroup
    p: int
    table: CharacterTable
    components: tuple[WedderburnComponent, ...]

    def __len__(self) -> int:
        return len(self.components)

    def locate(self, char_index: int) -> tuple[int, int]:
        """(component index, a) with character = component representative twisted by a."""
        return self._where[char_index]

    @property
    def _where(self) -> dict[int, tuple[int, int]]:
        cache = self.__dict__.get("_where_cache")
        if cache is None:
            cache = {j: (c.index, a) for c in self.components for j, a in c.orbit}
            object.__setattr__(self, "_where_cache", cache)
        return cache

    def rings(self, K: int) -> list[LocalRing]:
        return [local_ring(self.p, c.m, K) for c in self.components]

    def dimension(self) -> int:
        return sum(c.degree ** 2 * c.field_degree for c in self.components)

    def to_json(self) -> dict:
        return {"p": self.p, "components": [c.to_json() for c in self.components]}


def _log_p(n: int, p: int) -> int:
    m = 0
    while n % p == 0:
        n //= p
        m += 1
    if n != 1:
        raise ValueError(f"{n * p ** m} is not a power of {p}")
    return m


_WEDDERBURN: "weakref.WeakKeyDictionary[FiniteGroup, dict]" = weakref.WeakKeyDictionary()


def wedderburn(G: FiniteGroup, p: int) -> WedderburnData:
    """Galois orbits of irreducible characters, one per simple factor of Q_p[G]."""
    cache = _WEDDERBURN.setdefault(G, {})
    if p in cache:
        return cache[p]
    if p % 2 == 0 or not all(p % q for q in range(2, int(p ** 0.5) + 1)) or p < 3:
        raise UnsupportedGroupError(f"p = {p} is not an odd prime")
    if not G.is_p_group(p):
        raise UnsupportedGroupError(f"{G.name} is not a {p}-group")
    tbl = character_table(G)
    seen: set[int] = set()
    comps = []
    for i, chi in enumerate(tbl.characters):
        if i in seen:
            continue
        N = chi.conductor
        m = _log_p(N, p)
        orbit = []
        for a in range(1, max(N, 2)):
            if gcd(a, N) != 1:
                continue
            j = tbl.galois_index(i, a)
            if j not in seen:
                seen.add(j)
                orbit.append((j, a))
        phi = 1 if m == 0 else (p - 1) * p ** (m - 1)
        if len(orbit) != phi:
            raise ArithmeticError(f"character field of character {i} is smaller than Q(zeta_{N})")
        comps.append(WedderburnComponent(len(comps), i, m, N, int(chi.degree.to_fraction()), tuple(orbit)))
    wd = WedderburnData(G, p, tbl, tuple(comps))
    if wd.dimension() != G.order:
        raise ArithmeticError("Wedderburn dimensions do not add up to the group order")
    cache[p] = wd
    return wd


# -- truncated unit tuples ------------------------------------------------------

class ComponentUnits:
    """(u_0, ..., u_t) with u_i a unit of O_i / p^K."""

    __slots__ = ("wd", "precision", "units")

    def __init__(self, wd: WedderburnData, precision: int, units):
        rings = wd.rings(precision)
        if len(units) != len(rings):
            raise InputError("one unit per Wedderburn component is required")
        arrs = []
        for R, u in zip(rings, units):
            a = R.vec(u)
            if len(a) != R.d:
                raise InputError("component unit has the wrong length")
            if not R.is_unit(a):
                raise InputError("component value is not a unit")
            arrs.append(a)
        self.wd = wd
        self.precision = precision
        self.units = tuple(arrs)

    @property
    def rings(self) -> list[LocalRing]:
        return self.wd.rings(self.precision)

    @classmethod
    def ones(cls, wd: WedderburnData, K: int) -> "ComponentUnits":
        return cls(wd, K, [R.one() for R in wd.rings(K)])

    def _check(self, other: "ComponentUnits") -> None:
        if other.wd is not self.wd or other.precision != self.precision:
            raise InputError("component units of different groups or precisions")

    def __mul__(self, other: "ComponentUnits") -> "ComponentUnits":
        self._check(other)
        return ComponentUnits(self.wd, self.precision,
                              [R.mul(a, b) for R, a, b in zip(self.rings, self.units, other.units)])

    def inverse(self) -> "ComponentUnits":
        return ComponentUnits(self.wd, self.precision, [R.inverse(a) for R, a in zip(self.rings, self.units)])

    def __pow__(self, k: int) -> "ComponentUnits":
        return ComponentUnits(self.wd, self.precision, [R.pow(a, k) for R, a in zip(self.rings, self.units)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComponentUnits):
            return NotImplemented
        return other.wd is self.wd and other.precision == self.precision and \
            all(np.array_equal(a, b) for a, b in zip(self.units, other.units))

    def __hash__(self) -> int:
        return hash((self.precision, tuple(tuple(int(x) for x in a) for a in self.units)))

    def truncate(self, K: int) -> "ComponentUnits":
        if K > self.precision:
            raise InputError(f"cannot raise precision from {self.precision} to {K}")
        return ComponentUnits(self.wd, K, [a % self.wd.p ** K for a in self.units])

    def residues(self) -> list[int]:
        return [R.residue(a) for R, a in zip(self.rings, self.units)]

    def is_one(self) -> bool:
        return all(R.equal(a, R.one()) for R, a in zip(self.rings, self.units))

    def to_json(self) -> list[list[int]]:
        return [[int(x) for x in a] for a in self.units]

    def __repr__(self) -> str:
        return f"ComponentUnits(K={self.precision}, {self.to_json()})"


def random_component_units(wd: WedderburnData, K: int, rng: random.Random) -> ComponentUnits:
    """Uniform sample: each component uniform among units of O_i / p^K."""
    units = []
    for R in wd.rings(K):
        v = [rng.randrange(R.P) for _ in range(R.d)]
        while v[0] % R.p == 0:
            v[0] = rng.randrange(R.P)
        units.append(v)
    return ComponentUnits(wd, K, units)


# -- reduced norms mod p^K ------------------------------------------------------

def _cyclic_mul(a: np.ndarray, b: np.ndarray, P: int) -> np.ndarray:
    """Product in (Z/P)[x]/(x^N - 1) for batches of shape (k, N)."""
    N = a.shape[1]
    out = np.zeros_like(a)
    for i in range(N):
        col = a[:, i:i + 1]
        if col.any():
            out = (out + col * np.roll(b, i, axis=1)) % P
    return out


def _cyclic_to_ring(c: np.ndarray, N: int, R: LocalRing) -> np.ndarray:
    """Batch of cyclic vectors over zeta_N, known to lie in Q(zeta_{p^m}), to ring elements."""
    p, P = R.p, R.P
    if N == 1:
        z = c % P
    else:
        k = c.shape[0]
        blocks = c.reshape(k, p, N // p)
        z = ((blocks[:, :-1, :] - blocks[:, -1:, :]) % P).reshape(k, -1)
    step = N // R.conductor
    keep = z[:, ::step]
    mask = np.ones(z.shape[1], dtype=bool)
    mask[::step] = False
    if z[:, mask].any():
        raise ArithmeticError("reduced norm does not lie in the component field")
    keep = keep[:, :R.d]
    if R.d == 1:
        return keep % P
    return (keep @ R._zeta_to_t) % P


def _component_nrd(Y: np.ndarray, wd: WedderburnData, comp: WedderburnComponent, R: LocalRing) -> np.ndarray:
    G = wd.group
    chi = wd.table.characters[comp.character]
    rep = representation(chi)
    N, n, P = rep.root_order, rep.dim, R.P
    k = Y.shape[0]
    dt = R.dtype
    entries = [[np.zeros((k, N), dtype=dt) for _ in range(n)] for _ in range(n)]
    for g in range(G.order):
        col_y = Y[:, g]
        for j in range(n):
            e = entries[rep.perm[g][j]][j]
            e[:, rep.exps[g][j]] = (e[:, rep.exps[g][j]] + col_y) % P
    if n == 1:
        det = entries[0][0]
    else:
        det = np.zeros((k, N), dtype=dt)
        for perm in permutations(range(n)):
            sign = 1
            for i in range(n):
                for j in range(i + 1, n):
                    if perm[i] > perm[j]:
                        sign = -sign
            term = entries[0][perm[0]]
            for i in range(1, n):
                term = _cyclic_mul(term, entries[i][perm[i]], P)
            det = (det + sign * term) % P
    return _cyclic_to_ring(det, N, R)


def nrd_batch(Y, wd: WedderburnData, K: int) -> list[np.ndarray]:
    """Reduced norms of a batch of elements of (Z/p^K)[G], one array (batch x d_i) per component."""
    rings = wd.rings(K)
    dt = rings[0].dtype
    Y = np.asarray(Y, dtype=dt) % (wd.p ** K)
    if Y.ndim == 1:
        Y = Y[None, :]
    return [_component_nrd(Y, wd, c, R) for c, R in zip(wd.components, rings)]


def nrd_truncated(y, wd: WedderburnData, K: int) -> ComponentUnits:
    """Reduced norm of a unit of (Z/p^K)[G]; the trivial component is the augmentation."""
    y = [int(v) % wd.p ** K for v in y]
    if len(y) != wd.group.order:
        raise InputError("group ring element has the wrong length")
    if sum(y) % wd.p == 0:
        raise InputError("not a unit: augmentation is divisible by p")
    comps = nrd_batch(np.array([y]), wd, K)
    return ComponentUnits(wd, K, [c[0] for c in comps])


def _fraction_mod(q: Fraction, P: int, p: int) -> int:
    if q.denominator % p == 0:
        raise InputError("value is not p-integral")
    return q.numerator * pow(q.denominator, -1, P) % P


def component_units_from_center(x: CenterElement, wd: WedderburnData, K: int) -> ComponentUnits:
    """Read a Q_p-rational centre element with p-integral unit components as a unit tuple."""
    if x.table is not wd.table:
        raise InputError("centre element and Wedderburn data belong to different groups")
    units = []
    for comp, R in zip(wd.components, wd.rings(K)):
        val = x.comps[comp.character]
        for j, a in comp.orbit:
            if x.comps[j] != val.galois_act(a):
                raise InputError("centre element is not rational over Q_p")
        if comp.conductor % val.conductor:
            raise InputError("component value lies outside its character field")
        z = [_fraction_mod(q, R.P, R.p) for q in val.coefficients_at(comp.conductor)]
        units.append(R.from_zeta_basis(z))
    return ComponentUnits(wd, K, units)


def congruence_check(x: ComponentUnits, i: int) -> bool:
    """u_i = u_0^{n_i} modulo the maximal ideal of O_i."""
    if not 1 <= i < len(x.units):
        raise InputError("congruence check needs a non-trivial component index")
    p = x.wd.p
    r = x.residues()
    return r[i] == pow(r[0], x.wd.components[i].degree, p)


# -- projection to quotients ----------------------------------------------------

_QUOTIENTS: "weakref.WeakKeyDictionary[FiniteGroup, dict]" = weakref.WeakKeyDictionary()


def cached_quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, QuotientMap]:
    cache = _QUOTIENTS.setdefault(G, {})
    if N.members not in cache:
        cache[N.members] = quotient_group(G, N)
    return cache[N.members]


def _inflation_map(wd: WedderburnData, Q: FiniteGroup, qmap: QuotientMap, wdq: WedderburnData):
    """For each component of the quotient, (component of G, Galois exponent)."""
    G = wd.group
    out = []
    for comp in wdq.components:
        psi = wdq.table.characters[comp.character]
        inflated = ClassFunction.from_function(G, lambda g, psi=psi: psi(qmap(g)))
        out.append(wd.locate(wd.table.index(inflated)))
    return out


def project_quotient(x: ComponentUnits, N: Subgroup) -> ComponentUnits:
    """Image of a unit tuple under the projection Z_p[G] -> Z_p[G/N] on maximal orders."""
    wd = x.wd
    if N.parent is not wd.group:
        raise InputError("subgroup of a different group")
    if not N.is_normal():
        raise InputError("projection needs a normal subgroup")
    Q, qmap = cached_quotient(wd.group, N)
    wdq = wedderburn(Q, wd.p)
    rings = x.rings
    units = []
    for i, a in _inflation_map(wd, Q, qmap, wdq):
        units.append(rings[i].galois(x.units[i], a))
    return ComponentUnits(wdq, x.precision, units)
