"""The finite group DT = Nrd(M^x) / Nrd(Z_p[G]^x) for a p-group G.

Both groups are read modulo p^K: A_K is the product of the unit groups of the
truncated component rings and B_K is generated by reduced norms of generators
of (Z/p^K)[G]^x.  Raising 1 + p^K O onto 1 + p^{K+1} O by the p-th power map
shows that once |A_K/B_K| = |A_{K+1}/B_{K+1}| the quotient never changes again,
so the first such K gives DT exactly.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field, replace
import numpy as np

from ..errors import InputError, PrecisionExhausted, UnsupportedGroupError
from ..groups import FiniteGroup
from .components import ComponentUnits, WedderburnData, nrd_batch, wedderburn
from .lattice import ModLattice, QuotientStructure
from .local_ring import LocalRing

__all__ = [
    "DTGroup",
    "FiniteAbelianGroup",
    "default_cap",
    "dlog_vector",
    "dt_at_precision",
    "dt_class",
    "dt_compute",
    "dt_membership",
    "group_ring_unit_generators",
]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True, eq=False)
class DTGroup(FiniteAbelianGroup):
    """DT(Z_p[G]) read at a stabilised precision, with a presentation for class computations."""

    wd: WedderburnData
    precision: int
    orders: tuple[tuple[int, int], ...]
    stabilized: bool
    generators: tuple[ComponentUnits, ...] = field(repr=False)
    _lattice: ModLattice = field(repr=False)
    _columns: tuple[int, ...] = field(repr=False)
    _structure: QuotientStructure = field(repr=False)

    @property
    def group(self) -> FiniteGroup:
        return self.wd.group

    @property
    def p(self) -> int:
        return self.wd.p

    def bounds(self) -> dict:
        p, n = self.p, self.group.order
        return {"lower": p - 1, "upper": (p - 1) * n // p if n > 1 else 1}

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "p": self.p,
            "precision": self.precision,
            "stabilized": self.stabilized,
            "quotient_orders": [{"precision": k, "order": o} for k, o in self.orders],
            "invariant_factors": list(self.invariant_factors),
            "order": self.order,
            "exponent": self.exponent,
            "components": self.wd.to_json()["components"],
            "generators": [g.to_json() for g in self.generators],
        }


def default_cap(G: FiniteGroup, p: int) -> int:
    n = 0
    k = G.order
    while k % p == 0:
        k //= p
        n += 1
    return 2 * (n + 2)


# -- generators of (Z/p^K)[G]^x ------------------------------------------------

def _generating_set(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = {0}
    for g in range(G.order):
        if g not in span:
            gens.append(g)
            span = set(G.generate(gens))
    return gens


def _right_mul_perm(G: FiniteGroup, s: int) -> np.ndarray:
    """Index array idx with (b*s)[idx[h]] = b[h]."""
    return np.array([G.mul[h][s] for h in range(G.order)], dtype=np.int64)


def _ideal_layers(G: FiniteGroup, p: int, K: int) -> list[list[np.ndarray]]:
    """F_p-bases (as lifts) of m^j / m^{j+1} for m = (p, augmentation ideal) in (Z/p^K)[G]."""
    P = p ** K
    n = G.order
    gens = _generating_set(G)
    perms = [_right_mul_perm(G, s) for s in gens]
    cur = ModLattice(n, P)
    first = np.zeros(n, dtype=np.int64)
    first[0] = p
    cur.insert(first)
    for h in range(1, n):
        v = np.zeros(n, dtype=np.int64)
        v[h], v[0] = 1, P - 1
        cur.insert(v)
    layers = []
    while cur.rows:
        basis = [cur.rows[c] for c in sorted(cur.rows)]
        nxt = ModLattice(n, P)
        for b in basis:
            nxt.insert((p * b) % P)
            for idx in perms:
                bs = np.zeros(n, dtype=np.int64)
                bs[idx] = b
                nxt.insert((bs - b) % P)
        work = nxt.copy()
        reps = []
        for b in basis:
            if work.insert(b):
                reps.append(b)
        layers.append(reps)
        cur = nxt
    return layers


def group_ring_unit_generators(G: FiniteGroup, p: int, K: int) -> list[np.ndarray]:
    """Teichmueller lift of a primitive root, the group elements, and 1 + x over layer bases."""
    from .local_ring import primitive_root

    P = p ** K
    n = G.order
    gens = []
    t = np.zeros(n, dtype=np.int64)
    t[0] = pow(primitive_root(p), P // p, P)
    gens.append(t)
    for g in range(1, n):
        e = np.zeros(n, dtype=np.int64)
        e[g] = 1
        gens.append(e)
    count = 0
    for layer in _ideal_layers(G, p, K):
        for x in layer:
            y = x.copy()
            y[0] = (y[0] + 1) % P
            gens.append(y)
            count += 1
    if count != n * K - 1:
        raise ArithmeticError(f"layer bases have {count} elements, expected {n * K - 1}")
    return gens


# -- coordinates ----------------------------------------------------------------

def _offsets(rings: list[LocalRing]) -> list[int]:
    out, total = [], 0
    for R in rings:
        out.append(total)
        total += R.coordinates
    out.append(total)
    return out


def dlog_vector(units, rings: list[LocalRing]) -> list[int]:
    coords: list[int] = []
    for R, u in zip(rings, units):
        coords.extend(R.dlog(u))
    return coords


def _modulus(rings: list[LocalRing], p: int) -> int:
    return (p - 1) * p ** max(R.exponent_bound for R in rings)


@dataclass
class _Presentation:
    lattice: ModLattice
    rings: list[LocalRing]


def _presentation(wd: WedderburnData, K: int) -> _Presentation:
    p = wd.p
    rings = wd.rings(K)
    offs = _offsets(rings)
    R_total = offs[-1]
    L = ModLattice(R_total, _modulus(rings, p))
    for R, off in zip(rings, offs):
        for row in R.relation_rows:
            v = np.zeros(R_total, dtype=L.dtype)
            v[off:off + R.coordinates] = row
            L.insert(v)
    gens = group_ring_unit_generators(wd.group, p, K)
    images = nrd_batch(np.array(gens), wd, K)
    for k in range(len(gens)):
        L.insert(dlog_vector([img[k] for img in images], rings))
    return _Presentation(L, rings)


def dt_at_precision(wd: WedderburnData, K: int) -> DTGroup:
    """A_K / B_K with its invariant factors and class-coordinate data."""
    pres = _presentation(wd, K)
    L = pres.lattice
    F, rel = L.quotient_relations()
    structure = QuotientStructure(rel, L.quotient_order())
    rings = pres.rings
    offs = _offsets(rings)
    gens = []
    for w in structure.generators():
        full = [0] * offs[-1]
        for col, coeff in zip(F, w):
            full[col] = coeff
        units = []
        for R, off in zip(rings, offs):
            units.append(R.from_coordinates(full[off:off + R.coordinates]))
        gens.append(ComponentUnits(wd, K, units))
    return DTGroup(structure.invariants, wd, K, ((K, L.quotient_order()),), False, tuple(gens), L,
                   tuple(F), structure)


_CACHE: "weakref.WeakKeyDictionary[FiniteGroup, dict]" = weakref.WeakKeyDictionary()


def dt_compute(G: FiniteGroup, p: int | None = None, precision: int | None = None,
               cap: int | None = None) -> DTGroup:
    """DT(Z_p[G]) for a p-group G, raising the precision until the quotient order repeats."""
    if p is None:
        p = G.prime
        if p is None:
            raise UnsupportedGroupError("the trivial group needs an explicit prime")
    wd = wedderburn(G, p)
    key = (p, precision, cap)
    cache = _CACHE.setdefault(G, {})
    if key in cache:
        return cache[key]
    if precision is not None:
        if precision < 1:
            raise InputError("precision must be at least 1")
        result = dt_at_precision(wd, precision)
    else:
        cap = default_cap(G, p) if cap is None else cap
        history: list[tuple[int, int]] = []
        prev = None
        result = None
        for K in range(1, cap + 1):
            cur = dt_at_precision(wd, K)
            history.append((K, cur.order))
            if prev is not None and prev.order == cur.order:
                result = replace(prev, orders=tuple(history), stabilized=True)
                break
            prev = cur
        if result is None:
            raise PrecisionExhausted(
                f"quotient orders did not repeat up to precision {cap} for {G.name} at p={p}",
                [o for _, o in history])
    cache[key] = result
    return result


def _coordinates(x: ComponentUnits, dt: DTGroup) -> list[int]:
    if x.wd is not dt.wd:
        raise InputError("unit tuple and DT group belong to different groups")
    if x.precision < dt.precision:
        raise InputError(f"unit tuple precision {x.precision} is below the DT precision {dt.precision}")
    if x.precision > dt.precision:
        x = x.truncate(dt.precision)
    rings = x.rings
    w = dt._lattice.reduce(dlog_vector(x.units, rings))
    return list(dt._structure.coordinates([int(w[c]) for c in dt._columns]))


def dt_class(x: ComponentUnits, dt: DTGroup) -> tuple[int, ...]:
    """Coordinates of the class of x in Z/d_1 + ... + Z/d_r."""
    return tuple(_coordinates(x, dt))


def dt_membership(x: ComponentUnits, dt: DTGroup) -> bool:
    """Whether x lies in Nrd(Z_p[G]^x), decided at the stabilised precision."""
    if x.wd is not dt.wd:
        raise InputError("unit tuple and DT group belong to different groups")
    if x.precision < dt.precision:
        raise InputError(f"unit tuple precision {x.precision} is below the DT precision {dt.precision}")
    if x.precision > dt.precision:
        x = x.truncate(dt.precision)
    return dt._lattice.contains(dlog_vector(x.units, x.rings))
