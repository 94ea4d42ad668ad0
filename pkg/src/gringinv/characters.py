"""Irreducible characters of odd-order groups and monomial representations.

Abelian groups get their table from the dual group directly.  Nonabelian
tables come from Dixon's modular version of the Burnside algorithm: common
eigenvectors of the class-multiplication matrices are found over F_q with
q = 1 (mod exponent), and every value is lifted back to an exact cyclotomic
number through the eigenvalue multiplicities of the representing matrix.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt
from typing import Sequence

from .cyclotomic import Cyc, root_of_unity
from .errors import UnsupportedGroupError
from .groups import FiniteGroup, Subgroup

__all__ = [
    "CharacterTable",
    "ClassFunction",
    "MatrixRep",
    "adams",
    "character_table",
    "inner_product",
    "kernel",
    "monomial_rep",
    "restrict",
]

ONE = Cyc.rational(1)
ZERO = Cyc.rational(0)


class ClassFunction:
    """A Cyc-valued class function, stored by conjugacy class.

    Irreducible characters, Adams images, restrictions and virtual
    characters all share this type; irreducibility is a property check.
    """

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values: Sequence[Cyc]):
        if len(values) != len(group.classes):
            raise ValueError("one value per conjugacy class is required")
        self.group = group
        self.values = tuple(v if isinstance(v, Cyc) else Cyc.rational(v) for v in values)

    @classmethod
    def from_function(cls, group: FiniteGroup, f) -> "ClassFunction":
        return cls(group, [f(c[0]) for c in group.classes])

    def __call__(self, g: int) -> Cyc:
        return self.values[self.group.class_of[g]]

    @property
    def degree(self) -> Cyc:
        return self.values[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    def __hash__(self) -> int:
        return hash((id(self.group), self.values))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        _same_group(self, other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        _same_group(self, other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            _same_group(self, other)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.group, [a * other for a in self.values])

    __rmul__ = __mul__

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [v.conjugate() for v in self.values])

    def inner(self, other: "ClassFunction") -> Cyc:
        return inner_product(self, other)

    def adams(self, k: int) -> "ClassFunction":
        return adams(self, k)

    def restrict(self, H: Subgroup) -> "ClassFunction":
        return restrict(self, H)

    def kernel(self) -> Subgroup:
        return kernel(self)

    def galois_act(self, k: int) -> "ClassFunction":
        return ClassFunction(self.group, [v.galois_act(k) for v in self.values])

    @property
    def conductor(self) -> int:
        n = 1
        for v in self.values:
            n = n * v.conductor // gcd(n, v.conductor)
        return n

    def is_character(self) -> bool:
        """Whether this is a (not necessarily irreducible) proper character of its group."""
        tbl = character_table(self.group)
        return all((m := inner_product(self, chi)).is_rational() and m.to_fraction().denominator == 1
                   and m.to_fraction() >= 0 for chi in tbl.characters)

    def is_irreducible(self) -> bool:
        return self.degree.is_rational() and self.degree.to_fraction() > 0 and inner_product(self, self) == 1

    def __repr__(self) -> str:
        return f"ClassFunction({self.group.name}, {list(self.values)})"

    def to_json(self) -> dict:
        deg = self.degree
        if deg.is_rational():
            q = deg.to_fraction()
            deg_json = q.numerator if q.denominator == 1 else str(q)
        else:
            deg_json = deg.to_json()
        return {"degree": deg_json,
                "values": [v.to_json() for v in self.values],
                "kernel_size": self.kernel().order}


Character = ClassFunction


def _same_group(a: ClassFunction, b: ClassFunction) -> None:
    if a.group is not b.group:
        raise ValueError("class functions live on different groups")


def inner_product(chi: ClassFunction, phi: ClassFunction) -> Cyc:
    """(1/|G|) * sum_g chi(g) * conj(phi(g))."""
    _same_group(chi, phi)
    G = chi.group
    total = ZERO
    for cls, a, b in zip(G.classes, chi.values, phi.values):
        if a and b:
            total = total + len(cls) * a * b.conjugate()
    return total * Fraction(1, G.order)


def adams(chi: ClassFunction, k: int) -> ClassFunction:
    """The k-th Adams operator: g -> chi(g^k)."""
    if k < 1:
        raise ValueError("Adams operators are indexed by positive integers")
    pm = chi.group.class_power_map(k)
    return ClassFunction(chi.group, [chi.values[j] for j in pm])


def restrict(chi: ClassFunction, H: Subgroup) -> ClassFunction:
    if H.parent is not chi.group:
        raise ValueError("subgroup of a different group")
    Hg = H.as_group
    return ClassFunction(Hg, [chi(H.members[c[0]]) for c in Hg.classes])


def kernel(chi: ClassFunction) -> Subgroup:
    G = chi.group
    d = chi.degree
    return G.subgroup(g for g in range(G.order) if chi(g) == d)


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    characters: tuple[ClassFunction, ...]

    def __len__(self) -> int:
        return len(self.characters)

    def __getitem__(self, i: int) -> ClassFunction:
        return self.characters[i]

    def __iter__(self):
        return iter(self.characters)

    @cached_property
    def _index(self) -> dict:
        return {chi.values: i for i, chi in enumerate(self.characters)}

    def index(self, chi: ClassFunction) -> int:
        if chi.group is not self.group:
            raise ValueError("character of a different group")
        try:
            return self._index[chi.values]
        except KeyError:
            raise ValueError("not an irreducible character of this table") from None

    @property
    def degrees(self) -> list[int]:
        return [int(chi.degree.to_fraction()) for chi in self.characters]

    def adams_permutation(self, k: int) -> tuple[int, ...]:
        """Index of adams(chi_i, k) in the table, for each i; raises if not a permutation."""
        perm = tuple(self.index(adams(chi, k)) for chi in self.characters)
        if len(set(perm)) != len(perm):
            raise ValueError(f"adams(., {k}) does not permute the irreducibles")
        return perm

    def galois_index(self, i: int, a: int) -> int:
        """Index of the Galois conjugate zeta -> zeta^a of character i."""
        return self.index(self.characters[i].galois_act(a))

    def check_orthogonality(self) -> bool:
        G = self.group
        chars = self.characters
        rows = all(inner_product(a, b) == (1 if i == j else 0)
                   for i, a in enumerate(chars) for j, b in enumerate(chars) if j >= i)
        cols = True
        for k, ck in enumerate(G.classes):
            for m, cm in enumerate(G.classes):
                if m < k:
                    continue
                s = ZERO
                for chi in chars:
                    s = s + chi.values[k] * chi.values[m].conjugate()
                expect = Fraction(G.order, len(ck)) if k == m else 0
                if s != expect:
                    cols = False
        return rows and cols and sum(d * d for d in self.degrees) == G.order

    def to_json(self) -> dict:
        return {"group": self.group.name, "order": self.group.order,
                "class_sizes": [len(c) for c in self.group.classes],
                "characters": [chi.to_json() for chi in self.characters]}


_TABLES: "weakref.WeakKeyDictionary[FiniteGroup, CharacterTable]" = weakref.WeakKeyDictionary()


def character_table(G: FiniteGroup) -> CharacterTable:
    """Complete table of irreducible characters of an odd-order group (cached)."""
    if G in _TABLES:
        return _TABLES[G]
    if G.order % 2 == 0:
        raise UnsupportedGroupError(f"group of even order {G.order} is not supported")
    chars = _abelian_characters(G) if G.is_abelian else _dixon_characters(G)
    chars.sort(key=lambda c: (c.degree.to_fraction(), tuple(v.sort_key() for v in c.values)))
    tbl = CharacterTable(G, tuple(chars))
    if len(chars) != len(G.classes) or sum(d * d for d in tbl.degrees) != G.order:
        raise RuntimeError(f"character table of {G.name} is incomplete")
    _TABLES[G] = tbl
    return tbl


def _abelian_characters(G: FiniteGroup) -> list[ClassFunction]:
    e = G.exponent
    gens: list[int] = []
    span = frozenset([0])
    while len(span) < G.order:
        g = max((x for x in range(G.order) if x not in span), key=lambda x: (G.element_orders[x], -x))
        gens.append(g)
        span = G.generate(gens)
    homs = []
    for exps in itertools.product(*(range(G.element_orders[g]) for g in gens)):
        vals = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, a in zip(gens, exps):
                    y = G.mul[x][g]
                    v = (vals[x] + a * (e // G.element_orders[g])) % e
                    if y in vals:
                        if vals[y] != v:
                            ok = False
                            break
                    else:
                        vals[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok:
            homs.append(vals)
    roots = [root_of_unity(e, k) for k in range(e)]
    return [ClassFunction(G, [roots[h[c[0]]] for c in G.classes]) for h in homs]


# -- Dixon's method -------------------------------------------------------------

def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, isqrt(n) + 1))


def _primitive_root(q: int) -> int:
    factors = [f for f in range(2, q) if (q - 1) % f == 0 and _is_prime(f)]
    return next(g for g in range(2, q) if all(pow(g, (q - 1) // f, q) != 1 for f in factors))


def _nullspace_mod(rows: list[list[int]], ncols: int, q: int) -> list[list[int]]:
    m = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] % q), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = pow(m[r][c], -1, q)
        m[r] = [(v * inv) % q for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % q:
                f = m[i][c]
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fcol]) % q
        basis.append(v)
    return basis


def _dixon_characters(G: FiniteGroup) -> list[ClassFunction]:
    classes = G.classes
    r = len(classes)
    e = G.exponent
    q = e + 1
    while not (_is_prime(q) and q > 2 * isqrt(G.order) + 2 and G.order % q):
        q += e
    z = pow(_primitive_root(q), (q - 1) // e, q)

    class_of = G.class_of
    # A_j[k][l] = #{x in C_j : x^-1 z_l in C_k}
    mats = []
    for cj in classes:
        A = [[0] * r for _ in range(r)]
        for l, cl in enumerate(classes):
            zl = cl[0]
            for x in cj:
                A[class_of[G.mul[G.inv[x]][zl]]][l] += 1
        mats.append(A)

    spaces = [[[int(i == j) for j in range(r)] for i in range(r)]]
    for A in mats[1:]:
        if all(len(s) == 1 for s in spaces):
            break
        refined = []
        for basis in spaces:
            if len(basis) == 1:
                refined.append(basis)
                continue
            # vectors c*basis with (A - x) (c*basis)^T = 0
            for x in range(q):
                cols = [[sum((A[k][l] - (x if k == l else 0)) * b[l] for l in range(r)) % q
                         for b in basis] for k in range(r)]
                null = _nullspace_mod(cols, len(basis), q)
                if null:
                    refined.append([[sum(c[i] * basis[i][l] for i in range(len(basis))) % q
                                     for l in range(r)] for c in null])
        spaces = refined
    if len(spaces) != r or any(len(s) != 1 for s in spaces):
        raise RuntimeError(f"Dixon splitting failed for {G.name} (q={q})")

    inv_class = [class_of[G.inv[c[0]]] for c in classes]
    chars = []
    for (w,) in spaces:
        w0 = pow(w[0], -1, q)
        w = [(x * w0) % q for x in w]
        s = sum(w[l] * w[inv_class[l]] * pow(len(classes[l]), -1, q) for l in range(r)) % q
        d2 = (G.order * pow(s, -1, q)) % q
        degree = next(d for d in range(1, isqrt(G.order) + 1) if (d * d - d2) % q == 0)
        modval = [(degree * w[l] * pow(len(classes[l]), -1, q)) % q for l in range(r)]
        values = []
        for l, cl in enumerate(classes):
            g = cl[0]
            o = G.element_orders[g]
            zo = pow(z, e // o, q)
            series = [modval[class_of[G.power(g, i)]] for i in range(o)]
            inv_o = pow(o, -1, q)
            terms = {}
            for k in range(o):
                m = inv_o * sum(series[i] * pow(zo, (-k * i) % o, q) for i in range(o)) % q
                if m > degree:
                    raise RuntimeError("eigenvalue multiplicity lift failed")
                if m:
                    terms[k] = m
            values.append(Cyc.from_terms(o, terms) if o > 1 else Cyc.rational(terms.get(0, 0)))
        chars.append(ClassFunction(G, values))
    return chars


# -- monomial representations ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MatrixRep:
    """A monomial representation induced from a linear character of a subgroup.

    ``perm[g][j]`` is the row holding the single non-zero entry of column j of
    T(g), and that entry is ``zeta_N ** exps[g][j]`` with ``N = root_order``.
    """

    character: ClassFunction
    subgroup: Subgroup
    inducing: ClassFunction
    transversal: tuple[int, ...]
    root_order: int
    perm: tuple[tuple[int, ...], ...]
    exps: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.transversal)

    def matrix(self, g: int) -> list[list[Cyc]]:
        n = self.dim
        M = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            M[self.perm[g][j]][j] = root_of_unity(self.root_order, self.exps[g][j])
        return M

    @property
    def matrices(self) -> list[list[list[Cyc]]]:
        return [self.matrix(g) for g in range(self.character.group.order)]

    def trace(self, g: int) -> Cyc:
        return sum((root_of_unity(self.root_order, self.exps[g][j])
                    for j in range(self.dim) if self.perm[g][j] == j), ZERO)

    def check(self) -> bool:
        """Exhaustive multiplicativity and trace checks."""
        G = self.character.group
        N = self.root_order
        for g in range(G.order):
            if self.trace(g) != self.character(g):
                return False
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul[g][h]
                for j in range(self.dim):
                    i = self.perm[h][j]
                    if self.perm[g][i] != self.perm[gh][j]:
                        return False
                    if (self.exps[g][i] + self.exps[h][j]) % N != self.exps[gh][j]:
                        return False
        return True


def _induced_values(G: FiniteGroup, H: Subgroup, lam: ClassFunction) -> list[Cyc]:
    out = []
    for cls in G.classes:
        g = cls[0]
        total = ZERO
        for x in range(G.order):
            y = G.conj(x, g)
            if y in H:
                total = total + lam(H.members.index(y))
        out.append(total * Fraction(1, H.order))
    return out


def _root_exponent(v: Cyc, N: int) -> int:
    order, k = v.is_root_of_unity()
    return k * (N // order)


def monomial_rep(chi: ClassFunction, order: str = "decreasing") -> MatrixRep:
    """Realise chi by a monomial representation induced from a linear character.

    Candidate subgroups of index chi(1) are scanned in ``order`` ("decreasing"
    or "increasing" by member list) and their linear characters in table
    order; the first pair whose induced character equals chi is used.
    """
    G = chi.group
    n = int(chi.degree.to_fraction())
    if order not in ("decreasing", "increasing"):
        raise ValueError("order must be 'decreasing' or 'increasing'")
    if n == 1:
        candidates = [G.full_subgroup]
    else:
        subs = [H for H in G.all_subgroups if H.order * n == G.order]
        subs.sort(key=lambda H: H.members, reverse=(order == "decreasing"))
        candidates = subs
    for H in candidates:
        Hg = H.as_group
        if n == 1:
            lams = [restrict(chi, H)]
        else:
            lams = [lam for lam in character_table(Hg).characters if lam.degree == 1]
        for lam in lams:
            if n > 1 and _induced_values(G, H, lam) != list(chi.values):
                continue
            return _build_monomial(chi, H, lam)
    raise RuntimeError(f"no monomial realisation found for a degree-{n} character of {G.name}")


def _build_monomial(chi: ClassFunction, H: Subgroup, lam: ClassFunction) -> MatrixRep:
    G = chi.group
    # odd-order roots of unity: the conductor is the order
    N = lam.conductor
    transversal = []
    coset = {}
    for g in range(G.order):
        if g in coset:
            continue
        k = len(transversal)
        transversal.append(g)
        for h in H.members:
            coset[G.mul[g][h]] = k
    pos = {m: i for i, m in enumerate(H.members)}
    perm, exps = [], []
    for g in range(G.order):
        prow, erow = [], []
        for t in transversal:
            gt = G.mul[g][t]
            i = coset[gt]
            h = G.mul[G.inv[transversal[i]]][gt]
            prow.append(i)
            erow.append(_root_exponent(lam(pos[h]), N))
        perm.append(tuple(prow))
        exps.append(tuple(erow))
    return MatrixRep(chi, H, lam, tuple(transversal), N, tuple(perm), tuple(exps))
