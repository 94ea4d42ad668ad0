"""Group-ring elements and elements of the centre of Q^c[G].

A central element is stored by its components ``x_chi``, one per irreducible
character, so that ``x = sum_chi e_chi * x_chi``.  Multiplication is then
componentwise, and the reduced norm of a group-ring element is the tuple of
determinants of its images under (monomial) irreducible representations.
"""

from __future__ import annotations

import weakref
from fractions import Fraction
from typing import Iterable, Sequence

from .characters import CharacterTable, ClassFunction, MatrixRep, character_table, inner_product, \
    monomial_rep, restrict
from .cyclotomic import Cyc, root_of_unity
from .groups import FiniteGroup, Subgroup

__all__ = [
    "CenterElement",
    "GroupRingElement",
    "determinant",
    "idempotent_char",
    "idempotent_subgroup",
    "induce_center",
    "nrd",
    "twist",
]

ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)


def _cyc(v) -> Cyc:
    return v if isinstance(v, Cyc) else Cyc.rational(v)


class GroupRingElement:
    """sum_g c_g g with cyclotomic coefficients."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: Sequence):
        if len(coeffs) != group.order:
            raise ValueError("one coefficient per group element is required")
        self.group = group
        self.coeffs = tuple(_cyc(c) for c in coeffs)

    @classmethod
    def zero(cls, G: FiniteGroup) -> "GroupRingElement":
        return cls(G, [ZERO] * G.order)

    @classmethod
    def one(cls, G: FiniteGroup) -> "GroupRingElement":
        return cls.basis(G, 0)

    @classmethod
    def basis(cls, G: FiniteGroup, g: int, coeff=1) -> "GroupRingElement":
        c = [ZERO] * G.order
        c[g] = _cyc(coeff)
        return cls(G, c)

    @classmethod
    def from_dict(cls, G: FiniteGroup, terms: dict) -> "GroupRingElement":
        c = [ZERO] * G.order
        for g, v in terms.items():
            c[g] = c[g] + _cyc(v)
        return cls(G, c)

    def _check(self, other: "GroupRingElement") -> None:
        if other.group is not self.group:
            raise ValueError("group ring elements of different groups")

    def __add__(self, other):
        self._check(other)
        return GroupRingElement(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return GroupRingElement(self.group, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return GroupRingElement(self.group, [-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, GroupRingElement):
            o = _cyc(other)
            return GroupRingElement(self.group, [a * o for a in self.coeffs])
        self._check(other)
        G = self.group
        out = [ZERO] * G.order
        for a, x in enumerate(self.coeffs):
            if not x:
                continue
            row = G.mul[a]
            for b, y in enumerate(other.coeffs):
                if y:
                    out[row[b]] = out[row[b]] + x * y
        return GroupRingElement(G, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int) -> "GroupRingElement":
        if k < 0:
            raise ValueError("negative powers of group ring elements are not supported")
        result = GroupRingElement.one(self.group)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group is other.group and self.coeffs == other.coeffs

    __hash__ = None

    def augmentation(self) -> Cyc:
        return sum(self.coeffs, ZERO)

    def character_value(self, chi: ClassFunction) -> Cyc:
        """chi extended linearly: sum_g c_g chi(g)."""
        return sum((c * chi(g) for g, c in enumerate(self.coeffs) if c), ZERO)

    def is_central(self) -> bool:
        G = self.group
        return all(self.coeffs[G.conj(x, g)] == self.coeffs[g] for x in range(G.order) for g in range(G.order))

    def __repr__(self) -> str:
        terms = [f"({c})*{self.group.elements[g]}" for g, c in enumerate(self.coeffs) if c]
        return "GroupRingElement(" + (" + ".join(terms) or "0") + ")"


def idempotent_char(chi: ClassFunction) -> GroupRingElement:
    """e_chi = chi(1)/|G| * sum_g chi(g^-1) g."""
    if not chi.is_irreducible():
        raise ValueError("idempotent_char needs an irreducible character")
    G = chi.group
    scale = chi.degree * Fraction(1, G.order)
    return GroupRingElement(G, [scale * chi(G.inv[g]) for g in range(G.order)])


def idempotent_subgroup(H: Subgroup) -> GroupRingElement:
    """e_H = |H|^-1 * sum_{h in H} h."""
    G = H.parent
    c = Fraction(1, H.order)
    return GroupRingElement.from_dict(G, {h: c for h in H.members})


class CenterElement:
    """x = sum_chi e_chi x_chi, one cyclotomic component per irreducible character."""

    __slots__ = ("table", "comps")

    def __init__(self, table: CharacterTable, comps: Iterable):
        comps = tuple(_cyc(c) for c in comps)
        if len(comps) != len(table.characters):
            raise ValueError("one component per irreducible character is required")
        self.table = table
        self.comps = comps

    @property
    def group(self) -> FiniteGroup:
        return self.table.group

    @classmethod
    def ones(cls, table: CharacterTable) -> "CenterElement":
        return cls(table, [ONE] * len(table.characters))

    @classmethod
    def from_central(cls, z: GroupRingElement) -> "CenterElement":
        """Components of a central group-ring element: chi(z)/chi(1)."""
        tbl = character_table(z.group)
        return cls(tbl, [z.character_value(chi) / chi.degree for chi in tbl.characters])

    def to_group_ring(self) -> GroupRingElement:
        total = GroupRingElement.zero(self.group)
        for chi, x in zip(self.table.characters, self.comps):
            if x:
                total = total + idempotent_char(chi) * x
        return total

    def _check(self, other: "CenterElement") -> None:
        if other.table is not self.table:
            raise ValueError("centre elements of different groups")

    def __mul__(self, other: "CenterElement") -> "CenterElement":
        self._check(other)
        return CenterElement(self.table, [a * b for a, b in zip(self.comps, other.comps)])

    def is_invertible(self) -> bool:
        return all(self.comps)

    def inverse(self) -> "CenterElement":
        if not self.is_invertible():
            raise ZeroDivisionError("centre element has a zero component")
        return CenterElement(self.table, [c.inverse() for c in self.comps])

    def __truediv__(self, other: "CenterElement") -> "CenterElement":
        return self * other.inverse()

    def __pow__(self, k: int) -> "CenterElement":
        if k < 0 and not self.is_invertible():
            raise ZeroDivisionError("negative power of a non-invertible centre element")
        return CenterElement(self.table, [c ** k for c in self.comps])

    def __eq__(self, other) -> bool:
        if not isinstance(other, CenterElement):
            return NotImplemented
        return self.table is other.table and self.comps == other.comps

    def __hash__(self) -> int:
        return hash((id(self.table), self.comps))

    def is_one(self) -> bool:
        return all(c == 1 for c in self.comps)

    def multiplicative_order(self) -> int | None:
        """Least m >= 1 with self**m == 1, or None if some component is not a root of unity."""
        m = 1
        for c in self.comps:
            r = c.is_root_of_unity()
            if r is None:
                return None
            m = m * r[0] // _gcd(m, r[0])
        return m

    def __repr__(self) -> str:
        return f"CenterElement({self.group.name}, {list(self.comps)})"

    def to_json(self) -> list[dict]:
        return [{"character": i, "value": c.to_json()} for i, c in enumerate(self.comps)]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# -- reduced norms --------------------------------------------------------------

def determinant(M: list[list[Cyc]]) -> Cyc:
    """Determinant over a cyclotomic field by Gaussian elimination."""
    n = len(M)
    A = [list(row) for row in M]
    det = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        piv = A[c][c]
        det = det * piv
        inv = piv.inverse()
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det


_REPS: "weakref.WeakKeyDictionary[FiniteGroup, dict]" = weakref.WeakKeyDictionary()


def representation(chi: ClassFunction, order: str = "decreasing") -> MatrixRep:
    """Cached monomial representation of an irreducible character."""
    cache = _REPS.setdefault(chi.group, {})
    key = (chi.values, order)
    if key not in cache:
        cache[key] = monomial_rep(chi, order)
    return cache[key]


def nrd(y: GroupRingElement, order: str = "decreasing") -> CenterElement:
    """Reduced norm: the component at chi is det(T_chi(y))."""
    G = y.group
    tbl = character_table(G)
    comps = []
    support = [(g, c) for g, c in enumerate(y.coeffs) if c]
    for chi in tbl.characters:
        if chi.degree == 1:
            comps.append(sum((c * chi(g) for g, c in support), ZERO))
            continue
        rep = representation(chi, order)
        n = rep.dim
        M = [[ZERO] * n for _ in range(n)]
        for g, c in support:
            for j in range(n):
                i = rep.perm[g][j]
                M[i][j] = M[i][j] + c * root_of_unity(rep.root_order, rep.exps[g][j])
        comps.append(determinant(M))
    return CenterElement(tbl, comps)


def twist(x: CenterElement, m: int, n: int, k: int) -> CenterElement:
    """(m + n*psi_k)(x): component chi is x_chi^m * x_{psi_k(chi)}^n."""
    if (m < 0 or n < 0) and not x.is_invertible():
        raise ZeroDivisionError("negative exponent on a non-invertible centre element")
    perm = x.table.adams_permutation(k)
    return CenterElement(x.table, [x.comps[i] ** m * x.comps[perm[i]] ** n for i in range(len(perm))])


def induce_center(x: CenterElement, H: Subgroup) -> CenterElement:
    """Induction on centres from a subgroup H to its parent group.

    ``x`` must live on ``H.as_group``; the component at chi is
    prod_phi x_phi ** <res chi, phi>.
    """
    if x.group is not H.as_group:
        raise ValueError("centre element does not live on the given subgroup")
    G = H.parent
    tbl_g = character_table(G)
    tbl_h = x.table
    comps = []
    for chi in tbl_g.characters:
        res = restrict(chi, H)
        val = ONE
        for phi, xphi in zip(tbl_h.characters, x.comps):
            mult = inner_product(res, phi).to_fraction()
            if mult.denominator != 1:
                raise ArithmeticError("non-integral restriction multiplicity")
            if mult:
                val = val * xphi ** int(mult)
        comps.append(val)
    return CenterElement(tbl_g, comps)
