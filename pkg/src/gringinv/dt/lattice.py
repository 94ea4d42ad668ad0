"""Subgroups of (Z/M)^n in echelon form, and invariant factors of finite quotients.

A :class:`ModLattice` keeps one row per pivot column.  Each pivot entry divides
M, and inserting a row also inserts the multiple that kills its pivot, so the
rows always describe the full subgroup: the quotient (Z/M)^n / L has order the
product of the pivots (M for a column without a row), and reducing a vector
column by column gives a canonical coset representative.
"""

from __future__ import annotations

from math import gcd

import numpy as np

__all__ = ["ModLattice", "QuotientStructure", "local_smith_form", "xgcd"]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _normaliser(a: int, M: int) -> tuple[int, int]:
    """A unit u mod M with u*a = gcd(a, M) mod M, and that gcd."""
    g = gcd(a, M)
    Mg = M // g
    u = pow(a // g, -1, Mg) if Mg > 1 else 1
    while gcd(u, M) != 1:
        u += Mg
    return u % M, g


class ModLattice:
    def __init__(self, n: int, M: int):
        self.n = n
        self.M = M
        self.dtype = np.int64 if M < 2 ** 30 else object
        self.rows: dict[int, np.ndarray] = {}

    def copy(self) -> "ModLattice":
        other = ModLattice(self.n, self.M)
        other.rows = {c: r.copy() for c, r in self.rows.items()}
        return other

    def _vec(self, v) -> np.ndarray:
        if isinstance(v, np.ndarray) and v.dtype == self.dtype:
            return v % self.M
        return np.array([int(x) % self.M for x in v], dtype=self.dtype)

    def pivot(self, c: int) -> int:
        r = self.rows.get(c)
        return self.M if r is None else int(r[c])

    def insert(self, v) -> bool:
        """Add a vector to the generating set; returns whether the subgroup grew."""
        M = self.M
        work = [self._vec(v)]
        grew = False
        while work:
            v = work.pop()
            nz = np.flatnonzero(v)
            if nz.size == 0:
                continue
            c = int(nz[0])
            while True:
                a = int(v[c])
                row = self.rows.get(c)
                if row is None:
                    u, g = _normaliser(a, M)
                    row = (v * u) % M
                    self.rows[c] = row
                    grew = True
                    if g != 1:
                        work.append((row * (M // g)) % M)
                    break
                d = int(row[c])
                if a % d == 0:
                    v = (v - (a // d) * row) % M
                else:
                    g, s, t = xgcd(d, a)
                    new = (s * row + t * v) % M
                    v = ((a // g) * row - (d // g) * v) % M
                    self.rows[c] = new
                    grew = True
                    work.append((new * (M // g)) % M)
                nz = np.flatnonzero(v[c + 1:])
                if nz.size == 0:
                    break
                c = c + 1 + int(nz[0])
        return grew

    def reduce(self, v) -> np.ndarray:
        """Canonical representative of v + L: entry c lies in [0, pivot_c)."""
        v = self._vec(v)
        for c in range(self.n):
            a = int(v[c])
            if not a:
                continue
            row = self.rows.get(c)
            if row is None:
                continue
            q = a // int(row[c])
            if q:
                v = (v - q * row) % self.M
        return v

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def quotient_order(self) -> int:
        total = 1
        for c in range(self.n):
            total *= self.pivot(c)
        return total

    def free_columns(self) -> list[int]:
        return [c for c in range(self.n) if self.pivot(c) != 1]

    def quotient_relations(self) -> tuple[list[int], list[list[int]]]:
        """Relation matrix of the quotient on its non-trivial columns.

        Returns the columns F and square rows ``pivot_c * e_c - reduce(pivot_c * e_c)``
        restricted to F; they generate all relations among the F-coordinates.
        """
        F = self.free_columns()
        pos = {c: i for i, c in enumerate(F)}
        rel = []
        for c in F:
            d = self.pivot(c)
            e = np.zeros(self.n, dtype=self.dtype)
            e[c] = d % self.M
            w = self.reduce(e) if d != self.M else np.zeros(self.n, dtype=self.dtype)
            row = [0] * len(F)
            row[pos[c]] += d
            for c2 in F:
                row[pos[c2]] -= int(w[c2])
            rel.append(row)
        return F, rel


def _prime_powers(n: int) -> list[tuple[int, int]]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            a = 0
            while n % q == 0:
                n //= q
                a += 1
            out.append((q, a))
        q += 1
    if n > 1:
        out.append((n, 1))
    return out


def _valuation(x: int, ell: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % ell == 0 and v < cap:
        x //= ell
        v += 1
    return v


def local_smith_form(A: list[list[int]], ell: int, a: int):
    """Smith form of a square matrix over Z/ell^a.

    Returns (exponents, V, Vinv): ``U*A*V`` is diagonal with entries ell^e
    (e = a for a vanishing entry), exponents ascending, V and Vinv mutually
    inverse modulo ell^a.
    """
    q = ell ** a
    n = len(A)
    A = [[x % q for x in row] for row in A]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vinv = [[int(i == j) for j in range(n)] for i in range(n)]
    exps = []
    for t in range(n):
        best = None
        for i in range(t, n):
            for j in range(t, n):
                v = _valuation(A[i][j], ell, a)
                if best is None or v < best[0]:
                    best = (v, i, j)
                    if v == 0:
                        break
            if best[0] == 0:
                break
        v, pi, pj = best
        if v == a:
            exps.extend([a] * (n - t))
            break
        A[t], A[pi] = A[pi], A[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            for row in V:
                row[t], row[pj] = row[pj], row[t]
            Vinv[t], Vinv[pj] = Vinv[pj], Vinv[t]
        lv = ell ** v
        unit = (A[t][t] // lv) % q
        uinv = pow(unit, -1, q)
        # scale column t so the pivot becomes ell^v
        for row in A:
            row[t] = row[t] * uinv % q
        for row in V:
            row[t] = row[t] * uinv % q
        Vinv[t] = [x * unit % q for x in Vinv[t]]
        for i in range(t + 1, n):
            if A[i][t]:
                f = A[i][t] // lv
                A[i] = [(x - f * y) % q for x, y in zip(A[i], A[t])]
        for j in range(t + 1, n):
            if A[t][j]:
                f = A[t][j] // lv
                for row in A:
                    row[j] = (row[j] - f * row[t]) % q
                for row in V:
                    row[j] = (row[j] - f * row[t]) % q
                Vinv[t] = [(x + f * y) % q for x, y in zip(Vinv[t], Vinv[j])]
        exps.append(v)
    return exps, V, Vinv


class QuotientStructure:
    """Invariant factors of Z^n / rowspace(rel) for a square relation matrix of a finite group.

    ``order`` must be the order of the quotient.  Each primary part is
    diagonalised over Z/ell^a; the parts are recombined by CRT.
    """

    def __init__(self, rel: list[list[int]], order: int):
        self.n = len(rel)
        self.order = order
        self._parts = []
        exps_by_prime = []
        for ell, a in _prime_powers(order):
            exps, V, Vinv = local_smith_form(rel, ell, a)
            self._parts.append((ell, a, V, Vinv, exps))
            exps_by_prime.append((ell, exps))
        factors = []
        for k in range(self.n):
            d = 1
            for ell, exps in exps_by_prime:
                d *= ell ** exps[k]
            factors.append(d)
        self._keep = [k for k, d in enumerate(factors) if d != 1]
        self.invariants = tuple(factors[k] for k in self._keep)
        total = 1
        for d in self.invariants:
            total *= d
        if total != order:
            raise ArithmeticError("invariant factors do not multiply to the quotient order")

    def coordinates(self, w) -> tuple[int, ...]:
        """Coordinates in Z/d_1 + ... of the class of an integer vector w."""
        out = []
        for k, d in zip(self._keep, self.invariants):
            residues, moduli = [], []
            for ell, a, V, _, exps in self._parts:
                m = ell ** exps[k]
                if m == 1:
                    continue
                y = sum(int(x) * V[i][k] for i, x in enumerate(w))
                residues.append(y % m)
                moduli.append(m)
            out.append(_crt(residues, moduli) % d)
        return tuple(out)

    def generators(self) -> list[list[int]]:
        """Integer vectors whose classes map to the standard basis of the invariant factors."""
        gens = []
        D = self.order
        for k in self._keep:
            w = [0] * self.n
            for ell, a, _, Vinv, exps in self._parts:
                q = ell ** a
                c = _crt([1, 0], [q, D // q]) if D // q > 1 else 1
                for i, x in enumerate(Vinv[k]):
                    w[i] = (w[i] + c * x) % D
            gens.append(w)
        return gens


def _crt(residues: list[int], moduli: list[int]) -> int:
    x, M = 0, 1
    for r, m in zip(residues, moduli):
        # solve x + M*k = r mod m
        k = ((r - x) * pow(M, -1, m)) % m if m > 1 else 0
        x += M * k
        M *= m
    return x
