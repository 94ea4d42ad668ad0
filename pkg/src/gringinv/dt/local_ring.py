"""Truncated rings of integers O/p^K for O = Z_p[zeta_{p^m}].

Elements are integer vectors of length d = phi(p^m) in the basis 1, t, ..., t^{d-1}
where t = zeta - 1 is a uniformiser, reduced modulo the Eisenstein polynomial
Phi_{p^m}(1 + t).  For m = 0 the ring is Z/p^K and the uniformiser is p.

Unit groups are presented as Z/(p-1) x Z^{L-1} / (relations), with L = d*K the
number of uniformiser levels: the torsion coordinate is the discrete log of the
residue, the remaining coordinates are the digits of the principal part in the
generators 1 + t^j.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from math import comb

import numpy as np

__all__ = ["LocalRing", "local_ring", "primitive_root"]


def primitive_root(p: int) -> int:
    phi = p - 1
    factors = [q for q in range(2, phi + 1) if phi % q == 0 and all(q % r for r in range(2, q))]
    for g in range(2, p + 1):
        if all(pow(g, phi // q, p) != 1 for q in factors):
            return g % p if p > 2 else 1
    return 1


def _dtype(P: int, d: int):
    return np.int64 if P < 2 ** 28 and d * P * P < 2 ** 62 else object


class LocalRing:
    """O/p^K with O the ring of integers of Q_p(zeta_{p^m})."""

    def __init__(self, p: int, m: int, K: int):
        if K < 1:
            raise ValueError("precision must be at least 1")
        self.p, self.m, self.K = p, m, K
        self.P = p ** K
        self.conductor = p ** m
        self.d = 1 if m == 0 else (p - 1) * p ** (m - 1)
        self.levels = self.d * K
        self.dtype = _dtype(self.P, self.d)

    def __repr__(self) -> str:
        return f"LocalRing(p={self.p}, m={self.m}, K={self.K})"

    # -- construction -------------------------------------------------------
    def vec(self, values) -> np.ndarray:
        return np.array([int(v) % self.P for v in values], dtype=self.dtype)

    def zero(self) -> np.ndarray:
        return np.zeros(self.d, dtype=self.dtype)

    def scalar(self, c: int) -> np.ndarray:
        v = self.zero()
        v[0] = int(c) % self.P
        return v

    def one(self) -> np.ndarray:
        return self.scalar(1)

    @cached_property
    def uniformizer(self) -> np.ndarray:
        if self.m == 0:
            return self.scalar(self.p)
        if self.d == 1:
            # p = 2 cannot occur; keep a consistent shape anyway
            return self.scalar(self.p)
        v = self.zero()
        v[1] = 1
        return v

    @cached_property
    def _eisenstein(self) -> list[int]:
        """Coefficients (low to high) of Phi_{p^m}(1 + t)."""
        q = self.conductor // self.p
        coeffs = [0] * (self.d + 1)
        for i in range(self.p):
            e = i * q
            for j in range(e + 1):
                coeffs[j] += comb(e, j)
        return coeffs

    @cached_property
    def _reduction(self) -> np.ndarray:
        """Row k holds t^k mod the Eisenstein polynomial, for 0 <= k <= 2d - 2."""
        d, P = self.d, self.P
        rows = []
        cur = [0] * d
        cur[0] = 1
        f = self._eisenstein
        for _ in range(2 * d - 1):
            rows.append([c % P for c in cur])
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * f[j]) for j, c in enumerate(cur)]
        return np.array(rows, dtype=self.dtype)

    # -- arithmetic ---------------------------------------------------------
    def add(self, a, b):
        return (a + b) % self.P

    def sub(self, a, b):
        return (a - b) % self.P

    def mul(self, a, b):
        if self.d == 1:
            return (a * b) % self.P
        c = np.convolve(a, b) % self.P
        return (c @ self._reduction) % self.P

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inverse(a), -k)
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def residue(self, a) -> int:
        return int(a[0]) % self.p

    def is_unit(self, a) -> bool:
        return self.residue(a) != 0

    def inverse(self, a):
        r = self.residue(a)
        if r == 0:
            raise ZeroDivisionError("not a unit of the truncated ring")
        x = self.scalar(pow(r, -1, self.p))
        two = self.scalar(2)
        prec = 1
        while prec < self.levels:
            x = self.mul(x, self.sub(two, self.mul(a, x)))
            prec *= 2
        return x

    def equal(self, a, b) -> bool:
        return bool(np.array_equal(a % self.P, b % self.P))

    def teichmuller(self, r: int):
        """Image of the Teichmueller lift of r in F_p^x."""
        return self.scalar(pow(r % self.p, self.P // self.p, self.P))

    # -- change of basis ----------------------------------------------------
    @cached_property
    def _zeta_to_t(self) -> np.ndarray:
        d, P = self.d, self.P
        return np.array([[comb(k, j) % P for j in range(d)] for k in range(d)], dtype=self.dtype)

    @cached_property
    def _t_to_zeta(self) -> np.ndarray:
        d, P = self.d, self.P
        return np.array([[(comb(j, k) * (-1) ** (j - k)) % P for k in range(d)] for j in range(d)],
                        dtype=self.dtype)

    def from_zeta_basis(self, z) -> np.ndarray:
        """Convert coefficients of 1, zeta, ..., zeta^{d-1} to the t-basis."""
        z = np.array([int(c) % self.P for c in z], dtype=self.dtype)
        if self.d == 1:
            return z
        return (z @ self._zeta_to_t) % self.P

    def to_zeta_basis(self, a) -> np.ndarray:
        if self.d == 1:
            return a % self.P
        return (a @ self._t_to_zeta) % self.P

    def from_cyclic(self, c) -> np.ndarray:
        """Reduce coefficients of zeta^0..zeta^{N-1}, N = p^m, to an element."""
        N = self.conductor
        c = np.asarray(c, dtype=self.dtype) % self.P
        if len(c) != N:
            raise ValueError("cyclic vector has the wrong length")
        if N == 1:
            return c.copy()
        blocks = c.reshape(self.p, N // self.p)
        z = (blocks[:-1] - blocks[-1]) % self.P
        return self.from_zeta_basis(z.reshape(-1))

    def galois(self, a, k: int) -> np.ndarray:
        """zeta -> zeta^k."""
        if self.m == 0:
            return a.copy()
        if k % self.p == 0:
            raise ValueError("Galois exponent must be prime to p")
        z = self.to_zeta_basis(a)
        N = self.conductor
        c = np.zeros(N, dtype=self.dtype)
        for i in range(self.d):
            j = (i * k) % N
            c[j] = (c[j] + z[i]) % self.P
        return self.from_cyclic(c)

    # -- unit group presentation -------------------------------------------
    @cached_property
    def _generator(self) -> int:
        return primitive_root(self.p)

    @cached_property
    def _dlog_table(self) -> dict[int, int]:
        g, p = self._generator, self.p
        return {pow(g, e, p): e for e in range(p - 1)}

    @cached_property
    def level_generators(self) -> list[np.ndarray]:
        """1 + pi^j for j = 1 .. L-1 (index 0 unused)."""
        pi = self.uniformizer
        out = [self.one()]
        cur = self.one()
        for _ in range(1, self.levels):
            cur = self.mul(cur, pi)
            out.append(self.add(self.one(), cur))
        return out

    @cached_property
    def _inverse_powers(self) -> list[list[np.ndarray]]:
        out = [[]]
        for g in self.level_generators[1:]:
            gi = self.inverse(g)
            pows = [self.one()]
            for _ in range(1, self.p):
                pows.append(self.mul(pows[-1], gi))
            out.append(pows)
        return out

    @property
    def coordinates(self) -> int:
        """Length of a discrete-log vector: torsion coordinate plus L - 1 digits."""
        return self.levels

    def dlog(self, u) -> list[int]:
        """Coordinates of a unit: [log of residue, digit_1, ..., digit_{L-1}]."""
        p, d = self.p, self.d
        r = self.residue(u)
        if r == 0:
            raise ZeroDivisionError("discrete log of a non-unit")
        e = self._dlog_table[r]
        u1 = self.mul(u, self.teichmuller(pow(r, -1, p)))
        coords = [e]
        sign = 1 if self.m == 0 else -1
        for j in range(1, self.levels):
            k, s = j % d, j // d
            b = int(u1[k]) - (1 if k == 0 else 0)
            ps = p ** s
            if b % ps:
                raise ArithmeticError("principal unit peeling lost track of the valuation")
            a = ((b // ps) * sign ** s) % p
            coords.append(a)
            if a:
                u1 = self.mul(u1, self._inverse_powers[j][a])
        if not self.equal(u1, self.one()):
            raise ArithmeticError("principal unit did not reduce to 1")
        return coords

    def from_coordinates(self, coords) -> np.ndarray:
        """Inverse of dlog on representatives: omega(g)^e * prod (1 + pi^j)^{a_j}."""
        coords = [int(c) for c in coords]
        u = self.teichmuller(pow(self._generator, coords[0] % (self.p - 1), self.p))
        for j in range(1, self.levels):
            if coords[j]:
                u = self.mul(u, self.pow(self.level_generators[j], coords[j]))
        return u

    @cached_property
    def relation_rows(self) -> list[list[int]]:
        """Rows generating the relation lattice of the coordinate presentation."""
        L, p = self.levels, self.p
        rows = []
        tors = [0] * L
        tors[0] = p - 1
        rows.append(tors)
        for j in range(1, L):
            digits = self.dlog(self.pow(self.level_generators[j], p))
            row = [-c for c in digits]
            row[0] = 0
            row[j] += p
            rows.append(row)
        return rows

    @cached_property
    def exponent_bound(self) -> int:
        """An exponent s with U_1^{p^s} trivial at this precision."""
        e = self.d if self.m else 1
        j, s = 1, 0
        while j < self.levels:
            j = min(self.p * j, j + e)
            s += 1
        return s

    @cached_property
    def unit_count(self) -> int:
        return (self.p - 1) * self.p ** (self.levels - 1)


@lru_cache(maxsize=None)
def local_ring(p: int, m: int, K: int) -> LocalRing:
    return LocalRing(p, m, K)
