"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored over the power basis ``1, z, ..., z^(phi(n)-1)`` of
``Q(z)``, ``z = exp(2*pi*i/n)``, modulo the n-th cyclotomic polynomial, and
are always normalised to the smallest conductor whose field contains them.
Two values are therefore equal exactly when their (conductor, coeffs)
pairs agree.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

__all__ = [
    "Cyc",
    "cyclotomic_polynomial",
    "euler_phi",
    "lcm",
    "root_of_unity",
]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    r = n
    for q in _prime_factors(n):
        r -= r // q
    return r


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # exact division of integer polynomials, den monic; coefficients low -> high
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce_exponents(terms: dict[int, Fraction], n: int) -> tuple[Fraction, ...]:
    """Reduce ``sum c_i z^i`` (any integer i) to the power basis of Q(zeta_n)."""
    full = [Fraction(0)] * n
    for i, c in terms.items():
        full[i % n] += c
    return _reduce_mod_phi(full, n)


def _reduce_mod_phi(poly: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    poly = list(poly)
    for i in range(len(poly) - 1, deg - 1, -1):
        c = poly[i]
        if c:
            # subtract c * z^(i-deg) * Phi_n (monic)
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    poly[base + j] -= c * phi[j]
            poly[i] = Fraction(0)
    poly = poly[:deg] + [Fraction(0)] * max(0, deg - len(poly))
    return tuple(poly)


def _embed_coeffs(coeffs: Sequence[Fraction], n: int, big: int) -> tuple[Fraction, ...]:
    if n == big:
        return tuple(coeffs)
    step = big // n
    return _reduce_exponents({i * step: c for i, c in enumerate(coeffs) if c}, big)


@lru_cache(maxsize=None)
def _descent_solver(n: int, d: int):
    """Row-reduced embedding Q(zeta_d) -> Q(zeta_n), for linear descent tests."""
    fd, fn = euler_phi(d), euler_phi(n)
    rows = []
    for j in range(fd):
        basis = [Fraction(0)] * fd
        basis[j] = Fraction(1)
        rows.append(list(_embed_coeffs(basis, d, n)))
    # solve x * M = v  <=>  M^T x^T = v^T ; keep an augmented copy of M^T
    mt = [[rows[j][i] for j in range(fd)] for i in range(fn)]
    return mt, fd, fn


def _descend_linear(coeffs: Sequence[Fraction], n: int, d: int):
    mt, fd, fn = _descent_solver(n, d)
    aug = [row[:] + [coeffs[i]] for i, row in enumerate(mt)]
    piv_cols = []
    r = 0
    for c in range(fd):
        p = next((i for i in range(r, fn) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(fn):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][fd] != 0 for i in range(r, fn)):
        return None
    sol = [Fraction(0)] * fd
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][fd]
    return tuple(sol)


def _try_descend(coeffs: tuple[Fraction, ...], n: int, q: int):
    """Return (d, coeffs') if the element lies in Q(zeta_{n/q}), else None."""
    d = n // q
    if d % 4 == 2:
        d //= 2
    if n % (q * q) == 0:
        if any(c for i, c in enumerate(coeffs) if i % q):
            return None
        sub = coeffs[::q]
        target = n // q
        if target != d:
            # n/q == 2 (mod 4): Q(zeta_{n/q}) = Q(zeta_{n/(2q)}), re-express
            sub = _descend_linear(_embed_coeffs(sub, target, n), n, d)
            if sub is None:
                return None
        return d, tuple(sub)
    if d == 1 and n == q:
        if any(coeffs[1:]):
            return None
        return 1, (coeffs[0],)
    sub = _descend_linear(coeffs, n, d)
    if sub is None:
        return None
    return d, sub


def _canonical(n: int, coeffs: tuple[Fraction, ...]) -> tuple[int, tuple[Fraction, ...]]:
    changed = True
    while changed and n > 1:
        changed = False
        for q in _prime_factors(n):
            res = _try_descend(coeffs, n, q)
            if res is not None:
                n, coeffs = res
                changed = True
                break
    return n, coeffs


def _normalize_conductor(n: int) -> int:
    return n // 2 if n % 4 == 2 else n


class Cyc:
    """An element of a cyclotomic field, in canonical (minimal conductor) form."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs: Iterable[Rational]):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if conductor % 4 == 2:
            half = conductor // 2
            # z_n = -z_half^((half+1)/2)
            e = (half + 1) // 2
            terms: dict[int, Fraction] = {}
            for i, c in enumerate(coeffs):
                if c:
                    terms[i * e] = terms.get(i * e, Fraction(0)) + (c if i % 2 == 0 else -c)
            coeffs = _reduce_exponents(terms, half)
            conductor = half
        if len(coeffs) != euler_phi(conductor):
            coeffs = _reduce_mod_phi(list(coeffs), conductor)
        n, cs = _canonical(conductor, coeffs)
        self.conductor = n
        self.coeffs = cs
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, conductor: int, coeffs: tuple[Fraction, ...]) -> "Cyc":
        return cls(conductor, coeffs)

    @classmethod
    def rational(cls, q: Rational) -> "Cyc":
        obj = object.__new__(cls)
        obj.conductor = 1
        obj.coeffs = (Fraction(q),)
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, n: int, terms: dict[int, Rational]) -> "Cyc":
        """Build ``sum c * zeta_n^e`` for a mapping ``{e: c}``."""
        n2 = _normalize_conductor(n)
        if n2 != n:
            return sum((c * root_of_unity(n, e) for e, c in terms.items()), cls.rational(0))
        return cls(n, _reduce_exponents({e: Fraction(c) for e, c in terms.items()}, n))

    # -- coercion helpers ----------------------------------------------
    @staticmethod
    def _coerce(x) -> "Cyc":
        if isinstance(x, Cyc):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyc.rational(x)
        return NotImplemented

    def coefficients_at(self, n: int) -> tuple[Fraction, ...]:
        """Power-basis coefficients of this value viewed inside Q(zeta_n)."""
        if n % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {n}")
        if n % 4 == 2:
            raise ValueError("use a conductor not congruent to 2 mod 4")
        return _embed_coeffs(self.coeffs, self.conductor, n)

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.conductor == 1

    def to_fraction(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = Cyc._coerce(other)
        if other is NotImplemented:
            return other
        n = lcm(self.conductor, other.conductor)
        a = self.coefficients_at(n)
        b = other.coefficients_at(n)
        return Cyc(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = Cyc._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Cyc._coerce(other)
        if other is NotImplemented:
            return other
        if other.conductor == 1:
            k = other.coeffs[0]
            return Cyc(self.conductor, tuple(c * k for c in self.coeffs))
        if self.conductor == 1:
            return other * self
        n = lcm(self.conductor, other.conductor)
        a = self.coefficients_at(n)
        b = other.coefficients_at(n)
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyc(n, _reduce_mod_phi(prod, n))

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self.conductor
        if n == 1:
            return Cyc.rational(1 / self.coeffs[0])
        s = _poly_inverse_mod(list(self.coeffs), [Fraction(c) for c in cyclotomic_polynomial(n)])
        return Cyc(n, _reduce_mod_phi(s, n))

    def __truediv__(self, other):
        other = Cyc._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyc._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Cyc":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Cyc.rational(1)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- Galois action ---------------------------------------------------
    def galois_act(self, k: int) -> "Cyc":
        """Apply the automorphism zeta_n -> zeta_n^k (k coprime to the conductor)."""
        n = self.conductor
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not coprime to the conductor {n}")
        if n == 1:
            return self
        return Cyc(n, _reduce_exponents({(i * k) % n: c for i, c in enumerate(self.coeffs) if c}, n))

    def conjugate(self) -> "Cyc":
        return self.galois_act(-1)

    def is_root_of_unity(self) -> tuple[int, int] | None:
        """Return ``(order, k)`` with ``self == zeta_order^k``, order minimal."""
        n = self.conductor
        big = n if n % 2 == 0 else 2 * n
        if self ** big != 1:
            return None
        order = min(d for d in range(1, big + 1) if big % d == 0 and self ** d == 1)
        for k in range(order):
            if gcd(k, order) == 1 and root_of_unity(order, k) == self:
                return order, k
        raise AssertionError("unreachable: root of unity without exponent")

    # -- comparison & display ---------------------------------------------
    def __eq__(self, other) -> bool:
        other = Cyc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.conductor, self.coeffs)) if self.conductor > 1 else hash(self.coeffs[0])
        return self._hash

    def sort_key(self) -> tuple:
        return (self.conductor, self.coeffs)

    def __repr__(self) -> str:
        if self.conductor == 1:
            return f"Cyc({self.coeffs[0]})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.conductor}^{i}" if i else f"{c}")
        return "Cyc(" + (" + ".join(terms) or "0") + ")"

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc: dict) -> "Cyc":
        return cls(int(doc["conductor"]), [Fraction(c) for c in doc["coeffs"]])


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _poly_trim(q), _poly_trim(a[: len(b) - 1])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    # extended Euclid: s*a + t*m = 1
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def root_of_unity(n: int, k: int = 1) -> Cyc:
    """Return zeta_n^k."""
    if n < 1:
        raise ValueError("root_of_unity needs n >= 1")
    k %= n
    if n % 4 == 2:
        half = n // 2
        # zeta_n = -zeta_half^((half+1)/2)
        val = root_of_unity(half, k * (half + 1) // 2)
        return -val if k % 2 else val
    return Cyc(n, _reduce_exponents({k: Fraction(1)}, n))
