import itertools
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gringinv.dt.lattice import ModLattice, QuotientStructure, local_smith_form
from gringinv.dt.local_ring import LocalRing, local_ring, primitive_root

RINGS = [(3, 0, 3), (3, 1, 2), (3, 1, 4), (3, 2, 2), (5, 1, 2), (5, 2, 1), (7, 1, 2)]


def _zeta_mul(a, b, p, m, P):
    """Product in the zeta basis, reduced modulo Phi_{p^m} with sympy."""
    x = sympy.Symbol("x")
    phi = sympy.Poly(sympy.cyclotomic_poly(p ** m, x), x)
    pa = sympy.Poly(list(reversed([int(c) for c in a])), x)
    pb = sympy.Poly(list(reversed([int(c) for c in b])), x)
    r = (pa * pb).rem(phi).all_coeffs()[::-1]
    r += [0] * (len(a) - len(r))
    return [int(c) % P for c in r]


def _random_unit(R, rng):
    v = [rng.randrange(R.P) for _ in range(R.d)]
    while v[0] % R.p == 0:
        v[0] = rng.randrange(R.P)
    return R.vec(v)


def test_primitive_roots():
    assert primitive_root(3) == 2
    assert primitive_root(5) in (2, 3)
    assert primitive_root(7) in (3, 5)


@pytest.mark.parametrize("p,m,K", [r for r in RINGS if r[1] > 0])
def test_multiplication_matches_zeta_basis(p, m, K):
    R = local_ring(p, m, K)
    rng = random.Random(1)
    for _ in range(20):
        a = [rng.randrange(R.P) for _ in range(R.d)]
        b = [rng.randrange(R.P) for _ in range(R.d)]
        got = R.to_zeta_basis(R.mul(R.from_zeta_basis(a), R.from_zeta_basis(b)))
        assert [int(c) for c in got] == _zeta_mul(a, b, p, m, R.P)


@pytest.mark.parametrize("p,m,K", RINGS)
def test_unit_group_presentation(p, m, K):
    R = local_ring(p, m, K)
    rng = random.Random(2)
    L = ModLattice(R.coordinates, (p - 1) * p ** R.exponent_bound)
    for row in R.relation_rows:
        L.insert(row)
    assert L.quotient_order() == R.unit_count == (p - 1) * p ** (R.d * K - 1)
    for _ in range(15):
        u, v = _random_unit(R, rng), _random_unit(R, rng)
        assert R.equal(R.from_coordinates(R.dlog(u)), u)
        diff = np.array(R.dlog(R.mul(u, v))) - np.array(R.dlog(u)) - np.array(R.dlog(v))
        assert L.contains(diff)
        assert R.equal(R.mul(u, R.inverse(u)), R.one())
        assert R.equal(R.pow(u, (p - 1) * p ** R.exponent_bound), R.one())


def test_unit_count_brute_force():
    R = local_ring(3, 1, 2)
    units = sum(1 for v in itertools.product(range(R.P), repeat=R.d) if R.is_unit(R.vec(v)))
    assert units == R.unit_count == 54


def test_galois_action():
    R = local_ring(3, 2, 2)
    rng = random.Random(3)
    a, b = _random_unit(R, rng), _random_unit(R, rng)
    for k in (2, 4, 5, 7, 8):
        assert R.equal(R.galois(R.mul(a, b), k), R.mul(R.galois(a, k), R.galois(b, k)))
    assert R.equal(R.galois(R.galois(a, 2), 2), R.galois(a, 4))


def test_teichmuller():
    R = local_ring(5, 1, 3)
    w = R.teichmuller(2)
    assert R.equal(R.pow(w, 4), R.one()) and R.residue(w) == 2


def test_bad_precision():
    with pytest.raises(ValueError):
        LocalRing(3, 1, 0)


# -- lattices ------------------------------------------------------------------

def _span(vectors, M, n):
    seen = {tuple([0] * n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for v in vectors:
                y = tuple((a + b) % M for a, b in zip(x, v))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@settings(max_examples=40)
@given(st.sampled_from([6, 8, 9, 12, 18]),
       st.lists(st.lists(st.integers(0, 17), min_size=2, max_size=2), min_size=1, max_size=3))
def test_modlattice_against_enumeration(M, vecs):
    L = ModLattice(2, M)
    for v in vecs:
        L.insert(v)
    span = _span([[x % M for x in v] for v in vecs], M, 2)
    assert L.quotient_order() * len(span) == M * M
    for x in itertools.product(range(M), repeat=2):
        assert L.contains(x) == (x in span)


@settings(max_examples=40)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_quotient_structure_matches_sympy_snf(rows):
    A = sympy.Matrix(rows)
    det = abs(int(A.det()))
    if det == 0:
        return
    from sympy.matrices.normalforms import smith_normal_form
    snf = smith_normal_form(A, domain=sympy.ZZ)
    expect = sorted(abs(int(snf[i, i])) for i in range(len(rows)))
    expect = tuple(d for d in expect if d != 1)
    qs = QuotientStructure(rows, det)
    assert qs.invariants == expect
    # generators map to basis vectors, relations map to zero
    for k, g in enumerate(qs.generators()):
        assert qs.coordinates(g) == tuple(1 if j == k else 0 for j in range(len(expect)))
    for r in rows:
        assert not any(qs.coordinates(r))


def test_local_smith_form_small():
    exps, V, Vinv = local_smith_form([[9, 3], [0, 3]], 3, 3)
    assert sorted(exps) == [1, 2]
