import random
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gringinv.characters import character_table
from gringinv.center import GroupRingElement
from gringinv.dt import (ComponentUnits, component_units_from_center, congruence_check, dt_at_precision,
                         dt_class, dt_compute, dt_membership, group_ring_unit_generators, nrd_truncated,
                         project_quotient, random_component_units, wedderburn)
from gringinv.dt.components import cached_quotient
from gringinv.errors import InputError, PrecisionExhausted, UnsupportedGroupError
from gringinv.groups import builtin_group, normal_subgroups
from gringinv.ramification import LocalRamData, twisted_c

C3 = builtin_group("C3")
C9 = builtin_group("C9")
E9 = builtin_group("C3xC3")
HEIS = builtin_group("heisenberg-27")


def ring_mul(G, a, b, P):
    out = [0] * G.order
    for g, x in enumerate(a):
        if x:
            for h, y in enumerate(b):
                out[G.mul[g][h]] = (out[G.mul[g][h]] + x * y) % P
    return out


def random_unit(G, p, K, rng):
    P = p ** K
    y = [rng.randrange(P) for _ in range(G.order)]
    while sum(y) % p == 0:
        y[0] = rng.randrange(P)
    return y


def test_wedderburn_examples():
    wd = wedderburn(C3, 3)
    assert [(c.m, c.degree) for c in wd.components] == [(0, 1), (1, 1)]
    wd = wedderburn(C9, 3)
    assert [c.field_degree for c in wd.components] == [1, 2, 6] and wd.dimension() == 9
    wd = wedderburn(HEIS, 3)
    shape = sorted((c.degree, c.field_degree) for c in wd.components)
    assert shape == [(1, 1)] + [(1, 2)] * 4 + [(3, 2)]


def test_wedderburn_orbits_partition(corpus_group):
    wd = wedderburn(corpus_group, corpus_group.prime)
    idx = sorted(j for c in wd.components for j, _ in c.orbit)
    assert idx == list(range(len(character_table(corpus_group))))
    assert sum(c.degree ** 2 * c.field_degree for c in wd.components) == corpus_group.order


def test_wedderburn_rejects():
    with pytest.raises(UnsupportedGroupError):
        wedderburn(C9, 5)
    with pytest.raises(UnsupportedGroupError):
        wedderburn(C3, 2)


def test_nrd_truncated_examples():
    wd = wedderburn(C3, 3)
    K = 3
    assert nrd_truncated([1, 0, 0], wd, K).is_one()
    x = nrd_truncated([0, 1, 0], wd, K)
    R0, R1 = wd.rings(K)
    assert R0.equal(x.units[0], R0.one())
    zeta = R1.from_zeta_basis([0, 1])
    chi = character_table(C3)[wd.components[1].character]
    assert R1.equal(x.units[1], zeta if chi(1).coefficients_at(3)[1] == 1 else R1.galois(zeta, 2))
    with pytest.raises(InputError):
        nrd_truncated([1, 1, 1], wd, K)


@pytest.mark.parametrize("name", ["C9", "C3xC3", "heisenberg-27"])
def test_nrd_truncated_multiplicative(name):
    G = builtin_group(name)
    wd = wedderburn(G, 3)
    K, P = 5, 3 ** 5
    rng = random.Random(7)
    pairs = 100 if G.order < 27 else 25
    for _ in range(pairs):
        a, b = random_unit(G, 3, K, rng), random_unit(G, 3, K, rng)
        assert nrd_truncated(ring_mul(G, a, b, P), wd, K) == nrd_truncated(a, wd, K) * nrd_truncated(b, wd, K)


@pytest.mark.parametrize("name", ["C9", "C3xC3", "C25", "heisenberg-27"])
def test_residues_are_teichmuller_compatible(name):
    G = builtin_group(name)
    p = G.prime
    wd = wedderburn(G, p)
    rng = random.Random(11)
    for _ in range(20):
        x = nrd_truncated(random_unit(G, p, 2, rng), wd, 2)
        assert all(pow(r, p - 1, p) == 1 for r in x.residues())
        assert all(congruence_check(x, i) for i in range(1, len(wd.components)))


def test_congruence_examples():
    wd = wedderburn(C9, 3)
    K = 2
    assert all(congruence_check(ComponentUnits.ones(wd, K), i) for i in (1, 2))
    rings = wd.rings(K)
    bad = ComponentUnits(wd, K, [rings[0].one(), rings[1].scalar(2), rings[2].one()])
    assert not congruence_check(bad, 1) and congruence_check(bad, 2)
    with pytest.raises(InputError):
        congruence_check(bad, 0)


def test_dt_golden():
    assert dt_compute(C3).invariant_factors == (2,)
    assert dt_compute(builtin_group("C5")).invariant_factors == (4,)
    assert dt_compute(builtin_group("C7")).invariant_factors == (6,)
    assert dt_compute(builtin_group("trivial"), 3).is_trivial


def test_dt_c9_exponent():
    e = dt_compute(C9).exponent
    assert e % 2 == 0 and 6 % e == 0


def test_generators_are_basis_vectors(corpus_group):
    dt = dt_compute(corpus_group)
    n = len(dt.invariant_factors)
    for k, g in enumerate(dt.generators):
        assert dt_class(g, dt) == tuple(1 if j == k else 0 for j in range(n))
        assert not dt_membership(g, dt)
        assert dt_membership(g ** dt.invariant_factors[k], dt)


def test_class_is_homomorphism():
    dt = dt_compute(E9)
    rng = random.Random(5)
    for _ in range(20):
        x = random_component_units(dt.wd, dt.precision, rng)
        y = random_component_units(dt.wd, dt.precision, rng)
        cx, cy, cxy = dt_class(x, dt), dt_class(y, dt), dt_class(x * y, dt)
        assert cxy == tuple((a + b) % d for a, b, d in zip(cx, cy, dt.invariant_factors))


def test_group_ring_images_have_zero_class(corpus_group):
    G = corpus_group
    dt = dt_compute(G)
    rng = random.Random(3)
    for _ in range(5):
        x = nrd_truncated(random_unit(G, dt.p, dt.precision + 1, rng), dt.wd, dt.precision + 1)
        assert dt_membership(x, dt) and not any(dt_class(x, dt))


def test_nonsquare_unit_c3():
    dt = dt_compute(C3)
    rings = dt.wd.rings(dt.precision)
    x = ComponentUnits(dt.wd, dt.precision, [rings[0].scalar(2), rings[1].one()])
    assert dt_class(x, dt) == (1,)
    assert dt_membership(x ** 2, dt)


def test_tame_c_has_zero_class():
    dt = dt_compute(C9)
    d = LocalRamData.build(C9, [0], [0], [0], 1, 3)
    x = component_units_from_center(twisted_c(d), dt.wd, dt.precision)
    assert dt_membership(x, dt)


def test_stability_next_precision(corpus_group):
    dt = dt_compute(corpus_group)
    nxt = dt_at_precision(dt.wd, dt.precision + 1)
    assert nxt.invariant_factors == dt.invariant_factors
    assert dt.stabilized and dt.orders[-1][1] == dt.order


def test_precision_exhausted():
    with pytest.raises(PrecisionExhausted) as info:
        dt_compute(builtin_group("C27"), cap=2)
    assert len(info.value.orders) == 2


def test_precision_mismatch():
    dt = dt_compute(C9)
    low = ComponentUnits.ones(dt.wd, 1)
    if dt.precision > 1:
        with pytest.raises(InputError):
            dt_class(low, dt)


def test_project_quotient_examples():
    wd = wedderburn(C9, 3)
    rng = random.Random(9)
    x = random_component_units(wd, 2, rng)
    same = project_quotient(x, C9.trivial_subgroup)
    assert same.to_json() == x.to_json()
    top = project_quotient(x, C9.full_subgroup)
    assert top.to_json() == [x.to_json()[0]]


def test_project_commutes_with_nrd():
    # projecting a reduced norm equals the reduced norm of the projected group-ring element
    for G in (C9, E9, HEIS):
        wd = wedderburn(G, 3)
        rng = random.Random(1)
        for N in normal_subgroups(G):
            Q, q = cached_quotient(G, N)
            wdq = wedderburn(Q, 3)
            y = random_unit(G, 3, 2, rng)
            yq = [0] * Q.order
            for g, c in enumerate(y):
                yq[q(g)] = (yq[q(g)] + c) % 9
            assert project_quotient(nrd_truncated(y, wd, 2), N) == nrd_truncated(yq, wdq, 2)


def _span_size(vectors, mods):
    seen = {tuple(0 for _ in mods)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for v in vectors:
                b = tuple((x + y) % m for x, y, m in zip(a, v, mods))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(seen)


def test_projection_surjective_c9_to_c3():
    dt = dt_compute(C9)
    N = C9.subgroup([0, 3, 6])
    Q, _ = cached_quotient(C9, N)
    dq = dt_compute(Q, 3, precision=dt.precision)
    images = [dt_class(project_quotient(g, N), dq) for g in dt.generators]
    assert _span_size(images, dq.invariant_factors) == dq.order


@pytest.mark.parametrize("name", ["C9", "C27", "C3xC3", "C25", "heisenberg-27"])
def test_quotient_order_divides(name):
    G = builtin_group(name)
    dt = dt_compute(G)
    for N in normal_subgroups(G):
        if N.order in (1, G.order):
            continue
        Q, _ = cached_quotient(G, N)
        assert dt.order % dt_compute(Q, G.prime).order == 0


@pytest.mark.parametrize("name", ["C3", "C9", "C3xC3"])
def test_generator_count(name):
    G = builtin_group(name)
    for K in (1, 2, 3):
        gens = group_ring_unit_generators(G, 3, K)
        assert len(gens) == 1 + (G.order - 1) + (G.order * K - 1)
        assert all(sum(int(v) for v in g) % 3 for g in gens)


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_component_units_from_center_of_group_elements(seed):
    from gringinv.center import nrd
    rng = random.Random(seed)
    g = rng.randrange(HEIS.order)
    wd = wedderburn(HEIS, 3)
    x = component_units_from_center(nrd(GroupRingElement.basis(HEIS, g)), wd, 2)
    y = [0] * HEIS.order
    y[g] = 1
    assert x == nrd_truncated(y, wd, 2)
