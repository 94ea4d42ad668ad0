import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gringinv.characters import (ClassFunction, adams, character_table, inner_product, kernel, monomial_rep,
                                 restrict)
from gringinv.cyclotomic import Cyc, root_of_unity
from gringinv.errors import UnsupportedGroupError
from gringinv.groups import builtin_group, load_group

from conftest import brute_classes, to_complex


def _numeric_table(tbl):
    return np.array([[to_complex(chi(g)) for g in range(tbl.group.order)] for chi in tbl.characters])


def test_small_tables():
    C3 = builtin_group("C3")
    tbl = character_table(C3)
    assert tbl.degrees == [1, 1, 1]
    assert all(chi(g).conductor in (1, 3) for chi in tbl for g in range(3))
    assert character_table(builtin_group("C3xC3")).degrees == [1] * 9


def test_heisenberg_table(heis):
    tbl = character_table(heis)
    assert len(tbl) == len(brute_classes(heis)) == 11
    assert sorted(tbl.degrees) == [1] * 9 + [3, 3]


def test_even_order_rejected():
    with pytest.raises(UnsupportedGroupError):
        character_table(load_group({"abelian": [4]}))


def test_orthogonality_numeric(corpus_group):
    # the exact check is in the library; redo it in floating point from the raw values
    tbl = character_table(corpus_group)
    assert tbl.check_orthogonality()
    X = _numeric_table(tbl)
    gram = X @ X.conj().T / corpus_group.order
    assert np.allclose(gram, np.eye(len(tbl)))


def test_inner_product_examples(heis):
    tbl = character_table(heis)
    triv = tbl[0]
    regular = ClassFunction.from_function(heis, lambda g: heis.order if g == 0 else 0)
    assert inner_product(triv, regular) == 1
    chi3 = next(c for c in tbl if c.degree == 3)
    Z = heis.center
    res = restrict(chi3, Z)
    ztbl = character_table(Z.as_group)
    mults = sorted(inner_product(res, lam).to_fraction() for lam in ztbl)
    assert mults == [0, 0, 3]


def test_adams_examples(heis):
    C3 = builtin_group("C3")
    tbl = character_table(C3)
    chi = next(c for c in tbl if c(1) == root_of_unity(3))
    assert adams(chi, 1) == chi
    assert adams(chi, 2)(1) == root_of_unity(3, 2)
    chi3 = next(c for c in character_table(heis) if c.degree == 3)
    psi = adams(chi3, 2)
    assert inner_product(psi, psi) == 1 and psi(0) == 3


def test_adams_composition(corpus_group):
    for chi in character_table(corpus_group):
        for k, m in itertools.product([1, 2, 4], repeat=2):
            assert adams(adams(chi, k), m) == adams(chi, k * m)


def test_adams_permutes(corpus_group):
    perm = character_table(corpus_group).adams_permutation(2)
    assert sorted(perm) == list(range(len(perm)))


def test_restrict_and_kernel(heis):
    C9 = builtin_group("C9")
    tbl = character_table(C9)
    faithful = next(c for c in tbl if c(1) == root_of_unity(9))
    assert kernel(faithful).order == 1
    assert kernel(tbl[0]).order == 9
    H = C9.subgroup([0, 3, 6])
    r = restrict(faithful, H)
    assert r in list(character_table(H.as_group))
    assert restrict(faithful, C9.full_subgroup).values == faithful.values
    chi3 = next(c for c in character_table(heis) if c.degree == 3)
    assert kernel(chi3).order == 1
    r = restrict(chi3, heis.center)
    lam = ClassFunction.from_function(heis.center.as_group, lambda i: chi3(heis.center.members[i]) / 3)
    assert lam in list(character_table(heis.center.as_group)) and lam(1) != 1
    assert r == 3 * lam


def test_kernel_normal_and_restriction(corpus_group):
    for chi in character_table(corpus_group):
        N = kernel(chi)
        assert N.is_normal()
        r = restrict(chi, N)
        assert all(r(i) == chi.degree for i in range(N.order))


def _matmul(A, B):
    n = len(A)
    zero = Cyc.rational(0)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), zero) for j in range(n)] for i in range(n)]


def test_monomial_linear():
    C9 = builtin_group("C9")
    for chi in character_table(C9):
        rep = monomial_rep(chi)
        assert rep.dim == 1
        assert all(rep.matrix(g)[0][0] == chi(g) for g in range(9))


def test_monomial_heisenberg_exhaustive(heis):
    for chi in character_table(heis):
        if chi.degree != 3:
            continue
        for order in ("decreasing", "increasing"):
            rep = monomial_rep(chi, order)
            assert rep.subgroup.index == 3 and rep.subgroup.is_abelian
            mats = rep.matrices
            for g in range(27):
                assert sum((mats[g][i][i] for i in range(3)), Cyc.rational(0)) == chi(g)
                assert all(v == 0 or v.is_root_of_unity() for row in mats[g] for v in row)
            for g, h in itertools.product(range(27), repeat=2):
                assert _matmul(mats[g], mats[h]) == mats[heis.mul[g][h]]


@given(st.sampled_from(["C9", "C3xC3", "heisenberg-27"]), st.data())
def test_degree_divides_order(name, data):
    G = builtin_group(name)
    chi = data.draw(st.sampled_from(character_table(G).characters))
    assert G.order % int(chi.degree.to_fraction()) == 0
    assert inner_product(chi, chi) == 1
