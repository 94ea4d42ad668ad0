from fractions import Fraction
from math import gcd, lcm

import pytest
import sympy
from hypothesis import given, strategies as st

from gringinv.cyclotomic import Cyc, euler_phi, root_of_unity

from conftest import to_complex

CONDUCTORS = [1, 3, 5, 7, 9, 27]


@st.composite
def cycs(draw, conductor=None):
    n = conductor or draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7),
                           min_size=euler_phi(n), max_size=euler_phi(n)))
    return Cyc(n, coeffs)


pairs = st.sampled_from(CONDUCTORS).flatmap(lambda n: st.tuples(cycs(n), cycs(n), cycs(n)))


def test_root_of_unity_examples():
    assert root_of_unity(1, 0) == 1
    assert root_of_unity(3, 1) + root_of_unity(3, 2) == -1
    assert root_of_unity(9, 1) ** 9 == 1
    assert root_of_unity(3, 1) * root_of_unity(3, 2) == 1
    assert root_of_unity(9, 1).inverse() == root_of_unity(9, 8)
    assert root_of_unity(9, 3) == root_of_unity(3, 1)


def test_galois_examples():
    z3, z9 = root_of_unity(3), root_of_unity(9)
    assert z3.galois_act(2) == root_of_unity(3, 2)
    assert (1 + z9).galois_act(4) == 1 + root_of_unity(9, 4)
    x = 1 + z9 + Fraction(1, 2) * z9 ** 5
    assert x.galois_act(2).galois_act(2) == x.galois_act(4)


def test_is_root_of_unity():
    assert Cyc.rational(1).is_root_of_unity() == (1, 0)
    assert (-root_of_unity(3)).is_root_of_unity()[0] == 6
    assert Cyc.rational(2).is_root_of_unity() is None


def test_conductor_normalisation():
    # zeta_6 = -zeta_3^2 lives in Q(zeta_3)
    assert root_of_unity(6).conductor == 3
    assert root_of_unity(6) == -root_of_unity(3, 2)
    assert (root_of_unity(9) ** 3).conductor == 3


def test_json_roundtrip():
    x = Fraction(3, 4) + root_of_unity(27, 5)
    assert Cyc.from_json(x.to_json()) == x


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Cyc.rational(0).inverse()


@given(pairs)
def test_field_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(pairs)
def test_multiplication_matches_sympy(t):
    # reduce the product polynomial modulo Phi_n with sympy, independently of Cyc
    a, b, _ = t
    n = lcm(a.conductor, b.conductor)
    x = sympy.Symbol("x")
    phi = sympy.cyclotomic_poly(n, x) if n > 1 else x - 1
    pa = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(a.coefficients_at(n)))
    pb = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(b.coefficients_at(n)))
    rem = sympy.Poly(sympy.rem(sympy.expand(pa * pb), phi, x), x)
    expect = [Fraction(int(r.p), int(r.q)) for r in reversed(rem.all_coeffs())]
    got = (a * b).coefficients_at(n)
    expect += [Fraction(0)] * (len(got) - len(expect))
    assert list(got) == expect


@given(pairs)
def test_numeric_consistency(t):
    a, b, _ = t
    assert abs(to_complex(a * b) - to_complex(a) * to_complex(b)) < 1e-6
    assert abs(to_complex(a + b) - to_complex(a) - to_complex(b)) < 1e-6


@given(pairs, st.sampled_from([1, 2, 4, 5, 7, 8]))
def test_galois_is_automorphism(t, k):
    a, b, _ = t
    n = a.conductor * b.conductor
    if gcd(k, n) != 1:
        return
    assert (a * b).galois_act(k) == a.galois_act(k) * b.galois_act(k)
    assert (a + b).galois_act(k) == a.galois_act(k) + b.galois_act(k)
    assert Cyc.rational(Fraction(2, 3)).galois_act(k) == Fraction(2, 3)


@given(cycs())
def test_embed_and_reduce(a):
    big = a.conductor * 9 if a.conductor % 3 == 0 else a.conductor * 3
    assert Cyc(big, a.coefficients_at(big)) == a
