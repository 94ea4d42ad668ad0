import pytest

from gringinv.dt.verify import (brute_force_units, oracle_equivalence, verify_exponent_bound,
                                verify_global_annihilation, verify_kernel_exponent)
from gringinv.errors import InputError
from gringinv.groups import builtin_group
from gringinv.ramification import GlobalExtData, LocalRamData, WildPlace


def test_brute_force_counts():
    assert len(brute_force_units(builtin_group("C3"), 3, 2)) == 486
    assert len(brute_force_units(builtin_group("trivial"), 3, 3)) == 18
    with pytest.raises(InputError):
        brute_force_units(builtin_group("C9"), 3, 2, budget=1000)


@pytest.mark.parametrize("name,K", [("C3", 2), ("C5", 1), ("C9", 1), ("C3xC3", 1)])
def test_oracle_small(name, K):
    G = builtin_group(name)
    rep = oracle_equivalence(G, G.prime, K)
    assert rep["ok"] and rep["independent_evaluation"]


def test_exponent_bound_examples():
    r = verify_exponent_bound(builtin_group("C3"))
    assert (r["exponent"], r["bounds"]) == (2, {"lower": 2, "upper": 2})
    r = verify_exponent_bound(builtin_group("C5"))
    assert (r["exponent"], r["bounds"]) == (4, {"lower": 4, "upper": 4})
    r = verify_exponent_bound(builtin_group("C3xC3"))
    assert r["ok"] and r["exponent"] % 2 == 0 and 6 % r["exponent"] == 0


def test_kernel_exponent_small():
    r = verify_kernel_exponent(builtin_group("C3xC3"), samples=20, seed=1)
    assert r["ok"] and r["power"] == 3 and not r["counterexamples"]
    again = verify_kernel_exponent(builtin_group("C3xC3"), samples=20, seed=1)
    assert again == r


def test_kernel_exponent_cyclic_vacuous():
    r = verify_kernel_exponent(builtin_group("C3"), samples=5, seed=0)
    assert r["ok"] and [0] in r["xi"]


def test_global_annihilation():
    C9 = builtin_group("C9")
    H = C9.full_subgroup
    d = LocalRamData.build(H.as_group, [0, 3, 6], [0, 3, 6], [0], 1, 3)
    r = verify_global_annihilation(GlobalExtData(C9, (WildPlace(3, H, d),)))
    assert r["ok"] and r["multiplier"] == 3 and not any(r["multiple_class"])
    empty = verify_global_annihilation(GlobalExtData(C9, ()))
    assert empty["ok"] and empty["vacuous"]
