"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line with its wall time and
time budget; the lines are also collected into the pytest terminal summary.
Groups are built fresh here so no cached result from another test module
shortens the timings.
"""

import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from gringinv.center import nrd, twist
from gringinv.characters import character_table, monomial_rep
from gringinv.dt import component_units_from_center, dt_class, dt_compute, dt_membership
from gringinv.dt.verify import oracle_equivalence, verify_exponent_bound, verify_kernel_exponent
from gringinv.groups import abelian_group, heisenberg_group
from gringinv.ramification import (GlobalExtData, LocalRamData, WildPlace, closed_form_element, equivariant_y,
                                   global_c, valid_local_data)

RESULTS: list[str] = []


def fresh(name):
    if name.startswith("heisenberg"):
        return heisenberg_group(3)
    return abelian_group([int(x) for x in name[1:].split("xC")], name)


CORPUS = ["C3", "C9", "C27", "C3xC3", "C5", "C25", "heisenberg-27"]


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        line = f"[FAIL] {number}. {title} ({elapsed:.2f}s, budget {budget}s): {type(exc).__name__}: {exc}"
        RESULTS.append(line)
        print(line)
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed <= budget
    extra = f" {detail['info']}" if "info" in detail else ""
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title} ({elapsed:.2f}s, budget {budget}s){extra}"
    RESULTS.append(line)
    print(line)
    assert ok, f"criterion {number} exceeded its {budget}s budget"


def test_1_dt_golden_values():
    expected = {"C3": (2,), "C5": (4,), "C7": (6,)}
    with criterion(1, "DT golden values C3 -> Z/2, C5 -> Z/4, C7 -> Z/6", 90) as info:
        for name, factors in expected.items():
            t = time.perf_counter()
            assert dt_compute(fresh(name)).invariant_factors == factors
            assert time.perf_counter() - t < 30
        info["info"] = "exact match"


def test_2_exponent_bounds_corpus():
    with criterion(2, "exponent(DT) between p-1 and (p-1)|G|/p on the corpus", 1800) as info:
        found = []
        for name in CORPUS:
            rep = verify_exponent_bound(fresh(name))
            assert rep["ok"], rep["checks"]
            found.append(f"{name}:{rep['exponent']}")
        info["info"] = " ".join(found)


@pytest.mark.parametrize("name", ["C9", "C3xC3"])
def test_3_kernel_exponent(name):
    with criterion(3, f"kernel classes of all Xi-projections, {name}, 200 samples", 600) as info:
        rep = verify_kernel_exponent(fresh(name), samples=200, seed=0)
        assert not rep["counterexamples"] and rep["ok"]
        info["info"] = f"kernel hits {rep['kernel_hits']}, counterexamples 0"


def _sample_local_data(count=100, seed=0):
    rng = random.Random(seed)
    groups = [fresh(n) for n in CORPUS]
    pools = [valid_local_data(G) for G in groups]
    data = [rng.choice(rng.choice(pools)) for _ in range(count)]
    # make sure the totally ramified case is represented
    data += [d for pool in pools for d in pool if d.is_totally_ramified]
    return data


@pytest.fixture(scope="module")
def local_data():
    return _sample_local_data()


def test_4_closed_form_identity(local_data):
    with criterion(4, "twist formula equals Nrd of the closed form on 100 random data plus all totally ramified ones", 60) as info:
        for d in local_data:
            via_twist = twist(equivariant_y(d), 1, -1, 2)
            via_nrd = nrd(closed_form_element(d))
            assert via_twist == via_nrd
        info["info"] = f"{len(local_data)} data"


def test_5_annihilation(local_data):
    with criterion(5, "c^|G/inertia| = 1, and c = 1 when totally ramified", 60) as info:
        total = 0
        for d in local_data:
            c = twist(equivariant_y(d), 1, -1, 2)
            assert (c ** (d.group.order // d.inertia.order)).is_one()
            if d.is_totally_ramified:
                assert c.is_one()
                total += 1
        assert total
        info["info"] = f"{len(local_data)} data, {total} totally ramified"


def test_6_global_annihilation_c9():
    with criterion(6, "global C9 datum: class of c^(n/p) vanishes, n/p = 3", 300) as info:
        G = fresh("C9")
        H = G.full_subgroup
        d = LocalRamData.build(H.as_group, [0, 3, 6], [0, 3, 6], [0], 1, 3)
        g = GlobalExtData(G, (WildPlace(3, H, d),))
        dt = dt_compute(G)
        x = component_units_from_center(global_c(g), dt.wd, dt.precision)
        assert dt_class(x ** 3, dt) == (0,) * len(dt.invariant_factors)
        assert dt_membership(x ** 3, dt)
        info["info"] = f"class of c = {dt_class(x, dt)}"


def test_7_oracle_equivalence_c3():
    with criterion(7, "generator-built B_4 equals enumerated image for (Z/81)[C3]", 120) as info:
        rep = oracle_equivalence(fresh("C3"), 3, 4)
        assert rep["ok"], rep["checks"]
        info["info"] = f"{rep['ring_units']} units, image {rep['image_size']}"


def test_8_character_theory():
    with criterion(8, "orthogonality, Adams permutation, monomial reps of heisenberg-27", 120):
        for name in CORPUS:
            tbl = character_table(fresh(name))
            assert tbl.check_orthogonality()
            perm = tbl.adams_permutation(2)
            assert sorted(perm) == list(range(len(tbl)))
        for chi in character_table(fresh("heisenberg-27")):
            assert monomial_rep(chi).check()


def _cli_bytes(tmp_path, tag, *args):
    out = tmp_path / f"{tag}.json"
    subprocess.run([sys.executable, "-m", "gringinv.cli", *args, "--out", str(out)], check=True)
    return out.read_bytes()


def test_9_determinism(tmp_path):
    with criterion(9, "identical config gives byte-identical reports", 300) as info:
        runs = [("verify", "C9", "--samples", "30", "--seed", "4"), ("dt", "heisenberg-27")]
        for k, args in enumerate(runs):
            a = _cli_bytes(tmp_path, f"a{k}", *args)
            b = _cli_bytes(tmp_path, f"b{k}", *args)
            assert a == b
        info["info"] = f"{len(runs)} commands in separate processes"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
