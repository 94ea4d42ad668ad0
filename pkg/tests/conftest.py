import cmath
import os

import pytest
from hypothesis import HealthCheck, settings

from gringinv.groups import builtin_group

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CORPUS = ["C3", "C9", "C27", "C3xC3", "C5", "C25", "heisenberg-27"]


def to_complex(x) -> complex:
    """Numerical value of a Cyc under zeta_n -> exp(2 pi i / n); an oracle independent of Cyc arithmetic."""
    n = x.conductor
    return sum(complex(float(c)) * cmath.exp(2j * cmath.pi * k / n) for k, c in enumerate(x.coeffs))


def brute_classes(G):
    seen, out = set(), []
    for x in range(G.order):
        if x in seen:
            continue
        cls = {G.mul[G.mul[g][x]][G.inv[g]] for g in range(G.order)}
        seen |= cls
        out.append(frozenset(cls))
    return out


@pytest.fixture(scope="session", params=CORPUS)
def corpus_group(request):
    return builtin_group(request.param)


@pytest.fixture(scope="session")
def heis():
    return builtin_group("heisenberg-27")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
