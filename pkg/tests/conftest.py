import random

import pytest
from hypothesis import settings

from essalg.ring_core import QQ, PolyRing

settings.register_profile("essalg", max_examples=60, deadline=None)
settings.load_profile("essalg")


@pytest.fixture
def rng():
    return random.Random(20261016)


def random_poly(ring: PolyRing, rng: random.Random, max_terms=4, max_deg=3, coeff_range=3):
    p = ring.zero()
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * ring.nvars
        for _ in range(rng.randint(0, max_deg)):
            exps[rng.randrange(ring.nvars)] += 1
        c = rng.randint(-coeff_range, coeff_range)
        p = p + ring.monomial(tuple(exps), c)
    return p


@pytest.fixture
def xy_ring():
    return PolyRing(["x", "y"], QQ)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
