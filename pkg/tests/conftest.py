import random
from fractions import Fraction

import pytest
from hypothesis import settings

from tnn_certify import Family, ProperPair, make_context
from tnn_certify.generate import random_network

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def example_ctx():
    return make_context(5, 5, [], [1, 2, 3, 4, 5], [], [1, 2, 3, 4, 5])


def example_families():
    A = Family.of([(ProperPair.of([1, 2], [4, 5]), 1), (ProperPair.of([1, 2], [3, 4]), 1)])
    B = Family.of([(ProperPair.of([1, 2], [3, 5]), 1)])
    return A, B


def small_networks(count, seed, max_vertices=12, max_terminals=3):
    """Random valid networks with nonnegative rational weights."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n, n_prime = rng.randint(1, max_terminals), rng.randint(1, max_terminals)
        G = random_network(rng, n, n_prime, rng.randint(0, max_vertices - n - n_prime))
        w = {v: Fraction(rng.randint(0, 6), rng.randint(1, 3)) for v in G.vertices}
        out.append((G, w))
    return out


@pytest.fixture
def ctx5():
    return example_ctx()


@pytest.fixture
def families5():
    return example_families()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
