import random

import pytest
from hypothesis import settings

from lmriv.graphcore import Graph, from_edge_list

settings.register_profile("lmriv", deadline=None)
settings.load_profile("lmriv")

ACCEPTANCE_LINES: list[str] = []


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return from_edge_list(n, edges)


def random_graph_with_non_edge(rng, n_lo=2, n_hi=10):
    while True:
        n = rng.randint(n_lo, n_hi)
        g = random_graph(rng, n, rng.uniform(0.1, 0.9))
        non = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
        if non:
            return g, rng.choice(non)


@pytest.fixture
def P3():
    return from_edge_list(3, [(0, 1), (1, 2)])


@pytest.fixture
def K3():
    return from_edge_list(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def K13():
    return from_edge_list(4, [(0, 1), (0, 2), (0, 3)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
