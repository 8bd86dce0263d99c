import random

import pytest
from hypothesis import strategies as st

from tiling_disc.graph import EdgeLabeling, Graph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def labeled_graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=len(pairs), max_size=len(pairs)))
    edges = {e: s for e, keep, s in zip(pairs, mask, signs) if keep}
    g = Graph.from_edges(n, edges)
    return g, EdgeLabeling(g, edges)


@st.composite
def complete_labelings(draw, k):
    pairs = [(u, v) for u in range(k) for v in range(u + 1, k)]
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=len(pairs), max_size=len(pairs)))
    g = Graph.complete(k)
    return EdgeLabeling(g, dict(zip(pairs, signs)))


def random_labeled(n, p, rng):
    edges = {(u, v): rng.choice((1, -1)) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    g = Graph.from_edges(n, edges)
    return g, EdgeLabeling(g, edges)


@pytest.fixture
def rng():
    return random.Random(12345)
