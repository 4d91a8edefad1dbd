from itertools import product
from typing import Optional, Sequence

import pytest
from hypothesis import strategies as st

from families import family, generate
from graph_core import Graph


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale runs (deselect with -m 'not slow')")


@st.composite
def simple_graphs(draw, max_n=8, min_edges=0):
    n = draw(st.integers(min_value=2 if min_edges else 1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=min_edges)) if pairs else []
    return Graph(n, chosen)


def is_interval_by_definition(g: Graph, colors: Sequence[int], t: int) -> bool:
    """Set-based reading of the definition, independent of coloring.verify_interval."""
    if set(colors) != set(range(1, t + 1)):
        return False
    for v in range(g.n):
        incident = [colors[i] for i, (a, b) in enumerate(g.edges) if v in (a, b)]
        if incident and set(incident) != set(range(min(incident), min(incident) + len(incident))):
            return False
    return True


def brute_force_feasible(g: Graph, t: int, budget: int = 200_000) -> Optional[bool]:
    if t ** g.m > budget:
        return None
    return any(is_interval_by_definition(g, colors, t) for colors in product(range(1, t + 1), repeat=g.m))


@pytest.fixture
def c4() -> Graph:
    return Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def p4() -> Graph:
    return Graph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def k4() -> Graph:
    return generate(family("complete", 4))


@pytest.fixture
def q3() -> Graph:
    return generate(family("hypercube", 3))


@pytest.fixture
def fan6() -> Graph:
    return generate(family("fan", 6))
