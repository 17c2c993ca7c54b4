import random

import pytest

from patrolgame import Graph


@pytest.fixture
def triangle():
    return Graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def five_node_graph():
    """Non-bipartite 5-node graph: a triangle b-c-d plus a-e hanging off it.

    Covering number 3, independence number 2, fractional total 5/2.
    """
    return Graph(
        ["a", "b", "c", "d", "e"],
        [
            ("a", "b"),
            ("a", "c"),
            ("a", "e"),
            ("b", "c"),
            ("b", "d"),
            ("c", "d"),
            ("d", "e"),
        ],
    )


def random_connected_graph(rng, max_n=6):
    """Random connected simple graph on 2..max_n nodes."""
    n = rng.randint(2, max_n)
    labels = [str(i) for i in range(1, n + 1)]
    edges = set()
    for i in range(1, n):
        j = rng.randrange(i)
        edges.add((labels[j], labels[i]))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.3:
                edges.add((labels[i], labels[j]))
    dedup = {tuple(sorted(e)) for e in edges}
    return Graph(labels, sorted(dedup))


@pytest.fixture
def rng():
    return random.Random(20260810)
