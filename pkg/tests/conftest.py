import itertools

import numpy as np
import pytest
from hypothesis import settings

from rbh.bigraph import BipartiteGraph

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


def brute_rainbow(family, closed=False):
    """Reference search: try every vertex order and every graph assignment."""
    n_x, n = family.n_x, family.n
    k = len(family)
    for order in itertools.permutations(range(n)):
        if closed and order[0] != 0:
            continue
        pairs = list(zip(order, order[1:]))
        if closed:
            pairs.append((order[-1], order[0]))
        if any((u < n_x) == (v < n_x) for u, v in pairs):
            continue
        if len(pairs) != k:
            continue
        for assign in itertools.permutations(range(k)):
            if all(family[a].has_edge(u, v) for (u, v), a in zip(pairs, assign)):
                return order, assign
    return None


def random_graph(rng, n_x, n_y, p=0.5):
    return BipartiteGraph.from_biadjacency(rng.random((n_x, n_y)) < p)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
