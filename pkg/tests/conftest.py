import itertools

import pytest

from bondcut.generators import random_connected_graph
from bondcut.graph import Graph, cut_size, is_connected


def naive_best(G, bond, anchors=None):
    """Plain itertools enumeration; slow but obviously right."""
    best = None
    for r in range(1, G.n):
        for S in itertools.combinations(range(G.n), r):
            S = set(S)
            if anchors and (anchors[0] not in S or anchors[1] in S):
                continue
            if not is_connected(G, S):
                continue
            if bond and not is_connected(G, set(range(G.n)) - S):
                continue
            c = cut_size(G, S)
            best = c if best is None else max(best, c)
    return best


def naive_max_cut(G):
    return max(cut_size(G, S) for r in range(G.n + 1) for S in itertools.combinations(range(G.n), r))


@pytest.fixture(scope="session")
def random_graphs():
    """Seeded connected graphs, n = 2..9, three densities."""
    out = []
    for i in range(45):
        n = 2 + i % 8
        p = (0.3, 0.5, 0.8)[i % 3]
        out.append(random_connected_graph(n, p, seed=500 + i))
    return out


# graphs whose values are referred to from several test modules
BRIDGE = Graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
