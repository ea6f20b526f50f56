import itertools

import pytest
from hypothesis import given, settings, strategies as st

from bondcut.graph import Graph, complete_graph, cut_size, cycle_graph, is_connected, path_graph, star_graph
from bondcut.oracle import brute_largest_bond, brute_max_connected_cut
from bondcut.twincover import (
    BudgetExceeded,
    build_twin_cover_instance,
    clique_cut_value,
    is_twin_cover,
    min_twin_cover,
    tc_largest_bond,
    tc_max_connected_cut,
)


def clique_cover_graph(draw):
    """Cliques hung on a small cover, each clique type-uniform."""
    k = draw(st.integers(0, 3))
    X = list(range(k))
    edges = [e for e in itertools.combinations(X, 2) if draw(st.booleans())]
    n = k
    for _ in range(draw(st.integers(1, 3))):
        size = draw(st.integers(1, 3))
        T = [x for x in X if draw(st.booleans())]
        Z = list(range(n, n + size))
        n += size
        edges += list(itertools.combinations(Z, 2))
        edges += [(x, z) for x in T for z in Z]
    return Graph(n, edges)


def test_min_twin_cover_examples():
    assert min_twin_cover(complete_graph(4)) == frozenset()
    assert min_twin_cover(star_graph(4)) == {0}
    assert min_twin_cover(path_graph(3)) == {1}


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        min_twin_cover(cycle_graph(6), budget=2)
    assert len(min_twin_cover(cycle_graph(6), budget=3)) == 3


def test_instance_structure():
    G = star_graph(3)
    inst = build_twin_cover_instance(G, {0})
    assert sorted(map(sorted, inst.cliques)) == [[1], [2], [3]]
    assert all(t == {0} for t in inst.types)
    with pytest.raises(ValueError):
        build_twin_cover_instance(G, set())


@pytest.mark.parametrize(
    "G, X, mcc, bond",
    [(complete_graph(4), set(), 4, 4), (star_graph(4), {0}, 4, 1), (complete_graph(5), set(), 6, 6)],
)
def test_solver_examples(G, X, mcc, bond):
    inst = build_twin_cover_instance(G, X)
    r = tc_max_connected_cut(G, inst)
    assert r.cut_size == mcc and r.left_connected
    b = tc_largest_bond(G, inst)
    assert b.cut_size == bond and b.is_bond


def test_clique_formula_matches_concrete_cut():
    # a triangle joined to cover vertices 0 (kept on S) and 1 (kept on T);
    # 0 and 1 are not adjacent, so every cut edge touches the triangle
    G = Graph(5, [(2, 3), (2, 4), (3, 4)] + [(x, z) for x in (0, 1) for z in (2, 3, 4)])
    for p in range(4):
        for chosen in itertools.combinations((2, 3, 4), p):
            assert clique_cut_value(3, p, outside_s=1, inside_s=1) == cut_size(G, {0, *chosen})


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_matches_oracle(data):
    G = clique_cover_graph(data.draw)
    if G.n < 2 or not is_connected(G):
        return
    X = min_twin_cover(G)
    assert is_twin_cover(G, X)
    inst = build_twin_cover_instance(G, X)
    r = tc_max_connected_cut(G, inst)
    assert r.cut_size == brute_max_connected_cut(G).cut_size and r.left_connected
    b = tc_largest_bond(G, inst)
    assert b.cut_size == brute_largest_bond(G).cut_size and b.is_bond


def test_mixed_splits_inside_one_type():
    # two triangles of the same type over a single cover vertex
    G = Graph(7, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)] + [(0, v) for v in range(1, 7)])
    inst = build_twin_cover_instance(G, {0})
    assert len(inst.cliques) == 2
    assert tc_largest_bond(G, inst).cut_size == brute_largest_bond(G).cut_size
    assert tc_max_connected_cut(G, inst).cut_size == brute_max_connected_cut(G).cut_size
