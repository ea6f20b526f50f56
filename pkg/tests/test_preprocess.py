import itertools

import pytest

from bondcut.generators import gen_subdivide, random_connected_graph
from bondcut.graph import (
    Graph,
    block_cut_tree,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    star_graph,
)
from bondcut.oracle import brute_largest_bond
from bondcut.preprocess import (
    MinorModel,
    bond_from_k2k_model,
    find_k2k_model_heuristic,
    internally_disjoint_paths,
    st_block_reduce,
    st_bond_from_k22k_model,
    winwin_pipeline,
)

# K_{2,4}: hubs 0 and 1, petals 2..5
K24 = complete_bipartite(2, 4)
# hub 0 extended by vertex 6, which also touches petal 2
K24_PLUS = Graph(7, [(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (6, 0), (6, 2)])


def biconnected_samples():
    out = []
    for seed in range(200):
        G = random_connected_graph(6 + seed % 4, 0.6, 7000 + seed)
        if len(block_cut_tree(G).blocks) == 1:
            out.append(G)
    return out


def test_model_validation_and_json():
    m = MinorModel({0}, {1}, [{2}, {3}, {4}])
    m.validate(complete_bipartite(2, 3))
    assert MinorModel.from_json(m.to_json()) == m
    with pytest.raises(ValueError):
        MinorModel({0}, {0}, [{2}]).validate(complete_bipartite(2, 3))
    with pytest.raises(ValueError):
        MinorModel({0}, {1}, [{2, 3}]).validate(complete_bipartite(2, 3))
    with pytest.raises(ValueError):
        MinorModel({2}, {3}, [{4}]).validate(complete_bipartite(2, 3))


def test_bond_from_natural_model():
    G = complete_bipartite(2, 3)
    r = bond_from_k2k_model(G, MinorModel({0}, {1}, [{2}, {3}, {4}]))
    assert r.is_bond and r.cut_size >= 3
    assert brute_largest_bond(G).cut_size == 3


def test_bond_from_cycle_model():
    r = bond_from_k2k_model(cycle_graph(4), MinorModel({0}, {2}, [{1}, {3}]))
    assert r.is_bond and r.cut_size >= 2


def test_bond_from_clique_model():
    r = bond_from_k2k_model(complete_graph(4), MinorModel({0}, {1}, [{2}, {3}]))
    assert r.is_bond and r.cut_size >= 2


def test_bond_from_model_rejects_invalid():
    with pytest.raises(ValueError):
        bond_from_k2k_model(cycle_graph(4), MinorModel({0}, {1}, [{2}, {3}]))


def model_fixtures():
    """(graph, model) pairs from natural embeddings and the heuristic search."""
    out = []
    for k in range(2, 6):
        G = complete_bipartite(2, k)
        out.append((G, MinorModel({0}, {1}, [{2 + i} for i in range(k)])))
        S = gen_subdivide(G)
        model = find_k2k_model_heuristic(S, k)
        out.append((S, model))
    for seed in range(30):
        G = random_connected_graph(7 + seed % 4, 0.45, 3000 + seed)
        for k in (2, 3, 4):
            model = find_k2k_model_heuristic(G, k)
            if model is not None:
                out.append((G, model))
    return out


def test_bond_lemma_on_fixture_models():
    fixtures = model_fixtures()
    assert len(fixtures) >= 20
    for G, model in fixtures:
        model.validate(G)
        r = bond_from_k2k_model(G, model)
        assert r.is_bond and r.cut_size >= model.k


@pytest.mark.parametrize(
    "G, s, t, v",
    [(cycle_graph(4), 0, 1, 2), (complete_graph(4), 0, 1, 2), (cycle_graph(5), 0, 2, 4), (cycle_graph(5), 1, 3, 0)],
)
def test_internally_disjoint_paths(G, s, t, v):
    Ps, Pt = internally_disjoint_paths(G, s, t, v)
    assert Ps[0] == s and Pt[0] == t and Ps[-1] == Pt[-1] == v
    assert set(Ps) & set(Pt) == {v}
    for P in (Ps, Pt):
        assert all(G.has_edge(a, b) for a, b in zip(P, P[1:]))


def test_internally_disjoint_paths_on_cycle_are_arcs():
    Ps, Pt = internally_disjoint_paths(cycle_graph(4), 0, 1, 2)
    assert Ps == [0, 3, 2] and Pt == [1, 2]


def test_internally_disjoint_paths_need_biconnectivity():
    with pytest.raises(ValueError):
        internally_disjoint_paths(path_graph(4), 0, 3, 1)


def test_paths_on_random_biconnected_graphs():
    for G in biconnected_samples()[:15]:
        for s, t, v in itertools.permutations(range(G.n), 3):
            Ps, Pt = internally_disjoint_paths(G, s, t, v)
            assert set(Ps) & set(Pt) == {v}


def test_st_lemma_hubs_as_anchors():
    model = MinorModel({0}, {1}, [{2}, {3}, {4}, {5}])
    r = st_bond_from_k22k_model(K24, 0, 1, model)
    assert r.is_bond and r.cut_size >= 2 and 0 in r.side and 1 not in r.side
    assert brute_largest_bond(K24, (0, 1)).cut_size == 4


def test_st_lemma_anchors_inside_one_branch_set():
    # s and t both lie in the extended hub {0, 6}, so the tree split is needed
    model = MinorModel({0, 6}, {1}, [{2}, {3}, {4}, {5}])
    model.validate(K24_PLUS)
    r = st_bond_from_k22k_model(K24_PLUS, 0, 6, model)
    assert r.is_bond and r.cut_size >= 2 and 0 in r.side and 6 not in r.side
    assert r.cut_size <= brute_largest_bond(K24_PLUS, (0, 6)).cut_size


def test_st_lemma_on_cycle():
    G = cycle_graph(6)
    model = MinorModel({0}, {3}, [{1, 2}, {4, 5}])
    for s, t in itertools.permutations(range(6), 2):
        r = st_bond_from_k22k_model(G, s, t, model)
        assert r.is_bond and r.cut_size >= 1 and s in r.side and t not in r.side


def test_st_lemma_all_anchor_pairs_on_fixtures():
    checked = 0
    for G in biconnected_samples():
        for k in (1, 2):
            model = find_k2k_model_heuristic(G, 2 * k)
            if model is None:
                continue
            for s, t in itertools.permutations(range(G.n), 2):
                r = st_bond_from_k22k_model(G, s, t, model)
                assert r.is_bond and r.cut_size >= k and s in r.side and t not in r.side
            checked += 1
    assert checked >= 20


def test_st_lemma_requires_biconnected():
    G = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)])
    with pytest.raises(ValueError):
        st_bond_from_k22k_model(G, 0, 4, MinorModel({0}, {2}, [{1}, {3}]))


def test_block_reduce_two_triangles():
    G = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    H, mapping = st_block_reduce(G, 0, 4)
    assert H.n == 5 and H.m == 6


def test_block_reduce_drops_pendant_path():
    G = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    H, mapping = st_block_reduce(G, 0, 1)
    assert H.n == 3 and H.m == 3
    assert set(mapping) == {0, 1, 2}


def test_block_reduce_same_block():
    G = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 2)])
    H, mapping = st_block_reduce(G, 0, 1)
    assert H.n == 4 and H.m == 4


def test_block_reduce_preserves_anchored_value():
    for seed in range(40):
        G = random_connected_graph(5 + seed % 8, 0.25, 4000 + seed)
        for s, t in [(0, G.n - 1), (1, G.n // 2)]:
            if s == t:
                continue
            H, mapping = st_block_reduce(G, s, t)
            a = brute_largest_bond(G, (s, t)).cut_size
            b = brute_largest_bond(H, (mapping[s], mapping[t])).cut_size
            assert a == b


def test_heuristic_finds_models():
    m = find_k2k_model_heuristic(complete_bipartite(2, 5), 5)
    assert m is not None and m.k == 5
    m.validate(complete_bipartite(2, 5))
    assert find_k2k_model_heuristic(cycle_graph(4), 2) is not None


def test_heuristic_finds_nothing_in_trees():
    assert find_k2k_model_heuristic(path_graph(6), 2) is None
    assert find_k2k_model_heuristic(star_graph(5), 2) is None


def test_pipeline_star_gives_decomposition():
    out = winwin_pipeline(star_graph(4), 3)
    assert not out.is_certificate and out.width == 1


def test_pipeline_k25_gives_certificate():
    out = winwin_pipeline(complete_bipartite(2, 5), 3)
    assert out.is_certificate
    assert out.certificate.is_bond and out.certificate.cut_size >= 3


def test_pipeline_cycle_either_way():
    out = winwin_pipeline(cycle_graph(6), 2)
    if out.is_certificate:
        assert out.certificate.is_bond and out.certificate.cut_size >= 2
    else:
        assert out.width is not None


def test_pipeline_anchored():
    G = Graph(7, [(0, 1), (1, 2), (2, 0), (2, 3)] + [(3, v) for v in (4, 5, 6)] + [(4, 5), (5, 6)])
    for s, t in itertools.permutations(range(7), 2):
        for k in (1, 2, 3):
            out = winwin_pipeline(G, k, (s, t))
            if out.is_certificate:
                c = out.certificate
                assert c.is_bond and c.cut_size >= k and s in c.side and t not in c.side
            else:
                assert set(out.anchors) == {out.mapping[s], out.mapping[t]}


def test_pipeline_rejects_disconnected():
    with pytest.raises(ValueError):
        winwin_pipeline(Graph(3, [(0, 1)]), 2)
