"""Win/win preprocessing: K_{2,k} minor models yield large bonds, otherwise
the graph has small treewidth and is handed to the decomposition DP."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .decomposition import NiceTreeDecomposition, heuristic_tree_decomposition, to_nice
from .graph import CutResult, Graph, block_cut_tree, components, is_connected, make_cut


@dataclass(frozen=True)
class MinorModel:
    """Branch sets of a K_{2,k} minor: hubs A and B, petals X_1..X_k."""

    A: frozenset
    B: frozenset
    petals: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        object.__setattr__(self, "B", frozenset(self.B))
        object.__setattr__(self, "petals", tuple(frozenset(p) for p in self.petals))

    @property
    def k(self) -> int:
        return len(self.petals)

    def branch_sets(self):
        return [self.A, self.B, *self.petals]

    def validate(self, G: Graph):
        sets = self.branch_sets()
        seen = set()
        for X in sets:
            if not X:
                raise ValueError("empty branch set")
            if seen & X:
                raise ValueError("branch sets overlap")
            if not all(0 <= v < G.n for v in X):
                raise ValueError("branch set holds a non-vertex")
            seen |= X
            if not is_connected(G, X):
                raise ValueError(f"branch set {sorted(X)} is not connected")
        for X in self.petals:
            for hub in (self.A, self.B):
                if not any(G.has_edge(x, y) for x in X for y in hub):
                    raise ValueError(f"petal {sorted(X)} misses a hub")

    def to_json(self) -> str:
        return json.dumps([sorted(X) for X in self.branch_sets()])

    @classmethod
    def from_json(cls, text: str) -> "MinorModel":
        data = json.loads(text)
        if len(data) < 2:
            raise ValueError("a model lists A, B and the petals")
        return cls(data[0], data[1], data[2:])


# ---------------------------------------------------------------- flows

def _disjoint_paths(G: Graph, sources, targets, limit: int, shared=(), skip_edges=()):
    """Up to ``limit`` paths from ``sources`` to ``targets``, vertex-disjoint
    except at vertices in ``shared``.  Paths never pass through a source or
    target in their interior.  Unit-capacity augmenting paths on the
    vertex-split network.
    """
    sources, targets, shared = set(sources), set(targets), set(shared)
    skip = {(min(e), max(e)) for e in skip_edges}
    big = limit + 1
    cap = {}

    def arc(a, b, c):
        cap.setdefault(a, {})
        cap.setdefault(b, {})
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    for v in range(G.n):
        arc(("in", v), ("out", v), big if v in shared else 1)
    for u, v in G.edges:
        if (u, v) in skip:
            continue
        for a, b in ((u, v), (v, u)):
            if b in sources or a in targets:
                continue
            arc(("out", a), ("in", b), 1)
    for s in sources:
        arc("S", ("in", s), big)
    for t in targets:
        arc(("out", t), "T", big)
    flow = 0
    while flow < limit:
        prev = {"S": None}
        queue = deque(["S"])
        while queue and "T" not in prev:
            a = queue.popleft()
            for b, c in cap[a].items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if "T" not in prev:
            break
        b = "T"
        while prev[b] is not None:
            a = prev[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1
    # an arc carries flow iff its reverse residual is positive; flow cycles
    # avoid every path because interior vertices have capacity one
    used = {}
    for a in range(G.n):
        for b in cap[("out", a)]:
            if b != "T" and b[0] == "in" and b[1] != a and cap[b].get(("out", a), 0) > 0:
                used.setdefault(a, []).append(b[1])
    paths = []
    for s in sorted(sources):
        for _ in range(cap[("in", s)]["S"]):
            path = [s]
            while path[-1] not in targets:
                path.append(used[path[-1]].pop())
            paths.append(path)
    return paths


def _is_biconnected(G: Graph) -> bool:
    if G.n < 3 or not is_connected(G):
        return False
    return len(block_cut_tree(G).blocks) == 1


def internally_disjoint_paths(G: Graph, s: int, t: int, v: int):
    """An s-v path and a t-v path meeting only at v."""
    if len({s, t, v}) != 3:
        raise ValueError("s, t and v must be distinct")
    if not _is_biconnected(G):
        raise ValueError("graph is not 2-vertex-connected")
    two = _disjoint_paths(G, [s], [v], 2, shared={s, v})
    assert len(two) == 2
    prev = {t: None}
    queue = deque([t])
    on = {}
    for i, p in enumerate(two):
        for x in p[1:]:
            on[x] = i
    hit = t if t in on else None
    while queue and hit is None:
        a = queue.popleft()
        for b in G.adj[a]:
            if b != s and b not in prev:
                prev[b] = a
                if b in on:
                    hit = b
                    break
                queue.append(b)
    assert hit is not None
    head = [hit]
    while prev[head[-1]] is not None:
        head.append(prev[head[-1]])
    head.reverse()
    other = two[on[hit]]
    P_t = head + other[other.index(hit) + 1:]
    P_s = two[1 - on[hit]]
    return P_s, P_t


# ---------------------------------------------------------------- lemmas

def bond_from_k2k_model(G: Graph, model: MinorModel) -> CutResult:
    """Bond with at least k edges: S is the component of G - (B u petals)
    holding A; everything else, petals included, forms the other side."""
    if not is_connected(G):
        raise ValueError("input graph must be connected")
    model.validate(G)
    blocked = set(model.B).union(*model.petals)
    allowed = [v for v in range(G.n) if v not in blocked]
    a = min(model.A)
    S = next(c for c in components(G, allowed) if a in c)
    result = make_cut(G, S)
    assert result.is_bond and result.cut_size >= model.k
    return result


def _extend_model(G: Graph, model: MinorModel) -> MinorModel:
    """Grow branch sets until they cover V; validity is preserved."""
    sets = [set(X) for X in model.branch_sets()]
    owner = {v: i for i, X in enumerate(sets) for v in X}
    queue = deque(sorted(owner))
    while queue:
        u = queue.popleft()
        for w in G.adj[u]:
            if w not in owner:
                owner[w] = owner[u]
                sets[owner[u]].add(w)
                queue.append(w)
    return MinorModel(sets[0], sets[1], sets[2:])


def _tree_split(G: Graph, U, s, P_s, P_t):
    """Split U along the U-prefixes of P_s and P_t using a BFS tree rooted at s."""
    pre_s, pre_t = [], []
    for x in P_s:
        if x not in U:
            break
        pre_s.append(x)
    for x in P_t:
        if x not in U:
            break
        pre_t.append(x)
    label = {x: "s" for x in pre_s}
    label.update({x: "t" for x in pre_t})
    parent = {s: None}
    order = [s]
    queue = deque([s])
    while queue:
        a = queue.popleft()
        for b in G.adj[a]:
            if b in U and b not in parent:
                parent[b] = a
                order.append(b)
                queue.append(b)
    for x in order:
        if x not in label:
            label[x] = label[parent[x]]
    return {x for x in U if label[x] == "s"}, {x for x in U if label[x] == "t"}


def st_bond_from_k22k_model(G: Graph, s: int, t: int, model: MinorModel) -> CutResult:
    """st-bond with at least k edges from a K_{2,2k} model; side holds s."""
    if model.k < 2 or model.k % 2:
        raise ValueError("model needs an even, positive number of petals")
    if s == t:
        raise ValueError("s and t must differ")
    model.validate(G)
    if not _is_biconnected(G):
        raise ValueError("graph is not 2-vertex-connected")
    k = model.k // 2
    full = _extend_model(G, model)
    everything = set(range(G.n))
    for hub in (full.A, full.B):
        for X in full.petals:
            S = hub | X
            if s in S and t not in S:
                result = make_cut(G, S)
                assert result.is_bond and result.cut_size >= 2 * k - 1
                return result
    # s and t share a branch set: take it together with one hub
    home = next(X for X in full.branch_sets() if s in X)
    if home in (full.A, full.B):
        U = set(home) | set(full.petals[-1])
    else:
        U = set(full.A) | set(home)
    Q = everything - U
    v = min(Q)
    P_s, P_t = internally_disjoint_paths(G, s, t, v)
    U_s, U_t = _tree_split(G, U, s, P_s, P_t)

    def towards_q(part):
        return sum(1 for x in part for y in G.adj[x] if y in Q)

    if towards_q(U_s) >= towards_q(U_t):
        S = U_s
    else:
        S = U_s | Q
    result = make_cut(G, S)
    assert result.is_bond and result.cut_size >= k and s in result.side and t not in result.side
    return result


def _block_path(G: Graph, s: int, t: int):
    bct = block_cut_tree(G)
    nodes = {}
    for i, b in enumerate(bct.blocks):
        nodes[("b", i)] = []
    for i, v in bct.tree_edges:
        nodes[("b", i)].append(("c", v))
        nodes.setdefault(("c", v), []).append(("b", i))

    def home(x):
        return ("c", x) if x in bct.cut_vertices else ("b", bct.blocks_of(x)[0])

    start, goal = home(s), home(t)
    prev = {start: None}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in nodes[a]:
            if b not in prev:
                prev[b] = a
                queue.append(b)
    path = [goal]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    path.reverse()
    return bct, path


def st_block_reduce(G: Graph, s: int, t: int):
    """Keep only the blocks on the block-cut-tree path from s to t.

    Returns (G', mapping) with mapping old vertex -> new vertex.
    """
    if s == t:
        raise ValueError("s and t must differ")
    if not is_connected(G):
        raise ValueError("input graph must be connected")
    bct, path = _block_path(G, s, t)
    keep = set()
    for kind, i in path:
        if kind == "b":
            keep |= bct.blocks[i]
    keep |= {s, t}
    sub, old = G.induced(sorted(keep))
    return sub, {v: i for i, v in enumerate(old)}


def find_k2k_model_heuristic(G: Graph, k: int) -> MinorModel | None:
    """Look for K_{2,k} with hub A a vertex or an edge and hub B a vertex.

    Petals are the interiors of internally disjoint A-B paths (direct A-B
    edges are ignored).  Failing to find a model proves nothing.
    """
    if k < 1 or G.n < 3:
        return None
    by_degree = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    hubs = [(v,) for v in by_degree] + sorted(G.edges, key=lambda e: (-G.degree(e[0]) - G.degree(e[1]), e))
    for A in hubs:
        for b in by_degree:
            if b in A or sum(G.degree(a) for a in A) < k or G.degree(b) < k:
                continue
            direct = [(a, b) for a in A if G.has_edge(a, b)]
            if len(A) == 2:
                direct.append(A)
            paths = _disjoint_paths(G, A, [b], k, shared=set(A) | {b}, skip_edges=direct)
            if len(paths) >= k:
                petals = sorted((p[1:-1] for p in paths[:k]), key=min)
                model = MinorModel(A, [b], petals)
                model.validate(G)
                return model
    return None


# ---------------------------------------------------------------- pipeline

@dataclass(frozen=True)
class Outcome:
    """Either a bond certificate on G or a nice decomposition of ``graph``.

    For anchored runs ``graph`` is the block-reduced graph, ``mapping``
    sends vertices of G to it, and ``anchors`` are the mapped anchors.
    """

    certificate: CutResult | None
    decomposition: NiceTreeDecomposition | None
    graph: Graph
    mapping: dict
    anchors: tuple | None = None

    @property
    def is_certificate(self) -> bool:
        return self.certificate is not None

    @property
    def width(self):
        return None if self.decomposition is None else self.decomposition.width


def _lift(G: Graph, block: set, block_edges, side_in_block):
    """Side of G extending a cut of one block; hanging parts follow their attachment."""
    rest = Graph(G.n, [e for e in G.edges if e not in block_edges])
    side = set()
    for comp in components(rest):
        att = [v for v in comp if v in block]
        assert len(att) == 1
        if att[0] in side_in_block:
            side.update(comp)
    return side


def winwin_pipeline(G: Graph, k: int, anchors=None) -> Outcome:
    """Bond of size >= k from a minor model, else a nice tree decomposition.

    The minor search runs first; the decomposition is the fallback and is
    returned whatever its width.
    """
    if not is_connected(G):
        raise ValueError("input graph must be connected")
    if anchors is None:
        model = find_k2k_model_heuristic(G, k)
        if model is not None:
            cert = bond_from_k2k_model(G, model)
            return Outcome(cert, None, G, {v: v for v in range(G.n)})
        td = heuristic_tree_decomposition(G)
        return Outcome(None, to_nice(G, td), G, {v: v for v in range(G.n)})
    s, t = (int(a) for a in anchors)
    bct, path = _block_path(G, s, t)
    for pos, (kind, i) in enumerate(path):
        if kind != "b" or len(bct.blocks[i]) < 3:
            continue
        block = bct.blocks[i]
        sub, old = G.induced(sorted(block))
        new = {v: j for j, v in enumerate(old)}
        entry = s if pos == 0 else path[pos - 1][1]
        leave = t if pos == len(path) - 1 else path[pos + 1][1]
        model = find_k2k_model_heuristic(sub, 2 * k)
        if model is None:
            continue
        local = st_bond_from_k22k_model(sub, new[entry], new[leave], model)
        side_in_block = {old[x] for x in local.side}
        side = _lift(G, block, set(bct.block_edges[i]), side_in_block)
        cert = make_cut(G, side)
        assert cert.is_bond and s in cert.side and t not in cert.side and cert.cut_size >= k
        return Outcome(cert, None, G, {v: v for v in range(G.n)})
    sub, mapping = st_block_reduce(G, s, t)
    pair = (mapping[s], mapping[t])
    td = heuristic_tree_decomposition(sub)
    return Outcome(None, to_nice(sub, td, pair), sub, mapping, pair)
