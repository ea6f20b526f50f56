"""Simple undirected graphs with optional 0/1 edge weights."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass


class GraphError(ValueError):
    """Raised when a graph cannot be built from the given data."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Graph:
    """Immutable simple graph on vertices 0..n-1.

    Edges are stored canonically as (u, v) with u < v, sorted
    lexicographically. ``weights`` is either None (every edge weighs 1)
    or a tuple aligned with ``edges`` holding values in {0, 1}.
    """

    __slots__ = ("n", "edges", "adj", "weights", "labels", "_mask", "_eindex")

    def __init__(self, n, edges, weights=None, labels=None):
        n = int(n)
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        pairs = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has a vertex out of range")
            pairs.append((min(u, v), max(u, v)))
        if weights is not None:
            weights = [int(w) for w in weights]
            if len(weights) != len(pairs):
                raise GraphError("weights and edges differ in length")
            if any(w not in (0, 1) for w in weights):
                raise GraphError("edge weights must be 0 or 1")
            order = sorted(range(len(pairs)), key=lambda i: pairs[i])
            pairs = [pairs[i] for i in order]
            weights = tuple(weights[i] for i in order)
        else:
            pairs.sort()
        for a, b in zip(pairs, pairs[1:]):
            if a == b:
                raise GraphError(f"duplicate edge {a}")
        self.n = n
        self.edges = tuple(pairs)
        self.weights = weights
        nbrs = [[] for _ in range(n)]
        for u, v in pairs:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self._mask = tuple(sum(1 << u for u in a) for a in self.adj)
        self._eindex = {e: i for i, e in enumerate(pairs)}
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        if len(self.labels) != n:
            raise GraphError("one label per vertex is required")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def neighbor_mask(self, v: int) -> int:
        return self._mask[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._eindex

    def edge_index(self, u: int, v: int) -> int:
        return self._eindex[(min(u, v), max(u, v))]

    def weight(self, u: int, v: int) -> int:
        i = self._eindex[(min(u, v), max(u, v))]
        return 1 if self.weights is None else self.weights[i]

    def edge_weights(self):
        """Weights aligned with ``edges`` (all ones when unweighted)."""
        if self.weights is None:
            return (1,) * len(self.edges)
        return self.weights

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def induced(self, vertices):
        """Induced subgraph relabelled to 0..k-1, plus the list old_of_new."""
        old = sorted(set(vertices))
        new_of = {v: i for i, v in enumerate(old)}
        edges, ws = [], []
        for i, (u, v) in enumerate(self.edges):
            if u in new_of and v in new_of:
                edges.append((new_of[u], new_of[v]))
                if self.weights is not None:
                    ws.append(self.weights[i])
        sub = Graph(len(old), edges, ws if self.weights is not None else None,
                    labels=[self.labels[v] for v in old])
        return sub, old

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.edges, self.edge_weights()) == (other.n, other.edges, other.edge_weights())

    def __hash__(self):
        return hash((self.n, self.edges, self.edge_weights()))

    def __repr__(self):
        tag = ", weighted" if self.weighted else ""
        return f"Graph(n={self.n}, m={self.m}{tag})"


@dataclass(frozen=True)
class CutResult:
    side: frozenset
    cut_size: int
    left_connected: bool
    right_connected: bool

    @property
    def is_bond(self) -> bool:
        return self.left_connected and self.right_connected

    def other_side(self, n: int) -> frozenset:
        return frozenset(range(n)) - self.side


def make_cut(G: Graph, side) -> CutResult:
    """Build a CutResult with every field recomputed from G."""
    S = frozenset(side)
    T = frozenset(range(G.n)) - S
    return CutResult(S, cut_size(G, S), is_connected(G, S), is_connected(G, T))


def to_mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def mask_to_set(mask: int) -> frozenset:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def mask_is_connected(G: Graph, mask: int) -> bool:
    """Connectivity of G[mask]; the empty set counts as connected."""
    if mask == 0:
        return True
    low = mask & -mask
    seen = low
    frontier = low
    while frontier:
        v = frontier.bit_length() - 1
        frontier ^= 1 << v
        new = G._mask[v] & mask & ~seen
        seen |= new
        frontier |= new
    return seen == mask


def mask_components(G: Graph, mask: int) -> int:
    count = 0
    rest = mask
    while rest:
        low = rest & -rest
        seen = low
        frontier = low
        while frontier:
            v = frontier.bit_length() - 1
            frontier ^= 1 << v
            new = G._mask[v] & rest & ~seen
            seen |= new
            frontier |= new
        rest &= ~seen
        count += 1
    return count


def is_connected(G: Graph, subset=None) -> bool:
    if subset is None:
        return mask_is_connected(G, (1 << G.n) - 1)
    return mask_is_connected(G, to_mask(subset))


def components(G: Graph, subset=None):
    """Connected components of G[subset] as sorted lists, ordered by minimum."""
    allowed = set(range(G.n)) if subset is None else set(subset)
    seen = set()
    out = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def cut_size(G: Graph, S) -> int:
    inside = S if isinstance(S, (set, frozenset)) else set(S)
    total = 0
    for (u, v), w in zip(G.edges, G.edge_weights()):
        if (u in inside) != (v in inside):
            total += w
    return total


def cut_edges(G: Graph, S):
    inside = S if isinstance(S, (set, frozenset)) else set(S)
    return [e for e in G.edges if (e[0] in inside) != (e[1] in inside)]


def is_bond(G: Graph, S) -> bool:
    mask = to_mask(S)
    full = (1 << G.n) - 1
    if mask == 0 or mask == full:
        return False
    return mask_is_connected(G, mask) and mask_is_connected(G, full & ~mask)


def is_bipartite(G: Graph) -> bool:
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


@dataclass(frozen=True)
class BlockCutTree:
    blocks: tuple
    cut_vertices: frozenset
    tree_edges: tuple
    block_edges: tuple

    def blocks_of(self, v: int):
        return [i for i, b in enumerate(self.blocks) if v in b]


def block_cut_tree(G: Graph) -> BlockCutTree:
    """Blocks via the iterative lowpoint DFS with an edge stack."""
    n = G.n
    disc = [-1] * n
    low = [0] * n
    found = []
    isolated = []
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        if not G.adj[root]:
            disc[root] = timer
            timer += 1
            isolated.append(root)
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(G.adj[root]))]
        estack = []
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    estack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(G.adj[w])))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    estack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[u])
                if low[u] >= disc[parent]:
                    edges = []
                    while True:
                        e = estack.pop()
                        edges.append((min(e), max(e)))
                        if e == (parent, u):
                            break
                    found.append(edges)
    records = []
    for edges in found:
        verts = frozenset(x for e in edges for x in e)
        records.append((min(verts), tuple(sorted(verts)), verts, tuple(sorted(set(edges)))))
    for v in isolated:
        records.append((v, (v,), frozenset([v]), ()))
    records.sort(key=lambda r: (r[0], r[1]))
    blocks = tuple(r[2] for r in records)
    block_edges = tuple(r[3] for r in records)
    count = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    cuts = frozenset(v for v, c in count.items() if c > 1)
    tree = tuple((i, v) for i, b in enumerate(blocks) for v in sorted(b) if v in cuts)
    return BlockCutTree(blocks, cuts, tree, block_edges)


def true_twin_classes(G: Graph):
    """Partition of V by closed neighbourhood, classes ordered by minimum."""
    groups = {}
    for v in range(G.n):
        groups.setdefault(G._mask[v] | (1 << v), []).append(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)


# ---------------------------------------------------------------- text I/O

FORMATS = ("edge-list", "pace-gr", "json")


def _clean_lines(text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _ints(tokens, no):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"malformed line {' '.join(tokens)!r}", no) from None


def _collect(n, triples, no_of, offset):
    edges, ws, seen = [], [], set()
    any_weight = any(len(t) == 3 for t in triples)
    for t, no in zip(triples, no_of):
        u, v = t[0] - offset, t[1] - offset
        if u == v:
            raise ParseError(f"self-loop at vertex {t[0]}", no)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range in edge {t[0]} {t[1]}", no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {t[0]} {t[1]}", no)
        seen.add(key)
        edges.append(key)
        if any_weight:
            w = t[2] if len(t) == 3 else 1
            if w not in (0, 1):
                raise ParseError(f"edge weight {w} is not 0 or 1", no)
            ws.append(w)
    return edges, (ws if any_weight else None)


def _parse_edge_list(text):
    lines = list(_clean_lines(text))
    if not lines:
        raise ParseError("missing header `n m`", 1)
    no, head = lines[0]
    nums = _ints(head.split(), no)
    if len(nums) != 2 or min(nums) < 0:
        raise ParseError("header must be `n m`", no)
    n, m = nums
    triples, nos = [], []
    for no, line in lines[1:]:
        vals = _ints(line.split(), no)
        if len(vals) not in (2, 3):
            raise ParseError(f"malformed edge line {line!r}", no)
        triples.append(vals)
        nos.append(no)
    if len(triples) != m:
        raise ParseError(f"header announces {m} edges, found {len(triples)}", lines[0][0])
    edges, ws = _collect(n, triples, nos, 0)
    return Graph(n, edges, ws)


def _parse_pace(text):
    header = None
    triples, nos = [], []
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "p":
            if header is not None or len(toks) != 4 or toks[1] != "tw":
                raise ParseError("header must be `p tw n m`", no)
            header = (_ints(toks[2:], no), no)
            continue
        if header is None:
            raise ParseError("edge before `p tw n m` header", no)
        vals = _ints(toks, no)
        if len(vals) != 2:
            raise ParseError(f"malformed edge line {line!r}", no)
        triples.append(vals)
        nos.append(no)
    if header is None:
        raise ParseError("missing `p tw n m` header", 1)
    (n, m), hno = header
    if len(triples) != m:
        raise ParseError(f"header announces {m} edges, found {len(triples)}", hno)
    edges, _ = _collect(n, triples, nos, 1)
    return Graph(n, edges, labels=range(1, n + 1))


def _parse_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise ParseError("expected an object with keys n and edges", 1)
    n = data["n"]
    raw = data["edges"]
    weights = data.get("weights")
    if not isinstance(n, int) or n < 0:
        raise ParseError("n must be a nonnegative integer", 1)
    triples = []
    for e in raw:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise ParseError(f"malformed edge {e!r}", 1)
        triples.append([int(e[0]), int(e[1])])
    if weights is not None:
        if len(weights) != len(triples):
            raise ParseError("weights and edges differ in length", 1)
        triples = [t + [int(w)] for t, w in zip(triples, weights)]
    edges, ws = _collect(n, triples, [1] * len(triples), 0)
    if weights is not None and ws is None:
        ws = []
    return Graph(n, edges, ws)


def parse_graph(text, fmt: str = "edge-list") -> Graph:
    if fmt == "edge-list":
        return _parse_edge_list(text)
    if fmt == "pace-gr":
        return _parse_pace(text)
    if fmt == "json":
        return _parse_json(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def format_for_path(path) -> str:
    name = str(path).lower()
    if name.endswith(".gr"):
        return "pace-gr"
    if name.endswith(".json"):
        return "json"
    return "edge-list"


def read_graph(path, fmt: str | None = None) -> Graph:
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_graph(data, fmt or format_for_path(path))


def emit_graph(G: Graph, fmt: str = "edge-list") -> str:
    if fmt == "edge-list":
        lines = [f"{G.n} {G.m}"]
        if G.weighted:
            lines += [f"{u} {v} {w}" for (u, v), w in zip(G.edges, G.weights)]
        else:
            lines += [f"{u} {v}" for u, v in G.edges]
        return "\n".join(lines) + "\n"
    if fmt == "pace-gr":
        if G.weighted:
            raise GraphError("pace-gr cannot carry edge weights")
        lines = [f"p tw {G.n} {G.m}"] + [f"{u + 1} {v + 1}" for u, v in G.edges]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        data = {"n": G.n, "edges": [list(e) for e in G.edges]}
        if G.weighted:
            data["weights"] = list(G.weights)
        return json.dumps(data) + "\n"
    raise ValueError(f"unknown graph format {fmt!r}")


# ----------------------------------------------------------- small families

def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)
