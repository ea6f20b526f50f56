"""Tree decompositions, nice tree decompositions and decomposition trees."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph, ParseError, to_mask


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple
    tree_edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "tree_edges", tuple((int(a), int(b)) for a, b in self.tree_edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def heuristic_tree_decomposition(G: Graph, strategy: str = "min-fill") -> TreeDecomposition:
    """Elimination-ordering decomposition; ties go to the smaller vertex id."""
    if strategy not in ("min-fill", "min-degree"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if G.n == 0:
        return TreeDecomposition((), ())
    nbrs = {v: set(G.adj[v]) for v in range(G.n)}
    order, bags = [], []
    while nbrs:
        best, best_key = None, None
        for v in sorted(nbrs):
            if strategy == "min-degree":
                key = len(nbrs[v])
            else:
                ns = sorted(nbrs[v])
                key = sum(1 for i, a in enumerate(ns) for b in ns[i + 1:] if b not in nbrs[a])
            if best_key is None or key < best_key:
                best, best_key = v, key
        v = best
        ns = nbrs.pop(v)
        for a in ns:
            nbrs[a].discard(v)
            nbrs[a] |= ns - {a}
        order.append(v)
        bags.append(frozenset(ns | {v}))
    pos = {v: i for i, v in enumerate(order)}
    parent = []
    for i, v in enumerate(order):
        later = [pos[u] for u in bags[i] if u != v]
        if later:
            parent.append(min(later))
        else:
            parent.append(i + 1 if i + 1 < len(order) else -1)
    return _compress(bags, parent)


def _compress(bags, parent):
    """Contract tree edges whose bags are nested, keeping the larger bag."""
    bags = list(bags)
    alive = [True] * len(bags)
    parent = list(parent)
    changed = True
    while changed:
        changed = False
        for i in range(len(bags)):
            p = parent[i]
            if not alive[i] or p < 0:
                continue
            if bags[i] <= bags[p] or bags[p] <= bags[i]:
                bags[p] = bags[p] | bags[i]
                alive[i] = False
                for j in range(len(bags)):
                    if alive[j] and parent[j] == i:
                        parent[j] = p
                changed = True
    keep = [i for i in range(len(bags)) if alive[i]]
    index = {old: new for new, old in enumerate(keep)}
    edges = sorted((index[i], index[parent[i]]) for i in keep if parent[i] >= 0)
    return TreeDecomposition([bags[i] for i in keep], edges)


def validate_td(G: Graph, td: TreeDecomposition):
    """List of violations (empty when td is a tree decomposition of G)."""
    problems = []
    k = len(td.bags)
    for i, bag in enumerate(td.bags):
        bad = sorted(v for v in bag if not (0 <= v < G.n))
        if bad:
            problems.append(f"bag {i} holds unknown vertex {bad[0]}")
    adj = [[] for _ in range(k)]
    for a, b in td.tree_edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            problems.append(f"tree edge ({a}, {b}) is invalid")
            continue
        adj[a].append(b)
        adj[b].append(a)
    if k and not problems:
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != k or len(td.tree_edges) != k - 1:
            problems.append("bags are not joined into a single tree")
    if G.n and not k:
        problems.append("no bags")
    for v in range(G.n):
        holders = [i for i, b in enumerate(td.bags) if v in b]
        if not holders:
            problems.append(f"vertex {v} is in no bag")
            continue
        inside = set(holders)
        seen = {holders[0]}
        queue = deque([holders[0]])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in inside and y not in seen:
                    seen.add(y)
                    queue.append(y)
        if seen != inside:
            problems.append(f"bags holding vertex {v} are not connected")
    for u, v in G.edges:
        if not any(u in b and v in b for b in td.bags):
            problems.append(f"edge {u}-{v} is not covered")
    return problems


# ------------------------------------------------------------- nice form

LEAF, INTRODUCE, INTRODUCE_EDGE, FORGET, JOIN = "leaf", "introduce", "introduce-edge", "forget", "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset
    children: tuple = ()
    vertex: int | None = None
    edge: tuple | None = None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nodes are stored children-first; the last node is the root."""

    nodes: tuple
    anchors: tuple = ()

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(x.bag) for x in self.nodes) - 1

    def parents(self):
        par = [-1] * len(self.nodes)
        for i, node in enumerate(self.nodes):
            for c in node.children:
                par[c] = i
        return par


def to_nice(G: Graph, td: TreeDecomposition, anchors=None) -> NiceTreeDecomposition:
    """Nice decomposition whose every bag contains the anchors.

    Leaves and the root carry exactly the anchor set.  Every edge is
    introduced once, directly above the first node (children first order)
    where both endpoints are present.
    """
    problems = validate_td(G, td)
    if problems:
        raise ValueError("invalid tree decomposition: " + "; ".join(problems))
    A = frozenset(int(a) for a in anchors) if anchors else frozenset()
    if len(A) != len(anchors or ()) or any(not (0 <= a < G.n) for a in A):
        raise ValueError(f"invalid anchors {anchors!r}")
    bags = [b | A for b in td.bags]
    k = len(bags)
    kids = [[] for _ in range(k)]
    if k:
        adj = [[] for _ in range(k)]
        for a, b in td.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        queue = deque([0])
        post = []
        while queue:
            x = queue.popleft()
            post.append(x)
            for y in sorted(adj[x]):
                if y not in seen:
                    seen.add(y)
                    kids[x].append(y)
                    queue.append(y)
        post.reverse()
    else:
        post = []

    raw = []
    min_leaf = []

    def add(kind, bag, children=(), vertex=None):
        raw.append([kind, bag, tuple(children), vertex])
        if kind == LEAF:
            min_leaf.append(len(raw) - 1)
        else:
            min_leaf.append(min(min_leaf[c] for c in children))
        return len(raw) - 1

    def chain(idx, src, dst):
        for v in sorted(src - dst):
            src = src - {v}
            idx = add(FORGET, src, (idx,), v)
        for v in sorted(dst - src):
            src = src | {v}
            idx = add(INTRODUCE, src, (idx,), v)
        return idx

    top = {}
    for t in post:
        if not kids[t]:
            top[t] = chain(add(LEAF, A), A, bags[t])
            continue
        branches = sorted((chain(top[c], bags[c], bags[t]) for c in kids[t]), key=lambda i: min_leaf[i])
        cur = branches[0]
        for other in branches[1:]:
            left, right = sorted((cur, other), key=lambda i: min_leaf[i])
            cur = add(JOIN, bags[t], (left, right))
        top[t] = cur
    if k:
        root = chain(top[0], bags[0], A)
    else:
        root = add(LEAF, A)

    remaining = set(G.edges)
    plan = {}
    for i, (kind, bag, _, vertex) in enumerate(raw):
        if kind == LEAF:
            here = sorted(e for e in remaining if e[0] in A and e[1] in A)
        elif kind == INTRODUCE:
            here = sorted((min(u, vertex), max(u, vertex)) for u in G.adj[vertex] if u in bag)
            here = [e for e in here if e in remaining]
        else:
            continue
        if here:
            plan[i] = here
            remaining.difference_update(here)
    if remaining:
        raise ValueError(f"edges never share a bag: {sorted(remaining)}")

    new_index = {}
    nodes = []
    for i, (kind, bag, children, vertex) in enumerate(raw):
        ch = tuple(new_index[c] for c in children)
        nodes.append(NiceNode(kind, bag, ch, vertex))
        last = len(nodes) - 1
        for e in plan.get(i, ()):
            nodes.append(NiceNode(INTRODUCE_EDGE, bag, (last,), None, e))
            last = len(nodes) - 1
        new_index[i] = last
    assert new_index[root] == len(nodes) - 1
    return NiceTreeDecomposition(tuple(nodes), tuple(sorted(A)))


# ------------------------------------------------------- PACE .td format

def parse_td(text, n: int | None = None) -> TreeDecomposition:
    """Read the PACE ``s td`` format (1-based bags and vertices)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    bags = {}
    edges = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        try:
            if toks[0] == "s":
                if header is not None or len(toks) != 5 or toks[1] != "td":
                    raise ParseError("header must be `s td bags width+1 n`", no)
                header = tuple(int(x) for x in toks[2:])
                continue
            if header is None:
                raise ParseError("content before the `s td` header", no)
            if toks[0] == "b":
                idx = int(toks[1])
                verts = [int(x) for x in toks[2:]]
                if not 1 <= idx <= header[0]:
                    raise ParseError(f"bag id {idx} out of range", no)
                if idx in bags:
                    raise ParseError(f"bag {idx} listed twice", no)
                for v in verts:
                    if not 1 <= v <= header[2]:
                        raise ParseError(f"vertex {v} exceeds n = {header[2]}", no)
                if n is not None and header[2] != n:
                    raise ParseError(f"decomposition is for {header[2]} vertices, graph has {n}", no)
                bags[idx] = frozenset(v - 1 for v in verts)
                continue
            a, b = (int(x) for x in toks)
        except ValueError:
            raise ParseError(f"malformed line {line!r}", no) from None
        if not (1 <= a <= header[0] and 1 <= b <= header[0]):
            raise ParseError(f"tree edge {a} {b} names an unknown bag", no)
        edges.append((a - 1, b - 1))
    if header is None:
        raise ParseError("missing `s td` header", 1)
    count, size, _ = header
    if len(bags) != count:
        raise ParseError(f"header announces {count} bags, found {len(bags)}", 1)
    largest = max((len(b) for b in bags.values()), default=0)
    if largest != size:
        raise ParseError(f"header width+1 = {size} but the largest bag has {largest} vertices", 1)
    return TreeDecomposition([bags[i] for i in range(1, count + 1)], edges)


def emit_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{a + 1} {b + 1}" for a, b in td.tree_edges]
    return "\n".join(lines) + "\n"


# --------------------------------------------------- decomposition trees

def twin_classes(G: Graph, subset):
    """Group ``subset`` by neighbourhood outside it; classes sorted by minimum."""
    inside = to_mask(subset)
    groups = {}
    for v in sorted(set(subset)):
        groups.setdefault(G.neighbor_mask(v) & ~inside, []).append(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)


@dataclass(frozen=True)
class TreeNode:
    leaves: frozenset
    children: tuple
    classes: tuple


class DecompositionTree:
    """Rooted binary tree whose leaves are the vertices of G.

    Nodes are kept children-first with the root last; at each internal node
    the child holding the smaller vertex id comes first.
    """

    def __init__(self, G: Graph, nested):
        self.graph = G
        nodes = []

        def norm(x):
            if isinstance(x, int):
                return x, x
            if len(x) == 1:
                return norm(x[0])
            if len(x) != 2:
                raise ValueError("decomposition tree nodes need exactly two children")
            a, b = norm(x[0]), norm(x[1])
            key = lambda c: c[1]
            a, b = sorted((a, b), key=key)
            return (a[0], b[0]), min(a[1], b[1])

        self.nested = norm(nested)[0] if G.n else ()
        done = []
        stack = [(self.nested, False)] if G.n else []
        while stack:
            item, expanded = stack.pop()
            if isinstance(item, int):
                if not 0 <= item < G.n:
                    raise ValueError(f"leaf {item} is not a vertex")
                nodes.append(TreeNode(frozenset([item]), (), (frozenset([item]),)))
                done.append(len(nodes) - 1)
            elif not expanded:
                stack.append((item, True))
                stack.append((item[1], False))
                stack.append((item[0], False))
            else:
                right = done.pop()
                left = done.pop()
                if nodes[left].leaves & nodes[right].leaves:
                    raise ValueError("a vertex appears twice in the decomposition tree")
                leaves = nodes[left].leaves | nodes[right].leaves
                nodes.append(TreeNode(leaves, (left, right), tuple(twin_classes(G, leaves))))
                done.append(len(nodes) - 1)
        self.nodes = tuple(nodes)
        if G.n and self.nodes[-1].leaves != frozenset(range(G.n)):
            raise ValueError("decomposition tree leaves must be exactly the vertex set")

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(x.classes) for x in self.nodes)

    def serialize(self) -> str:
        def out(x):
            if isinstance(x, int):
                return str(x)
            return "(" + " ".join(out(c) for c in x) + ")"
        return out(self.nested)

    @classmethod
    def parse(cls, G: Graph, text: str):
        tokens = text.replace("(", " ( ").replace(")", " ) ").split()
        pos = 0

        def read():
            nonlocal pos
            if pos >= len(tokens):
                raise ParseError("unexpected end of decomposition tree")
            tok = tokens[pos]
            pos += 1
            if tok == "(":
                items = []
                while pos < len(tokens) and tokens[pos] != ")":
                    items.append(read())
                if pos >= len(tokens):
                    raise ParseError("unbalanced parentheses")
                pos += 1
                return tuple(items)
            if tok == ")":
                raise ParseError("unexpected ')'")
            try:
                return int(tok)
            except ValueError:
                raise ParseError(f"bad leaf {tok!r}") from None

        tree = read()
        if pos != len(tokens):
            raise ParseError("trailing tokens after decomposition tree")
        return cls(G, tree)


def heuristic_decomposition_tree(G: Graph) -> DecompositionTree:
    """Greedy merging: join the two subtrees whose union has fewest twin classes."""
    parts = [(v, frozenset([v])) for v in range(G.n)]
    while len(parts) > 1:
        best = None
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                union = parts[i][1] | parts[j][1]
                key = (len(twin_classes(G, union)), len(union), min(parts[i][1]), min(parts[j][1]))
                if best is None or key < best[0]:
                    best = (key, i, j)
        _, i, j = best
        merged = ((parts[i][0], parts[j][0]), parts[i][1] | parts[j][1])
        parts = [p for k, p in enumerate(parts) if k not in (i, j)] + [merged]
    return DecompositionTree(G, parts[0][0] if parts else ())
