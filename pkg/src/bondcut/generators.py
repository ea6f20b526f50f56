"""Instance factories for the hardness reductions, with witness builders.

Each factory returns plain graphs with a fixed vertex layout so that
certificates (sides of cuts) can be written down directly from a solution
of the source problem.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .graph import CutResult, Graph, GraphError, components, is_connected, make_cut


# ---------------------------------------------------------------- psi / phi

def _copies(G: Graph):
    n = G.n
    return [(i * n + u, i * n + v) for i in range(n) for u, v in G.edges]


def gen_psi(G: Graph) -> Graph:
    """n copies of G plus two adjacent universal vertices (ids n*n and n*n+1).

    Vertex v of copy i gets id i*n + v.
    """
    n = G.n
    if n < 1:
        raise GraphError("psi needs at least one vertex")
    va, vb = n * n, n * n + 1
    edges = _copies(G) + [(va, vb)]
    for x in range(n * n):
        edges.append((x, va))
        edges.append((x, vb))
    return Graph(n * n + 2, edges)


def psi_threshold(n: int, k: int) -> int:
    return n * k + n * n + 1


def psi_certificate(G: Graph, side) -> frozenset:
    """Side of psi(G) built from a cut side of G: v_a plus every copy of it."""
    n = G.n
    return frozenset([n * n] + [i * n + v for i in range(n) for v in side])


def gen_phi(G: Graph) -> Graph:
    """n copies of G plus a vertex n*n joined to vertex 0 of every copy."""
    n = G.n
    if n < 1:
        raise GraphError("phi needs at least one vertex")
    va = n * n
    edges = _copies(G) + [(va, i * n) for i in range(n)]
    return Graph(n * n + 1, edges)


# ---------------------------------------------------------------- split graphs

@dataclass(frozen=True)
class SplitBondInstance:
    """Clique on V(G) = 0..n-1, then multiplier copies of every edge vertex."""

    graph: Graph
    source: Graph
    multiplier: int

    def threshold(self, k: int) -> int:
        return k * self.multiplier

    def edge_vertex(self, edge_index: int, copy: int) -> int:
        return self.source.n + edge_index * self.multiplier + copy

    def certificate(self, side) -> CutResult:
        """Bond from a cut side S1 of G; edge vertices join S2 only if both ends do."""
        S1 = set(side)
        n = self.source.n
        if not S1 or len(S1) >= n or not S1 <= set(range(n)):
            raise ValueError("side must be a nonempty proper subset of V(G)")
        out = set(S1)
        for i, (u, v) in enumerate(self.source.edges):
            if u in S1 or v in S1:
                out.update(self.edge_vertex(i, c) for c in range(self.multiplier))
        return make_cut(self.graph, out)


def gen_split_bond(G: Graph, multiplier: int | None = None) -> SplitBondInstance:
    n = G.n
    if n < 2:
        raise GraphError("split construction needs n > 1")
    M = n ** 3 if multiplier is None else int(multiplier)
    if M < 1:
        raise ValueError("multiplier must be positive")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    nxt = n
    for u, v in G.edges:
        for _ in range(M):
            edges.append((u, nxt))
            edges.append((v, nxt))
            nxt += 1
    return SplitBondInstance(Graph(nxt, edges), G, M)


@dataclass(frozen=True)
class X3CInstance:
    """U = 0..2(m-n)-1 (clique), then X, then the pendant groups Y."""

    graph: Graph
    elements: tuple
    triples: tuple
    origin: tuple
    n: int
    M: int
    target: int

    @property
    def m(self) -> int:
        return len(self.triples)

    def certificate(self, cover) -> CutResult:
        """Connected cut from an exact cover given as indices into the input triples."""
        picked = []
        for idx in cover:
            picked.append(self.origin.index(idx))
        seen = [x for i in picked for x in self.triples[i]]
        if sorted(seen) != sorted(range(len(self.elements))):
            raise ValueError("not an exact cover")
        m, n = self.m, self.n
        side = set(picked)
        side.update(range(m, 2 * (m - n)))
        x0 = 2 * (m - n)
        side.update(range(x0, x0 + 3 * n))
        return make_cut(self.graph, side)


def _replicate(triples, count, need):
    cover = [0] * count
    for t in triples:
        for x in t:
            cover[x] += 1
    if any(c == 0 for c in cover):
        raise ValueError("some element lies in no triple")
    out = list(triples)
    origin = list(range(len(triples)))
    while min(cover) < need:
        for i, t in enumerate(triples):
            if any(cover[x] < need for x in t):
                out.append(t)
                origin.append(i)
                for x in t:
                    cover[x] += 1
    return out, origin


def gen_split_x3c(X, F, M: int | None = None) -> X3CInstance:
    """Split graph for exact cover by 3-sets.

    Triples are copied verbatim (cycling through the input in order) until
    every element lies in at least 3(n+2) of them.
    """
    X = list(X)
    if len(X) % 3 or not X or len(set(X)) != len(X):
        raise ValueError("X must hold 3n distinct elements")
    pos = {x: i for i, x in enumerate(X)}
    triples = []
    for t in F:
        t = list(t)
        if len(t) != 3 or len(set(t)) != 3 or any(x not in pos for x in t):
            raise ValueError(f"malformed triple {t!r}")
        triples.append(tuple(sorted(pos[x] for x in t)))
    n = len(X) // 3
    M = 3 * n + 1 if M is None else int(M)
    fam, origin = _replicate(triples, len(X), 3 * (n + 2))
    m = len(fam)
    u_count = 2 * (m - n)
    x0 = u_count
    y0 = x0 + 3 * n
    edges = [(a, b) for a in range(u_count) for b in range(a + 1, u_count)]
    for i, t in enumerate(fam):
        edges.extend((i, x0 + x) for x in t)
    nxt = y0
    for i in range(m, u_count):
        for _ in range(M):
            edges.append((i, nxt))
            nxt += 1
    target = (m - n) ** 2 + 3 * m - 3 * n + (m - 2 * n) * M
    return X3CInstance(Graph(nxt, edges), tuple(X), tuple(fam), tuple(origin), n, M, target)


def find_exact_cover(X, F):
    """Indices of triples forming an exact cover, or None (plain backtracking)."""
    X = list(X)
    F = [frozenset(t) for t in F]
    holders = {x: [i for i, t in enumerate(F) if x in t] for x in X}

    def go(left, chosen):
        if not left:
            return chosen
        x = min(left, key=lambda y: len(holders[y]))
        for i in holders[x]:
            if F[i] <= left:
                got = go(left - F[i], chosen + [i])
                if got is not None:
                    return got
        return None

    return go(frozenset(X), [])


# ---------------------------------------------------------------- subdivision

def gen_subdivide(G: Graph) -> Graph:
    """Edge i becomes vertex n + i joined to both of its ends."""
    edges = []
    for i, (u, v) in enumerate(G.edges):
        edges.append((u, G.n + i))
        edges.append((v, G.n + i))
    return Graph(G.n + G.m, edges)


# ---------------------------------------------------------------- H_phi

@dataclass(frozen=True)
class HphiInstance:
    graph: Graph
    clauses: tuple
    variables: int
    K: int
    target: int
    parts: dict = field(compare=False)

    def literal_vertex(self, lit: int) -> int:
        i = abs(lit) - 1
        return 2 * i + (0 if lit > 0 else 1)

    def certificate(self, assignment) -> CutResult:
        """Connected cut from a satisfying assignment (sequence of bools for x1..xn)."""
        values = list(assignment)
        if len(values) != self.variables:
            raise ValueError("one truth value per variable is required")
        for c in self.clauses:
            if not any(values[abs(l) - 1] == (l > 0) for l in c):
                raise ValueError(f"clause {c} is not satisfied")
        side = {self.literal_vertex((i + 1) if v else -(i + 1)) for i, v in enumerate(values)}
        for name in ("clause", "helper", "bridge"):
            side.update(self.parts[name])
        return make_cut(self.graph, side)


def gen_hphi(clauses, variables: int | None = None, K: int | None = None) -> HphiInstance:
    """Bipartite graph for monotone 3-SAT; literals are nonzero ints (-i negates x_i).

    Layout: v(x_i) = 2(i-1), v(not x_i) = 2(i-1)+1, then helpers, clause
    vertices, bridge vertices, and finally all pendants.
    """
    clauses = tuple(tuple(int(l) for l in c) for c in clauses)
    for c in clauses:
        if len(c) != 3 or 0 in c or len({abs(l) for l in c}) != 3:
            raise ValueError(f"clause {c} must hold three distinct variables")
        if not (all(l > 0 for l in c) or all(l < 0 for l in c)):
            raise ValueError(f"clause {c} mixes positive and negative literals")
    m = len(clauses)
    n = max((abs(l) for c in clauses for l in c), default=0) if variables is None else int(variables)
    if n < 1 or any(abs(l) > n for c in clauses for l in c):
        raise ValueError("variable count does not cover the clauses")
    if m <= 2:
        warnings.warn("the threshold argument assumes more than two clauses", stacklevel=2)
    if K is None:
        r = math.isqrt(4 * m * m) + 1
        K = r * r
    root = math.isqrt(K)
    if root * root != K:
        raise ValueError("K must be a perfect square")
    edges = []
    nxt = 2 * n
    helpers = list(range(nxt, nxt + n * K))
    for i in range(n):
        for h in helpers[i * K:(i + 1) * K]:
            edges.append((2 * i, h))
            edges.append((2 * i + 1, h))
    nxt += n * K
    cvs = list(range(nxt, nxt + m))
    for j, c in enumerate(clauses):
        for l in c:
            edges.append((2 * (abs(l) - 1) + (0 if l > 0 else 1), cvs[j]))
    nxt += m
    bridges = list(range(nxt, nxt + n - 1))
    for i, b in enumerate(bridges):
        for lv in (2 * i, 2 * i + 1, 2 * i + 2, 2 * i + 3):
            edges.append((lv, b))
    nxt += n - 1
    pend = []

    def attach(v, count):
        nonlocal nxt
        for _ in range(count):
            edges.append((v, nxt))
            pend.append(nxt)
            nxt += 1

    for c in cvs:
        attach(c, root)
    for h in helpers:
        attach(h, K)
    for b in bridges:
        attach(b, K)
    target = m * root + n * K * K + (2 * n - 1) * K + 2 * (n - 1)
    parts = {"literal": list(range(2 * n)), "helper": helpers, "clause": cvs, "bridge": bridges, "pendant": pend}
    return HphiInstance(Graph(nxt, edges), clauses, n, K, target, parts)


# ---------------------------------------------------------------- edge embedding

K2 = Graph(2, [(0, 1)], weights=[1])


def _xi_step(G: Graph, H: Graph):
    """One embedding round.  Returns the new graph and, per replaced edge, its copy ids."""
    if not H.weighted:
        H = Graph(H.n, H.edges, weights=[1] * H.m)
    edges, weights, copies = [], [], {}
    nxt = H.n
    for (u, v), w in zip(H.edges, H.weights):
        if w == 0:
            edges.append((u, v))
            weights.append(0)
            continue
        ids = list(range(nxt, nxt + G.n))
        nxt += G.n
        copies[(u, v)] = ids
        for a, b in G.edges:
            edges.append((ids[a], ids[b]))
            weights.append(1)
        for x in ids:
            edges.extend([(u, x), (v, x)])
            weights.extend([0, 0])
    return Graph(nxt, edges, weights=weights), copies


def gen_xi(G: Graph, H: Graph, h: int) -> Graph:
    """Apply the G-edge embedding h times; new vertices are appended in edge order."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    if not is_connected(H):
        raise GraphError("H must be connected")
    for _ in range(h):
        H, _ = _xi_step(G, H)
    return H


def _cut_sides(G: Graph, L):
    """Two-colouring of V(G) whose crossing edges are exactly L, or ValueError."""
    L = {(min(e), max(e)) for e in L}
    if not L <= set(G.edges):
        raise ValueError("L holds a non-edge")
    keep = Graph(G.n, [e for e in G.edges if e not in L])
    comp_of = {}
    comps = components(keep)
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    colour = [-1] * len(comps)
    for start in range(len(comps)):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            c = stack.pop()
            for u, v in L:
                a, b = comp_of[u], comp_of[v]
                if c not in (a, b):
                    continue
                d = b if a == c else a
                if d == c:
                    raise ValueError("L is not a cut-set")
                if colour[d] < 0:
                    colour[d] = 1 - colour[c]
                    stack.append(d)
                elif colour[d] == colour[c]:
                    raise ValueError("L is not a cut-set")
    return {v for v in range(G.n) if colour[comp_of[v]] == 0}


def xi_bond_from_cut(G: Graph, L, h: int):
    """Bond of gen_xi(G, K2, h) of weight |L|**h built level by level.

    Returns (host graph, CutResult).  Copies hanging off a crossing edge
    put their L-side next to the endpoint in S; copies of non-crossing
    edges follow their endpoints.
    """
    if h < 0:
        raise ValueError("h must be nonnegative")
    left = _cut_sides(G, L)
    H = K2
    S = {0}
    for _ in range(h):
        H, copies = _xi_step(G, H)
        for (u, v), ids in copies.items():
            if (u in S) == (v in S):
                if u in S:
                    S.update(ids)
            else:
                near_s = left if u in S else set(range(G.n)) - left
                S.update(ids[x] for x in near_s)
    return H, make_cut(H, S)


# ---------------------------------------------------------------- random

def random_connected_graph(n: int, p: float, seed=0, max_attempts: int = 10000) -> Graph:
    """G(n, p) conditioned on connectivity; attempt i uses the stream (seed, i)."""
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    if n < 1:
        raise ValueError("n must be positive")
    iu, iv = np.triu_indices(n, k=1)
    for attempt in range(max_attempts):
        rng = np.random.default_rng([int(seed), attempt])
        keep = rng.random(len(iu)) < p
        G = Graph(n, zip(iu[keep].tolist(), iv[keep].tolist()))
        if is_connected(G):
            return G
    raise RuntimeError("no connected sample found")
