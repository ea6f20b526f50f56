"""Exact dynamic programming over decomposition trees (module-width).

At a tree node with leaf set L the vertices of L fall into twin classes
(same neighbourhood outside L).  A state records, per class, how many of
its vertices lie on side S (the rest lie on T), together with a connectivity
profile for each side: the components of G[S ∩ L] described by the set of
classes they touch, with multiplicity capped at two.  Components touching
the same classes behave identically from then on, so this profile is all
the future needs to decide connectivity.  Classes of the two children are
either completely joined or completely non-adjacent, which makes both the
number of new cut edges and the merging of components functions of the
states alone.

For the connected cut variant only the profile of S is kept.
"""

from __future__ import annotations

from .decomposition import DecompositionTree
from .graph import CutResult, Graph, is_connected, make_cut


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class _Merge:
    """Combination rules between the two children of one tree node."""

    def __init__(self, G, tree, v):
        node = tree.nodes[v]
        a, b = node.children
        ca, cb = tree.nodes[a].classes, tree.nodes[b].classes
        parent_of = {}
        for i, cls in enumerate(node.classes):
            for x in cls:
                parent_of[x] = i
        self.up_a = [parent_of[min(c)] for c in ca]
        self.up_b = [parent_of[min(c)] for c in cb]
        self.size_a = [len(c) for c in ca]
        self.size_b = [len(c) for c in cb]
        self.adj_a = []
        self.pairs = []
        for i, X in enumerate(ca):
            mask = 0
            for j, Y in enumerate(cb):
                links = {G.has_edge(x, y) for x in X for y in Y}
                assert len(links) == 1, "child classes must be fully joined or fully apart"
                if links.pop():
                    mask |= 1 << j
                    self.pairs.append((i, j))
            self.adj_a.append(mask)
        leaves = 0
        for x in node.leaves:
            leaves |= 1 << x
        closed = 0
        for i, cls in enumerate(node.classes):
            if G.neighbor_mask(min(cls)) & ~leaves == 0:
                closed |= 1 << i
        self.closed = closed
        self.width = len(node.classes)
        self._counts = {}
        self._profiles = {}

    def counts(self, pa, pb):
        key = (pa, pb)
        hit = self._counts.get(key)
        if hit is None:
            p = [0] * self.width
            for i, x in enumerate(pa):
                p[self.up_a[i]] += x
            for j, x in enumerate(pb):
                p[self.up_b[j]] += x
            cross = 0
            for i, j in self.pairs:
                cross += pa[i] * (self.size_b[j] - pb[j]) + pb[j] * (self.size_a[i] - pa[i])
            hit = (tuple(p), cross)
            self._counts[key] = hit
        return hit

    def profile(self, fa, fb):
        key = (fa, fb)
        if key in self._profiles:
            return self._profiles[key]
        items = [(J, m, True) for J, m in fa] + [(J, m, False) for J, m in fb]
        parent = list(range(len(items)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        na = len(fa)
        for x in range(na):
            reach = 0
            for i in _bits(fa[x][0]):
                reach |= self.adj_a[i]
            for y in range(na, len(items)):
                if reach & items[y][0]:
                    parent[find(x)] = find(y)
        groups = {}
        for x in range(len(items)):
            groups.setdefault(find(x), []).append(x)
        merged = {}
        for members in groups.values():
            J = 0
            for x in members:
                cls, _, left = items[x]
                up = self.up_a if left else self.up_b
                for i in _bits(cls):
                    J |= 1 << up[i]
            mult = items[members[0]][1] if len(members) == 1 else 1
            merged[J] = min(2, merged.get(J, 0) + mult)
        out = tuple(sorted(merged.items()))
        total = sum(m for _, m in out)
        if total > 1 and any(J & ~self.closed == 0 for J, _ in out):
            out = None
        self._profiles[key] = out
        return out


class ModuleWidthDP:
    def __init__(self, G: Graph, tree: DecompositionTree, two_sided: bool = True):
        if tree.graph.n != G.n or (G.n and tree.nodes[-1].leaves != frozenset(range(G.n))):
            raise ValueError("decomposition tree does not match the graph")
        if G.weighted:
            raise ValueError("module-width solver expects an unweighted graph")
        self.G = G
        self.tree = tree
        self.two_sided = two_sided
        self.tables = []
        self.preds = []
        self._run()

    @property
    def state_counts(self):
        return [len(t) for t in self.tables]

    def _run(self):
        two = self.two_sided
        for v, node in enumerate(self.tree.nodes):
            table, pred = {}, {}
            if not node.children:
                one = ((1, 1),)
                inside = ((1,), one, ()) if two else ((1,), one)
                outside = ((0,), (), one) if two else ((0,), ())
                for key in (inside, outside):
                    table[key] = 0
                    pred[key] = None
            else:
                rule = _Merge(self.G, self.tree, v)
                a, b = node.children
                right = list(self.tables[b].items())
                for ka, va in self.tables[a].items():
                    for kb, vb in right:
                        fs = rule.profile(ka[1], kb[1])
                        if fs is None:
                            continue
                        if two:
                            ft = rule.profile(ka[2], kb[2])
                            if ft is None:
                                continue
                        p, cross = rule.counts(ka[0], kb[0])
                        key = (p, fs, ft) if two else (p, fs)
                        val = va + vb + cross
                        if val > table.get(key, -1):
                            table[key] = val
                            pred[key] = (ka, kb)
            self.tables.append(table)
            self.preds.append(pred)

    def best_root(self):
        n = self.G.n
        one = ((1, 1),)
        best = None
        for key, val in self.tables[-1].items():
            p = key[0][0]
            if not 1 <= p <= n - 1 or key[1] != one:
                continue
            if self.two_sided and key[2] != one:
                continue
            if best is None or val > best[1]:
                best = (key, val)
        return best

    def witness(self, key):
        side = set()
        stack = [(len(self.tree.nodes) - 1, key)]
        while stack:
            v, k = stack.pop()
            node = self.tree.nodes[v]
            if not node.children:
                if k[0][0]:
                    side.add(next(iter(node.leaves)))
                continue
            ka, kb = self.preds[v][k]
            stack.append((node.children[0], ka))
            stack.append((node.children[1], kb))
        return side


def mw_solve(G: Graph, T: DecompositionTree, problem: str = "bond", stats=None) -> CutResult | None:
    """Largest bond (problem="bond") or maximum connected cut ("connected-cut")."""
    if problem not in ("bond", "connected-cut"):
        raise ValueError(f"unknown problem {problem!r}")
    if not is_connected(G):
        raise ValueError("input graph must be connected")
    if G.n < 2:
        return None
    dp = ModuleWidthDP(G, T, two_sided=problem == "bond")
    if stats is not None:
        stats["state_counts"] = dp.state_counts
        stats["peak_states"] = max(dp.state_counts)
    best = dp.best_root()
    if best is None:
        return None
    result = make_cut(G, dp.witness(best[0]))
    assert result.cut_size == best[1]
    return result
