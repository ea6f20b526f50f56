"""Twin-cover computation and the solvers parameterised by it.

Outside a twin-cover X the graph falls apart into cliques of true twins,
and all vertices of such a clique see the same part of X (its type).  The
solvers guess how X is split, then decide per type which sides its cliques
touch; inside a clique only the number of vertices on each side matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .graph import CutResult, Graph, components, is_bond, is_connected, make_cut


class BudgetExceeded(RuntimeError):
    """No twin-cover within the requested budget."""


@dataclass(frozen=True)
class TwinCoverInstance:
    X: frozenset
    cliques: tuple
    types: tuple


def _twin_edge(G, u, v):
    return (G.neighbor_mask(u) | (1 << u)) == (G.neighbor_mask(v) | (1 << v))


def _vertex_cover(edges, k):
    if not edges:
        return []
    if k == 0:
        return None
    u, v = edges[0]
    for pick in (u, v):
        rest = [e for e in edges if pick not in e]
        sub = _vertex_cover(rest, k - 1)
        if sub is not None:
            return [pick] + sub
    return None


def min_twin_cover(G: Graph, budget: int | None = None) -> frozenset:
    """Smallest X covering every edge that does not join true twins."""
    edges = [e for e in G.edges if not _twin_edge(G, *e)]
    limit = G.n if budget is None else budget
    for k in range(limit + 1):
        cover = _vertex_cover(edges, k)
        if cover is not None:
            return frozenset(cover)
    raise BudgetExceeded(f"no twin-cover of size <= {limit}")


def is_twin_cover(G: Graph, X) -> bool:
    X = set(X)
    return all(u in X or v in X or _twin_edge(G, u, v) for u, v in G.edges)


def build_twin_cover_instance(G: Graph, X) -> TwinCoverInstance:
    X = frozenset(X)
    if not is_twin_cover(G, X):
        raise ValueError("X is not a twin-cover")
    rest = [v for v in range(G.n) if v not in X]
    cliques, types = [], []
    for comp in components(G, rest):
        for i, u in enumerate(comp):
            for v in comp[i + 1:]:
                assert G.has_edge(u, v), "component outside the cover is not a clique"
        kinds = {frozenset(G.adj[v]) & X for v in comp}
        assert len(kinds) == 1, "clique vertices see different parts of the cover"
        cliques.append(frozenset(comp))
        types.append(kinds.pop())
    return TwinCoverInstance(X, tuple(cliques), tuple(types))


def clique_cut_value(size: int, p: int, outside_s: int, inside_s: int) -> int:
    """Cut edges at a clique with p of its vertices in S.

    ``outside_s``: neighbours of the clique in X on the T side;
    ``inside_s``: neighbours in X on the S side.
    """
    return p * (size - p) + p * outside_s + (size - p) * inside_s


def _best_split(sizes, f, need_s, need_t):
    """Choose p per clique maximising the sum with the "some S" / "some T" demands."""
    table = {(False, False): (0, ())}
    for z, g in zip(sizes, f):
        nxt = {}
        for (hs, ht), (val, ps) in table.items():
            for p in range(z + 1):
                key = (hs or p > 0, ht or p < z)
                cand = (val + g[p], ps + (p,))
                if key not in nxt or cand[0] > nxt[key][0]:
                    nxt[key] = cand
        table = nxt
    best = None
    for (hs, ht), cand in table.items():
        if (need_s and not hs) or (need_t and not ht):
            continue
        if best is None or cand[0] > best[0]:
            best = cand
    return best


def _popcount(x):
    return bin(x).count("1")


class _Layout:
    def __init__(self, G, tc):
        if G.weighted:
            raise ValueError("twin-cover solvers expect an unweighted graph")
        if not is_connected(G):
            raise ValueError("input graph must be connected")
        self.G = G
        self.xs = sorted(tc.X)
        pos = {v: i for i, v in enumerate(self.xs)}
        self.xadj = [sum(1 << pos[u] for u in G.adj[v] if u in pos) for v in self.xs]
        groups = {}
        for Z, T in zip(tc.cliques, tc.types):
            groups.setdefault(sum(1 << pos[v] for v in T), []).append(sorted(Z))
        self.types = sorted(groups)
        self.groups = [sorted(groups[t], key=min) for t in self.types]
        self.k = len(self.xs)

    def internal(self, xin):
        total = 0
        for i in range(self.k):
            if (xin >> i) & 1:
                total += _popcount(self.xadj[i] & ~xin)
        return total

    def connected(self, xin, attach):
        """Is X' plus one node per attached type connected?"""
        if xin == 0:
            return False
        seen = xin & -xin
        frontier = seen
        pending = list(attach)
        while frontier:
            i = frontier.bit_length() - 1
            frontier ^= 1 << i
            new = self.xadj[i] & xin & ~seen
            still = []
            for t in pending:
                if (t >> i) & 1:
                    new |= t & xin & ~seen
                else:
                    still.append(t)
            pending = still
            seen |= new
            frontier |= new
        return seen == xin and not pending

    def options(self, xin, idx, need_s, need_t, force=None):
        t = self.types[idx]
        a = _popcount(t & ~xin)
        b = _popcount(t & xin)
        sizes = [len(Z) for Z in self.groups[idx]]
        if force is not None:
            ps = tuple((z if force else 0) for z in sizes)
            return sum(clique_cut_value(z, p, a, b) for z, p in zip(sizes, ps)), ps
        f = [[clique_cut_value(z, p, a, b) for p in range(z + 1)] for z in sizes]
        return _best_split(sizes, f, need_s, need_t)

    def side(self, xin, splits):
        S = {self.xs[i] for i in range(self.k) if (xin >> i) & 1}
        for idx, ps in splits.items():
            for Z, p in zip(self.groups[idx], ps):
                S.update(Z[:p])
        return S


def _single_clique_cuts(G, lay, complement):
    """Sides meeting exactly one clique (or, for the complement, missing one)."""
    everything = set(range(G.n))
    for cl in lay.groups:
        for Z in cl:
            for p in range(1, len(Z) + 1):
                part = set(Z[:p])
                yield everything - part if complement else part


def tc_max_connected_cut(G: Graph, tc: TwinCoverInstance) -> CutResult | None:
    if G.n < 2:
        return None
    lay = _Layout(G, tc)
    full = set(range(G.n))
    best_val, best_side = -1, None

    def offer(val, S):
        nonlocal best_val, best_side
        if 0 < len(S) < G.n and val > best_val:
            best_val, best_side = val, S

    for S in _single_clique_cuts(G, lay, False):
        if S != full:
            offer(make_cut(G, S).cut_size, S)
    for xin in range(1, 1 << lay.k):
        base = lay.internal(xin)
        usable = [i for i, t in enumerate(lay.types) if t & xin]
        off = {i: lay.options(xin, i, False, False, force=False) for i in range(len(lay.types))}
        on = {i: lay.options(xin, i, True, False) for i in usable}
        for choice in product((False, True), repeat=len(usable)):
            chosen = [i for i, c in zip(usable, choice) if c]
            if not lay.connected(xin, [lay.types[i] for i in chosen]):
                continue
            splits = dict(off)
            for i in chosen:
                splits[i] = on[i]
            val = base + sum(v for v, _ in splits.values())
            if val > best_val:
                S = lay.side(xin, {i: ps for i, (_, ps) in splits.items()})
                offer(val, S)
    if best_side is None:
        return None
    result = make_cut(G, best_side)
    assert result.cut_size == best_val and result.left_connected
    return result


def tc_largest_bond(G: Graph, tc: TwinCoverInstance) -> CutResult | None:
    if G.n < 2:
        return None
    lay = _Layout(G, tc)
    best_val, best_side = -1, None
    for S in list(_single_clique_cuts(G, lay, False)) + list(_single_clique_cuts(G, lay, True)):
        if is_bond(G, S):
            val = make_cut(G, S).cut_size
            if val > best_val:
                best_val, best_side = val, S
    full_x = (1 << lay.k) - 1
    for xin in range(1, full_x):
        xout = full_x & ~xin
        base = lay.internal(xin)
        menus = []
        for i, t in enumerate(lay.types):
            menu = []
            if t & xin:
                menu.append(("S", lay.options(xin, i, False, False, force=True)))
            if t & xout:
                menu.append(("T", lay.options(xin, i, False, False, force=False)))
            if t & xin and t & xout:
                opt = lay.options(xin, i, True, True)
                if opt is not None:
                    menu.append(("B", opt))
            if not menu:
                break
            menus.append(menu)
        else:
            for picks in product(*menus):
                val = base + sum(o[0] for _, o in picks)
                if val <= best_val:
                    continue
                s_att = [lay.types[i] for i, (tag, _) in enumerate(picks) if tag != "T"]
                t_att = [lay.types[i] for i, (tag, _) in enumerate(picks) if tag != "S"]
                if not lay.connected(xin, s_att) or not lay.connected(xout, t_att):
                    continue
                best_val = val
                best_side = lay.side(xin, {i: o[1] for i, (_, o) in enumerate(picks)})
    if best_side is None:
        return None
    result = make_cut(G, best_side)
    assert result.cut_size == best_val and result.is_bond
    return result
