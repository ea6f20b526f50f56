"""Exhaustive solvers used as ground truth for small graphs.

All subsets are scored at once with numpy: the cut value of every side is
built incrementally by adding one free vertex at a time (each step doubles
the table), then candidates are visited from the best value downwards and
only those are checked for connectivity.  Ties go to the lexicographically
smallest side.
"""

from __future__ import annotations

import numpy as np

from .graph import CutResult, Graph, is_connected, make_cut, mask_components, mask_is_connected

DEFAULT_LIMIT = 22


def _check_anchors(G, anchors):
    if anchors is None:
        return None
    s, t = (int(a) for a in anchors)
    if s == t or not (0 <= s < G.n and 0 <= t < G.n):
        raise ValueError(f"invalid anchors {anchors!r}")
    return s, t


def _score_table(G: Graph, forced_in: int, free):
    """Cut values and side masks for every choice of free vertices."""
    weights = G.edge_weights()
    base = 0
    for (u, v), w in zip(G.edges, weights):
        if ((forced_in >> u) & 1) != ((forced_in >> v) & 1):
            base += w
    values = np.array([base], dtype=np.int64)
    masks = np.array([forced_in], dtype=np.int64)
    pos = {}
    for j, f in enumerate(free):
        delta = np.zeros(len(values), dtype=np.int64)
        const = 0
        for u in G.adj[f]:
            w = G.weight(f, u)
            if (forced_in >> u) & 1:
                const -= w
            elif u in pos:
                bit = (np.arange(len(values), dtype=np.int64) >> pos[u]) & 1
                delta += w * (1 - 2 * bit)
            else:
                const += w
        values = np.concatenate([values, values + delta + const])
        masks = np.concatenate([masks, masks | (1 << f)])
        pos[f] = j
    return values, masks


def _lex_key(mask: int):
    return tuple(v for v in range(mask.bit_length()) if (mask >> v) & 1)


def _search(G, feasible, forced_in, free, limit):
    if G.n > limit:
        raise ValueError(f"oracle limited to n <= {limit}, got n = {G.n}")
    values, masks = _score_table(G, forced_in, free)
    order = np.argsort(-values, kind="stable")
    sorted_vals = values[order]
    start = 0
    total = len(order)
    while start < total:
        v = sorted_vals[start]
        stop = int(np.searchsorted(-sorted_vals, -v, side="right"))
        group = sorted((int(x) for x in masks[order[start:stop]]), key=_lex_key)
        for mask in group:
            if feasible(mask):
                return make_cut(G, [u for u in range(G.n) if (mask >> u) & 1])
        start = stop
    return None


def _setup(G, anchors, symmetric):
    anchors = _check_anchors(G, anchors)
    if anchors is not None:
        s, t = anchors
        return 1 << s, [v for v in range(G.n) if v not in (s, t)]
    if symmetric and G.n > 0:
        return 1, list(range(1, G.n))
    return 0, list(range(G.n))


def _require_connected(G):
    if not is_connected(G):
        raise ValueError("input graph must be connected")


def brute_largest_bond(G: Graph, anchors=None, limit: int = DEFAULT_LIMIT) -> CutResult | None:
    _require_connected(G)
    full = (1 << G.n) - 1
    forced_in, free = _setup(G, anchors, symmetric=True)

    def feasible(mask):
        return 0 < mask < full and mask_is_connected(G, mask) and mask_is_connected(G, full & ~mask)

    return _search(G, feasible, forced_in, free, limit)


def brute_max_connected_cut(G: Graph, anchors=None, limit: int = DEFAULT_LIMIT) -> CutResult | None:
    _require_connected(G)
    full = (1 << G.n) - 1
    forced_in, free = _setup(G, anchors, symmetric=False)

    def feasible(mask):
        return 0 < mask < full and mask_is_connected(G, mask)

    return _search(G, feasible, forced_in, free, limit)


def brute_max_cut(G: Graph, anchors=None, limit: int = DEFAULT_LIMIT) -> CutResult | None:
    full = (1 << G.n) - 1
    forced_in, free = _setup(G, anchors, symmetric=True)
    return _search(G, lambda mask: 0 < mask < full, forced_in, free, limit)


def _achievable(G, feasible, forced_in, free, limit):
    if G.n > limit:
        raise ValueError(f"oracle limited to n <= {limit}, got n = {G.n}")
    values, masks = _score_table(G, forced_in, free)
    sizes = set()
    for v in np.unique(values):
        for mask in masks[values == v]:
            if feasible(int(mask)):
                sizes.add(int(v))
                break
    return sizes


def brute_bond_sizes(G: Graph, anchors=None, limit: int = DEFAULT_LIMIT) -> set:
    """Every size k for which a (st-)bond of exactly k edges exists."""
    full = (1 << G.n) - 1
    forced_in, free = _setup(G, anchors, symmetric=True)

    def feasible(mask):
        return 0 < mask < full and mask_is_connected(G, mask) and mask_is_connected(G, full & ~mask)

    return _achievable(G, feasible, forced_in, free, limit)


def brute_connected_cut_sizes(G: Graph, anchors=None, limit: int = DEFAULT_LIMIT) -> set:
    """Every size k of a connected cut; with anchors, s inside and t outside."""
    full = (1 << G.n) - 1
    forced_in, free = _setup(G, anchors, symmetric=False)

    def feasible(mask):
        return 0 < mask < full and mask_is_connected(G, mask)

    return _achievable(G, feasible, forced_in, free, limit)


def brute_count_parity(G: Graph, anchors, weights, two_sided: bool = True):
    """Parity table of sum 2^(comp(S)-1 [+ comp(T)-1]) over sides S.

    Sides contain the first anchor and avoid the second one (if any); the
    result is a set of (cut size, weight of S) pairs with odd total.
    ``weights`` is indexed by vertex.  With ``two_sided`` false only the
    components of S are counted (connected cut variant).
    """
    if G.m and G.weighted:
        raise ValueError("parity oracle counts edges; pass an unweighted graph")
    s = anchors[0]
    t = anchors[1] if len(anchors) > 1 else None
    full = (1 << G.n) - 1
    free = [v for v in range(G.n) if v != s and v != t]
    values, masks = _score_table(G, 1 << s, free)
    odd = set()
    wvec = np.array(weights, dtype=np.int64)
    for val, mask in zip(values.tolist(), masks.tolist()):
        expo = mask_components(G, mask) - 1
        if two_sided:
            expo += mask_components(G, full & ~mask) - 1
        if expo == 0:
            w = int(sum(wvec[v] for v in range(G.n) if (mask >> v) & 1))
            key = (val, w)
            if key in odd:
                odd.remove(key)
            else:
                odd.add(key)
    return odd
