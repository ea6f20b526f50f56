"""Monte Carlo Cut & Count over nice tree decompositions.

Each bag vertex is labelled with one of four sets: left or right part of
the first side S, left or right part of T.  A table row (one labelling)
holds a 0/1 array indexed by (cut edges so far, weight of S so far) giving
the parity of the number of partial solutions.  Anchors sit in every bag
with s fixed to the left part of S and t to the left part of T; their
weight is taken as 0, so the weight index is the weight of S without s.

Every edge is introduced exactly once, so the two subtrees below a join
share no edge and only the weight of the common bag vertices on the S side
has to be removed there.
"""

from __future__ import annotations

import numpy as np

from .decomposition import (
    FORGET,
    INTRODUCE,
    INTRODUCE_EDGE,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    heuristic_tree_decomposition,
    to_nice,
)
from .graph import Graph, is_connected


def _shift_cols(arr, k):
    if k == 0:
        return arr
    out = np.zeros_like(arr)
    out[:, k:] = arr[:, :-k]
    return out


def _shift_row(arr):
    out = np.zeros_like(arr)
    out[1:] = arr[:-1]
    return out


def _conv_parity(a, b, offset):
    """Parity of the 2-D convolution of a and b, columns shifted down by offset.

    Exact integer arithmetic: both arrays are packed into Python integers
    with one fixed-width field per cell (Kronecker substitution).
    """
    R, W = a.shape
    L = 2 * W - 1
    bound = int(min(a.sum(), b.sum()))
    for dtype in ("<u2", "<u4", "<u8"):
        if bound < 2 ** (8 * np.dtype(dtype).itemsize):
            break
    A = np.zeros((R, L), dtype=dtype)
    B = np.zeros((R, L), dtype=dtype)
    A[:, :W] = a
    B[:, :W] = b
    prod = int.from_bytes(A.tobytes(), "little") * int.from_bytes(B.tobytes(), "little")
    size = np.dtype(dtype).itemsize
    full = np.frombuffer(prod.to_bytes((2 * R - 1) * L * size, "little"), dtype=dtype)
    full = full.reshape(2 * R - 1, L)
    return (full[:R, offset:offset + W] & 1).astype(np.uint8)


def count_parities(G: Graph, ntd: NiceTreeDecomposition, anchors, weights, two_sided=None, stats=None):
    """Root parity array for one weight assignment.

    ``anchors`` is (s, t) or (s,).  In the two-sided count (bonds) both S
    and T are split into left/right parts; in the one-sided count
    (connected cuts) only S is, and T is a single label.  Entry [k, w] is
    the parity of sum 2^(comp(S)-1 [+ comp(T)-1]) over sides S with s in S,
    t not in S, exactly k cut edges and weight w (anchors weigh 0).
    """
    if G.weighted:
        raise ValueError("Cut & Count counts edges; weighted graphs are not supported")
    anchors = tuple(int(a) for a in anchors)
    if set(ntd.anchors) != set(anchors):
        raise ValueError("decomposition anchors differ from the requested anchors")
    two = len(anchors) == 2 if two_sided is None else bool(two_sided)
    if two and len(anchors) != 2:
        raise ValueError("the two-sided count needs anchors (s, t)")
    bt = (1 << anchors[1]) if len(anchors) == 2 else 0
    w = [int(x) for x in weights]
    for a in anchors:
        w[a] = 0
    R = G.m + 1
    W = sum(w) + 1
    tables = []
    counts = []
    for node in ntd.nodes:
        kind = node.kind
        new = {}
        if kind == LEAF:
            arr = np.zeros((R, W), dtype=np.uint8)
            arr[0, 0] = 1
            bs = 1 << anchors[0]
            new[(bs, 0, bt, 0) if two else (bs, 0, bt)] = arr
        elif kind == INTRODUCE:
            b = 1 << node.vertex
            wv = w[node.vertex]
            for key, arr in tables[node.children[0]].items():
                sh = _shift_cols(arr, wv)
                if not sh.any():
                    sh = None
                if two:
                    sl, sr, tl, tr = key
                    if sh is not None:
                        new[(sl | b, sr, tl, tr)] = sh
                        new[(sl, sr | b, tl, tr)] = sh
                    new[(sl, sr, tl | b, tr)] = arr
                    new[(sl, sr, tl, tr | b)] = arr
                else:
                    sl, sr, tt = key
                    if sh is not None:
                        new[(sl | b, sr, tt)] = sh
                        new[(sl, sr | b, tt)] = sh
                    new[(sl, sr, tt | b)] = arr
        elif kind == INTRODUCE_EDGE:
            bu, bv = 1 << node.edge[0], 1 << node.edge[1]
            both = bu | bv
            for key, arr in tables[node.children[0]].items():
                S = key[0] | key[1]
                if bool(S & bu) != bool(S & bv):
                    arr = _shift_row(arr)
                    if arr.any():
                        new[key] = arr
                    continue
                if any((p & both) == both for p in key):
                    new[key] = arr
        elif kind == FORGET:
            b = 1 << node.vertex
            for key, arr in tables[node.children[0]].items():
                red = tuple(p & ~b for p in key)
                if red in new:
                    new[red] = new[red] ^ arr
                else:
                    new[red] = arr
            new = {k: a for k, a in new.items() if a.any()}
        elif kind == JOIN:
            left = tables[node.children[0]]
            right = tables[node.children[1]]
            for key, arr in left.items():
                other = right.get(key)
                if other is None:
                    continue
                S = key[0] | key[1]
                beta = sum(w[v] for v in node.bag if (S >> v) & 1)
                res = _conv_parity(arr, other, beta)
                if res.any():
                    new[key] = res
        else:
            raise ValueError(f"unknown node kind {kind!r}")
        tables.append(new)
        counts.append(len(new))
        if node.children:
            for c in node.children:
                tables[c] = None
    if stats is not None:
        stats["row_counts"] = counts
        stats["peak_rows"] = max(counts, default=0)
    root = tables[-1]
    bs = 1 << anchors[0]
    key = (bs, 0, bt, 0) if two else (bs, 0, bt)
    return root.get(key, np.zeros((R, W), dtype=np.uint8))


def random_weights(n: int, seed, trial: int):
    rng = np.random.default_rng([int(seed), int(trial)])
    return rng.integers(1, 2 * n + 1, size=n).tolist()


def _prepare(G, ntd, td, anchors):
    if ntd is not None:
        return ntd
    if td is None:
        td = heuristic_tree_decomposition(G)
    return to_nice(G, td, anchors)


def _check(G, k, anchors):
    if G.n < 2 or not is_connected(G):
        raise ValueError("input graph must be connected with at least two vertices")
    if not 1 <= k <= G.m:
        raise ValueError(f"k must lie in 1..m, got {k}")
    for a in anchors:
        if not 0 <= a < G.n:
            raise ValueError(f"anchor {a} is not a vertex")
    if len(set(anchors)) != len(anchors):
        raise ValueError("anchors must differ")


def cc_st_bond_exists(G: Graph, s, t, k: int, trials: int = 20, seed=0, ntd=None, td=None, stats=None) -> bool:
    """True only if an st-bond with exactly k edges exists (false answers may be wrong)."""
    _check(G, k, (s, t))
    ntd = _prepare(G, ntd, td, (s, t))
    for trial in range(trials):
        par = count_parities(G, ntd, (s, t), random_weights(G.n, seed, trial), stats=stats)
        if par[k].any():
            return True
    return False


def cc_connected_cut_exists(G: Graph, k: int, s=None, t=None, trials: int = 20, seed=0, stats=None) -> bool:
    """True only if a connected cut with exactly k edges exists.

    With ``s`` the side must hold s (and avoid ``t`` when given); without
    it every vertex is tried as the anchor of S.
    """
    if s is None:
        if t is not None:
            raise ValueError("t needs s")
        choices = [(v,) for v in range(G.n)]
    else:
        choices = [(s,) if t is None else (s, t)]
    _check(G, k, choices[0] if s is not None else ())
    td = heuristic_tree_decomposition(G)
    for trial in range(trials):
        for anchors in choices:
            ntd = to_nice(G, td, anchors)
            par = count_parities(G, ntd, anchors, random_weights(G.n, seed, trial), two_sided=False, stats=stats)
            if par[k].any():
                return True
    return False


def _best_found(G, runs, seed, trials, upper, two_sided, stats=None):
    """Largest k with an odd entry over all (decomposition, anchors) runs."""
    best = 0
    peak = 0
    for trial in range(trials):
        for ntd, anchors in runs:
            local = {}
            par = count_parities(G, ntd, anchors, random_weights(G.n, seed, trial), two_sided=two_sided, stats=local)
            peak = max(peak, local["peak_rows"])
            rows = np.nonzero(par.any(axis=1))[0]
            rows = rows[rows > 0]
            if len(rows):
                best = max(best, int(rows[-1]))
            if best >= upper:
                break
        if best >= upper:
            break
    if stats is not None:
        stats["peak_rows"] = peak
    return best


def cc_largest_bond(G: Graph, trials: int = 20, seed=0, stats=None) -> int:
    """Largest bond size found; never above the optimum, below it with small probability.

    A bond separates vertex 0 from some t, so only the pairs (0, t) are run.
    """
    _check(G, 1, ())
    td = heuristic_tree_decomposition(G)
    runs = [(to_nice(G, td, (0, t)), (0, t)) for t in range(1, G.n)]
    return _best_found(G, runs, seed, trials, G.m - G.n + 2, True, stats)


def cc_max_connected_cut(G: Graph, trials: int = 20, seed=0, stats=None) -> int:
    _check(G, 1, ())
    td = heuristic_tree_decomposition(G)
    runs = [(to_nice(G, td, (s,)), (s,)) for s in range(G.n)]
    return _best_found(G, runs, seed, trials, G.m, False, stats)


def cc_anchored_value(G: Graph, anchors, problem: str = "bond", trials: int = 20, seed=0, td=None, stats=None) -> int:
    """Best st-bond (or connected st-cut) size found; 0 when none was seen."""
    anchors = tuple(int(a) for a in anchors)
    _check(G, 1, anchors)
    if td is None:
        td = heuristic_tree_decomposition(G)
    runs = [(to_nice(G, td, anchors), anchors)]
    return _best_found(G, runs, seed, trials, G.m, problem == "bond", stats)
