"""Exact dynamic programming over nice tree decompositions.

A state at a node is ``(S, rho1, rho2)``: ``S`` is the part of the bag on
the first side (a bitmask), ``rho1`` partitions ``S`` into the pieces that
are already known to be connected below the node and ``rho2`` does the same
for the rest of the bag.  A side partition is a tuple of block bitmasks
ordered by lowest element; ``()`` means the side has no vertex yet and
``(0,)`` means the side consists of one component that has been completely
forgotten.  Infeasible states are simply absent from the table.

For the connected cut variant only ``S`` and ``rho1`` are tracked.
"""

from __future__ import annotations

from functools import lru_cache

from .decomposition import FORGET, INTRODUCE, INTRODUCE_EDGE, JOIN, LEAF, NiceTreeDecomposition
from .graph import CutResult, Graph, make_cut

NONE = ()
GONE = (0,)


def _lowbit(b):
    return b & -b


def _add_block(rho, bit):
    if rho == GONE:
        return None
    return tuple(sorted(rho + (bit,), key=_lowbit))


def _merge_two(rho, bu, bv):
    x = y = None
    for blk in rho:
        if blk & bu:
            x = blk
        if blk & bv:
            y = blk
    if x == y:
        return rho
    rest = [blk for blk in rho if blk != x and blk != y]
    rest.append(x | y)
    return tuple(sorted(rest, key=_lowbit))


def _drop(rho, bit):
    out = []
    for blk in rho:
        if blk & bit:
            rest = blk & ~bit
            if rest:
                out.append(rest)
            elif len(rho) == 1:
                return GONE
            else:
                return None
        else:
            out.append(blk)
    return tuple(sorted(out, key=_lowbit))


def _join_sides(a, b):
    if a == NONE:
        return b
    if b == NONE:
        return a
    if a == GONE or b == GONE:
        return None
    res = list(a)
    for blk in b:
        hit = 0
        keep = []
        for x in res:
            if x & blk:
                hit |= x
            else:
                keep.append(x)
        keep.append(hit)
        res = keep
    return tuple(sorted(res, key=_lowbit))


@lru_cache(maxsize=None)
def bell(k: int) -> int:
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


class PartitionDP:
    """Runs the table computation; tables are kept for witness recovery."""

    def __init__(self, G: Graph, ntd: NiceTreeDecomposition, anchors=None, two_sided: bool = True):
        self.G = G
        self.ntd = ntd
        self.two_sided = two_sided
        if anchors is not None:
            s, t = (int(a) for a in anchors)
            if s == t or set(ntd.anchors) != {s, t}:
                raise ValueError("anchors must be the anchor set of the decomposition")
            self.anchors = (s, t)
        else:
            if ntd.anchors:
                raise ValueError("decomposition is anchored; pass the anchors")
            self.anchors = None
        self.tables = []
        self.preds = []
        self._run()

    @property
    def state_counts(self):
        return [len(t) for t in self.tables]

    @property
    def peak_states(self) -> int:
        return max(self.state_counts, default=0)

    def _run(self):
        G = self.G
        two = self.two_sided
        for i, node in enumerate(self.ntd.nodes):
            kind = node.kind
            table, pred = {}, {}
            if kind == LEAF:
                if self.anchors is None:
                    key = (0, NONE, NONE) if two else (0, NONE)
                else:
                    s, t = self.anchors
                    bs, bt = 1 << s, 1 << t
                    key = (bs, (bs,), (bt,)) if two else (bs, (bs,))
                table[key] = 0
                pred[key] = None
            elif kind == INTRODUCE:
                bit = 1 << node.vertex
                for key, val in self.tables[node.children[0]].items():
                    S = key[0]
                    r1 = _add_block(key[1], bit)
                    if r1 is not None:
                        new = (S | bit, r1, key[2]) if two else (S | bit, r1)
                        table[new] = val
                        pred[new] = key
                    if two:
                        r2 = _add_block(key[2], bit)
                        if r2 is None:
                            continue
                        new = (S, key[1], r2)
                    else:
                        new = key
                    table[new] = val
                    pred[new] = key
            elif kind == INTRODUCE_EDGE:
                u, v = node.edge
                bu, bv = 1 << u, 1 << v
                w = G.weight(u, v)
                for key, val in self.tables[node.children[0]].items():
                    S = key[0]
                    iu, iv = bool(S & bu), bool(S & bv)
                    if iu != iv:
                        new, val = key, val + w
                    elif iu:
                        r1 = _merge_two(key[1], bu, bv)
                        new = (S, r1, key[2]) if two else (S, r1)
                    elif two:
                        new = (S, key[1], _merge_two(key[2], bu, bv))
                    else:
                        new = key
                    if val > table.get(new, -1):
                        table[new] = val
                        pred[new] = key
            elif kind == FORGET:
                bit = 1 << node.vertex
                for key, val in self.tables[node.children[0]].items():
                    S = key[0]
                    if S & bit:
                        r1 = _drop(key[1], bit)
                        if r1 is None:
                            continue
                        new = (S & ~bit, r1, key[2]) if two else (S & ~bit, r1)
                    elif two:
                        r2 = _drop(key[2], bit)
                        if r2 is None:
                            continue
                        new = (S, key[1], r2)
                    else:
                        new = key
                    if val > table.get(new, -1):
                        table[new] = val
                        pred[new] = key
            elif kind == JOIN:
                left, right = node.children
                by_side = {}
                for key, val in self.tables[right].items():
                    by_side.setdefault(key[0], []).append((key, val))
                for lkey, lval in self.tables[left].items():
                    for rkey, rval in by_side.get(lkey[0], ()):
                        r1 = _join_sides(lkey[1], rkey[1])
                        if r1 is None:
                            continue
                        if two:
                            r2 = _join_sides(lkey[2], rkey[2])
                            if r2 is None:
                                continue
                            new = (lkey[0], r1, r2)
                        else:
                            new = (lkey[0], r1)
                        val = lval + rval
                        if val > table.get(new, -1):
                            table[new] = val
                            pred[new] = (lkey, rkey)
            else:
                raise ValueError(f"unknown node kind {kind!r}")
            if i == self.ntd.root:
                goal = self.goal()
                table = {goal: table[goal]} if goal in table else {}
            self.tables.append(table)
            self.preds.append(pred)

    def goal(self):
        if self.anchors is None:
            return (0, GONE, GONE) if self.two_sided else (0, GONE)
        s, t = self.anchors
        bs, bt = 1 << s, 1 << t
        return (bs, (bs,), (bt,)) if self.two_sided else (bs, (bs,))

    def value(self):
        return self.tables[-1].get(self.goal())

    def witness(self):
        goal = self.goal()
        if goal not in self.tables[-1]:
            return None
        nodes = self.ntd.nodes
        side = set(v for v in range(self.G.n) if (goal[0] >> v) & 1)
        stack = [(self.ntd.root, goal)]
        while stack:
            i, key = stack.pop()
            node = nodes[i]
            p = self.preds[i][key]
            if node.kind == LEAF:
                continue
            if node.kind == JOIN:
                stack.append((node.children[0], p[0]))
                stack.append((node.children[1], p[1]))
                continue
            if node.kind == FORGET and (p[0] >> node.vertex) & 1:
                side.add(node.vertex)
            stack.append((node.children[0], p))
        return side


def _solve(G, ntd, anchors, two_sided, stats):
    if G.n < 2:
        return None
    dp = PartitionDP(G, ntd, anchors, two_sided)
    if stats is not None:
        stats["state_counts"] = dp.state_counts
        stats["peak_states"] = dp.peak_states
    side = dp.witness()
    if side is None:
        return None
    result = make_cut(G, side)
    assert result.cut_size == dp.value()
    return result


def solve_bond_td(G: Graph, ntd: NiceTreeDecomposition, anchors=None, stats=None) -> CutResult | None:
    """Largest (st-)bond.  ``stats`` (a dict) receives table sizes per node."""
    return _solve(G, ntd, anchors, True, stats)


def solve_mcc_td(G: Graph, ntd: NiceTreeDecomposition, anchors=None, stats=None) -> CutResult | None:
    """Maximum connected cut; with anchors (s, t) the side holds s and avoids t."""
    return _solve(G, ntd, anchors, False, stats)


def state_bound(bag_size: int) -> int:
    return (2 ** bag_size) * bell(bag_size + 1)
