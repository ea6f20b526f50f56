"""Run every exact solver on a few graphs and compare with brute force."""

import time

from bondcut.decomposition import heuristic_decomposition_tree, heuristic_tree_decomposition, to_nice
from bondcut.cutcount import cc_largest_bond, cc_max_connected_cut
from bondcut.generators import random_connected_graph
from bondcut.graph import complete_bipartite, cycle_graph, star_graph
from bondcut.modulewidth import mw_solve
from bondcut.oracle import brute_largest_bond, brute_max_connected_cut
from bondcut.partition_dp import solve_bond_td, solve_mcc_td
from bondcut.twincover import BudgetExceeded, build_twin_cover_instance, min_twin_cover, tc_largest_bond, tc_max_connected_cut


def timed(fn):
    start = time.perf_counter()
    out = fn()
    value = out if isinstance(out, int) else out.cut_size
    return value, (time.perf_counter() - start) * 1000


def tour(name, G):
    ntd = to_nice(G, heuristic_tree_decomposition(G))
    tree = heuristic_decomposition_tree(G)
    runs = {
        "oracle": (lambda: brute_largest_bond(G), lambda: brute_max_connected_cut(G)),
        "tw": (lambda: solve_bond_td(G, ntd), lambda: solve_mcc_td(G, ntd)),
        "modulewidth": (lambda: mw_solve(G, tree), lambda: mw_solve(G, tree, "connected-cut")),
        "cutcount": (lambda: cc_largest_bond(G), lambda: cc_max_connected_cut(G)),
    }
    try:
        inst = build_twin_cover_instance(G, min_twin_cover(G, budget=5))
        runs["twincover"] = (lambda: tc_largest_bond(G, inst), lambda: tc_max_connected_cut(G, inst))
    except BudgetExceeded:
        pass
    print(f"{name}: n={G.n} m={G.m} treewidth<={ntd.width} module-width<={tree.width}")
    for algo, (bond, mcc) in runs.items():
        b, tb = timed(bond)
        c, tc = timed(mcc)
        print(f"  {algo:12s} bond {b:3d} ({tb:7.1f} ms)   connected cut {c:3d} ({tc:7.1f} ms)")


if __name__ == "__main__":
    tour("cycle C8", cycle_graph(8))
    tour("star K1,6", star_graph(6))
    tour("K2,5", complete_bipartite(2, 5))
    tour("random n=11 p=0.35", random_connected_graph(11, 0.35, seed=5))
