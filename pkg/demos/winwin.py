"""Either a big bond from a K_{2,k} minor or a tree decomposition to run the DP on."""

from bondcut.generators import random_connected_graph
from bondcut.graph import complete_bipartite, cycle_graph, star_graph
from bondcut.partition_dp import solve_bond_td
from bondcut.preprocess import winwin_pipeline


def show(name, G, k, anchors=None):
    out = winwin_pipeline(G, k, anchors)
    if out.is_certificate:
        c = out.certificate
        print(f"{name}, k={k}: certificate bond of size {c.cut_size}, side {sorted(c.side)}")
    else:
        r = solve_bond_td(out.graph, out.decomposition, out.anchors)
        print(f"{name}, k={k}: no minor found; width {out.width} decomposition, DP value {r.cut_size}")


show("K1,4", star_graph(4), 3)
show("K2,5", complete_bipartite(2, 5), 3)
show("C6", cycle_graph(6), 2)
G = random_connected_graph(12, 0.3, seed=2)
show("random n=12", G, 4)
show("random n=12 anchored (0,11)", G, 2, (0, 11))
show("random n=12 anchored (0,11)", G, 6, (0, 11))
