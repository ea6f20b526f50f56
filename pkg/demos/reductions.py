"""Build the hardness-reduction instances and check their certificates."""

import itertools

from bondcut.generators import (
    find_exact_cover,
    gen_hphi,
    gen_phi,
    gen_psi,
    gen_split_bond,
    gen_split_x3c,
    gen_subdivide,
    psi_certificate,
    psi_threshold,
    xi_bond_from_cut,
)
from bondcut.graph import complete_graph, cut_edges, cycle_graph, is_bipartite, make_cut, path_graph
from bondcut.oracle import brute_largest_bond, brute_max_connected_cut, brute_max_cut

G = cycle_graph(4)
best = brute_max_cut(G)
H = gen_psi(G)
cert = make_cut(H, psi_certificate(G, best.side))
print(f"psi(C4): {H.n} vertices; max cut {best.cut_size} -> bond {cert.cut_size} "
      f"(threshold {psi_threshold(G.n, best.cut_size)}, is bond: {cert.is_bond})")

for name, G in (("P3", path_graph(3)), ("C4", cycle_graph(4))):
    got = brute_max_connected_cut(gen_phi(G)).cut_size
    print(f"phi({name}): max connected cut {got}, n * max cut = {G.n * brute_max_cut(G).cut_size}")

inst = gen_split_bond(complete_graph(3))
c = inst.certificate({0})
print(f"split(K3): {inst.graph.n} vertices; cut of size 2 -> bond {c.cut_size} >= {inst.threshold(2)}: {c.is_bond}")

X = list(range(6))
F = [(0, 1, 2), (3, 4, 5), (0, 3, 4), (1, 2, 5)]
x3c = gen_split_x3c(X, F)
c = x3c.certificate(find_exact_cover(X, F))
print(f"x3c: m={x3c.m} after copying, {x3c.graph.n} vertices; certificate {c.cut_size} vs target {x3c.target}")

clauses = [(1, 2, 3), (-1, -2, -3), (1, 2, 3)]
hp = gen_hphi(clauses)
assignment = next(a for a in itertools.product((False, True), repeat=3)
                  if all(any(a[abs(l) - 1] == (l > 0) for l in cl) for cl in clauses))
c = hp.certificate(assignment)
print(f"H_phi: K={hp.K}, {hp.graph.n} vertices, bipartite {is_bipartite(hp.graph)}; "
      f"certificate {c.cut_size} >= target {hp.target}: {c.cut_size >= hp.target}")

G = complete_graph(4)
S = gen_subdivide(G)
print(f"subdivided K4: bond {brute_largest_bond(S).cut_size} (original {brute_largest_bond(G).cut_size})")

P3 = path_graph(3)
L = cut_edges(P3, {1})
for h in range(4):
    host, bond = xi_bond_from_cut(P3, L, h)
    print(f"xi^{h}: {host.n} vertices, bond weight {bond.cut_size} = {len(L)}^{h}, is bond {bond.is_bond}")
