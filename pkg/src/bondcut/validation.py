"""Cross-validation suites shared by the command line and the test-suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .cutcount import cc_largest_bond, cc_max_connected_cut, count_parities, random_weights
from .decomposition import heuristic_decomposition_tree, heuristic_tree_decomposition, to_nice
from .generators import (
    find_exact_cover,
    gen_hphi,
    gen_phi,
    gen_psi,
    gen_split_bond,
    gen_split_x3c,
    gen_subdivide,
    psi_threshold,
    random_connected_graph,
    xi_bond_from_cut,
)
from .graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cut_edges,
    cycle_graph,
    is_bipartite,
    is_connected,
    make_cut,
    path_graph,
    star_graph,
)
from .modulewidth import mw_solve
from .oracle import brute_count_parity, brute_largest_bond, brute_max_connected_cut, brute_max_cut
from .partition_dp import solve_bond_td, solve_mcc_td
from .twincover import BudgetExceeded, build_twin_cover_instance, min_twin_cover, tc_largest_bond, tc_max_connected_cut

SUITES = ("small-random", "fixtures", "reductions", "parity")
DENSITIES = (0.3, 0.5, 0.8)


@dataclass
class Report:
    suite: str
    rows: list = field(default_factory=list)

    def add(self, instance, check, expected, observed, ok=None):
        if ok is None:
            ok = expected == observed
        self.rows.append({"instance": instance, "check": check, "expected": expected, "observed": observed, "ok": bool(ok)})

    @property
    def mismatches(self):
        return [r for r in self.rows if not r["ok"]]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def table(self) -> str:
        lines = ["instance\tcheck\texpected\tobserved\tok"]
        for r in self.rows:
            lines.append(f"{r['instance']}\t{r['check']}\t{r['expected']}\t{r['observed']}\t{'yes' if r['ok'] else 'NO'}")
        lines.append(f"# {len(self.rows)} checks, {len(self.mismatches)} mismatches")
        return "\n".join(lines)


def _value(r):
    return None if r is None else r.cut_size


def witness_ok(G: Graph, result, bond: bool, anchors=None) -> bool:
    """Recompute every field of a CutResult and check feasibility."""
    if result is None:
        return True
    if make_cut(G, result.side) != result:
        return False
    if not 0 < len(result.side) < G.n or not result.left_connected:
        return False
    if bond and not result.right_connected:
        return False
    if anchors is not None:
        s, t = anchors
        if s not in result.side or t in result.side:
            return False
    return True


def instance_seed(seed: int, index: int) -> int:
    return int(seed) * 1_000_003 + int(index)


def small_random_graphs(count: int, seed: int = 0, max_n: int = 10):
    """Connected graphs cycling through n = 2..max_n and the three densities."""
    out = []
    for i in range(count):
        n = 2 + i % (max_n - 1)
        p = DENSITIES[(i // (max_n - 1)) % len(DENSITIES)]
        out.append((f"rand-{seed}-{i}-n{n}-p{p}", random_connected_graph(n, p, instance_seed(seed, i))))
    return out


def check_invariants(report, name, G, bond, mcc, maxcut):
    """Structural relations every solver output must satisfy."""
    if bond is not None:
        report.add(name, "bond<=m-n+2", f"<= {G.m - G.n + 2}", bond, bond <= G.m - G.n + 2)
    if mcc is not None:
        report.add(name, "maxcut>=mcc>=bond", f"{maxcut}>={mcc}>={bond}", "ordered", maxcut >= mcc >= (bond or 0))
        report.add(name, "mcc>=maxdeg", f">= {G.max_degree()}", mcc, mcc >= G.max_degree())


def solver_panel(report, name, G, tc_budget=4, anchors=None):
    """Run every exact solver on G and compare with the oracle."""
    ob, om, ox = brute_largest_bond(G), brute_max_connected_cut(G), brute_max_cut(G)
    ref = {"bond": _value(ob), "mcc": _value(om)}
    check_invariants(report, name, G, ref["bond"], ref["mcc"], _value(ox))
    td = heuristic_tree_decomposition(G)
    ntd = to_nice(G, td)
    tree = heuristic_decomposition_tree(G)
    runs = [
        ("tw", "bond", lambda: solve_bond_td(G, ntd)),
        ("tw", "mcc", lambda: solve_mcc_td(G, ntd)),
        ("modulewidth", "bond", lambda: mw_solve(G, tree, "bond")),
        ("modulewidth", "mcc", lambda: mw_solve(G, tree, "connected-cut")),
    ]
    try:
        X = min_twin_cover(G, budget=tc_budget)
    except BudgetExceeded:
        X = None
    if X is not None:
        inst = build_twin_cover_instance(G, X)
        runs.append(("twincover", "bond", lambda: tc_largest_bond(G, inst)))
        runs.append(("twincover", "mcc", lambda: tc_max_connected_cut(G, inst)))
    for algo, problem, run in runs:
        r = run()
        report.add(name, f"{algo}-{problem}", ref[problem], _value(r))
        report.add(name, f"{algo}-{problem}-witness", True, witness_ok(G, r, problem == "bond"))
    if anchors is not None and G.n >= 2:
        s, t = anchors
        atd = to_nice(G, td, (s, t))
        for problem, brute, solve in (("bond", brute_largest_bond, solve_bond_td), ("mcc", brute_max_connected_cut, solve_mcc_td)):
            r = solve(G, atd, (s, t))
            report.add(name, f"tw-st-{problem}", _value(brute(G, (s, t))), _value(r))
            report.add(name, f"tw-st-{problem}-witness", True, witness_ok(G, r, problem == "bond", (s, t)))
    return ref


def run_small_random(count: int = 200, seed: int = 0, max_n: int = 10) -> Report:
    report = Report("small-random")
    for name, G in small_random_graphs(count, seed, max_n):
        solver_panel(report, name, G, anchors=(0, G.n - 1))
    return report


def fixture_graphs():
    petersen = Graph(10, [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
                     + [(5 + i, 5 + (i + 2) % 5) for i in range(5)])
    grid = Graph(9, [(r * 3 + c, r * 3 + c + 1) for r in range(3) for c in range(2)]
                 + [(r * 3 + c, r * 3 + c + 3) for r in range(2) for c in range(3)])
    bridge = Graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
    wheel = Graph(6, [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)])
    return [
        ("C5", cycle_graph(5)),
        ("K1,4", star_graph(4)),
        ("K4", complete_graph(4)),
        ("K2,5", complete_bipartite(2, 5)),
        ("P4", path_graph(4)),
        ("petersen", petersen),
        ("grid3x3", grid),
        ("two-triangles-bridge", bridge),
        ("wheel5", wheel),
        ("K3,3", complete_bipartite(3, 3)),
    ]


def run_fixtures(seed: int = 0, trials: int = 20) -> Report:
    report = Report("fixtures")
    for name, G in fixture_graphs():
        ref = solver_panel(report, name, G, tc_budget=6, anchors=(0, G.n - 1))
        if G.n <= 8:
            report.add(name, "cutcount-bond", ref["bond"], cc_largest_bond(G, trials=trials, seed=seed))
            report.add(name, "cutcount-mcc", ref["mcc"], cc_max_connected_cut(G, trials=trials, seed=seed))
    report.add("C5", "bond=2", 2, _value(brute_largest_bond(cycle_graph(5))))
    for leaves in (3, 4, 5):
        S = star_graph(leaves)
        report.add(f"K1,{leaves}", "bond=1", 1, _value(brute_largest_bond(S)))
        report.add(f"K1,{leaves}", "mcc=n", leaves, _value(brute_max_connected_cut(S)))
    return report


def connected_graphs(n: int):
    """Every connected labelled graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        G = Graph(n, [p for i, p in enumerate(pairs) if (bits >> i) & 1])
        if is_connected(G):
            yield G


def run_reductions(seed: int = 0) -> Report:
    report = Report("reductions")
    for n in range(1, 5):
        for G in connected_graphs(n):
            name = f"n{n}:{list(G.edges)}"
            lb = _value(brute_largest_bond(gen_psi(G)))
            mc = _value(brute_max_cut(G)) or 0
            bad = [k for k in range(G.m + 2) if (lb >= psi_threshold(n, k)) != (mc >= k)]
            report.add(name, "psi-biconditional", [], bad)
    count = 0
    i = 0
    while count < 24:
        n = 3 + i % 6
        G = random_connected_graph(n, DENSITIES[i % 3], instance_seed(seed, i))
        i += 1
        if G.m > 12:
            continue
        count += 1
        report.add(f"sub-{i}", "subdivide-bond", _value(brute_largest_bond(G)), _value(brute_largest_bond(gen_subdivide(G))))
        report.add(f"sub-{i}", "subdivide-bipartite", True, is_bipartite(gen_subdivide(G)))
    for name, G in (("K3", complete_graph(3)), ("P4", path_graph(4)), ("C5", cycle_graph(5))):
        best = brute_max_cut(G)
        inst = gen_split_bond(G)
        cert = inst.certificate(best.side)
        report.add(name, "split-bond-certificate", f">= {inst.threshold(best.cut_size)}", cert.cut_size,
                   cert.is_bond and cert.cut_size >= inst.threshold(best.cut_size))
    for name, X, F in X3C_FIXTURES:
        inst = gen_split_x3c(X, F)
        cover = find_exact_cover(X, F)
        cert = inst.certificate(cover)
        report.add(name, "x3c-certificate", inst.target, cert.cut_size, cert.cut_size == inst.target and cert.left_connected)
    for name, clauses in HPHI_FIXTURES:
        inst = gen_hphi(clauses)
        assignment = next(a for a in product((False, True), repeat=inst.variables)
                          if all(any(a[abs(l) - 1] == (l > 0) for l in c) for c in clauses))
        cert = inst.certificate(assignment)
        report.add(name, "hphi-certificate", f">= {inst.target}", cert.cut_size,
                   cert.cut_size >= inst.target and cert.left_connected)
        report.add(name, "hphi-bipartite", True, is_bipartite(inst.graph))
    for name, G in (("P3", path_graph(3)), ("C5", cycle_graph(5)), ("K4", complete_graph(4))):
        best = brute_max_cut(G)
        L = cut_edges(G, best.side)
        for h in range(4):
            host, cert = xi_bond_from_cut(G, L, h)
            report.add(f"{name}-h{h}", "xi-bond-weight", len(L) ** h, cert.cut_size, cert.is_bond and cert.cut_size == len(L) ** h)
    return report


def phi_observations():
    """(name, mcc of phi(G), n * maxcut(G)) for small graphs; informational."""
    out = []
    for name, G in (("K2", path_graph(2)), ("P3", path_graph(3)), ("K3", complete_graph(3)), ("C4", cycle_graph(4))):
        out.append((name, _value(brute_max_connected_cut(gen_phi(G))), G.n * _value(brute_max_cut(G))))
    return out


X3C_FIXTURES = (
    ("x3c-6", list(range(6)), [(0, 1, 2), (3, 4, 5), (0, 3, 4), (1, 2, 5)]),
    ("x3c-9", list(range(1, 10)), [(1, 2, 3), (4, 5, 6), (7, 8, 9), (1, 4, 7), (2, 5, 8), (3, 6, 9), (1, 5, 9)]),
)

HPHI_FIXTURES = (
    ("hphi-3x3", [(1, 2, 3), (-1, -2, -3), (1, 2, 3)]),
    ("hphi-4x3", [(1, 2, 3), (-2, -3, -4), (2, 3, 4)]),
)


def run_parity(count: int = 30, seed: int = 0, max_n: int = 8) -> Report:
    report = Report("parity")
    for i in range(count):
        n = 3 + i % (max_n - 2)
        G = random_connected_graph(n, DENSITIES[i % 3], instance_seed(seed, i))
        w = random_weights(n, seed, i)
        td = heuristic_tree_decomposition(G)
        for anchors, two in (((0, n - 1), True), ((0, n - 1), False), ((0,), False)):
            wz = list(w)
            for a in anchors:
                wz[a] = 0
            got = count_parities(G, to_nice(G, td, anchors), anchors, w, two_sided=two)
            seen = {(int(k), int(x)) for k, x in zip(*got.nonzero())}
            want = brute_count_parity(G, anchors, wz, two_sided=two)
            label = "two-sided" if two else "one-sided"
            report.add(f"parity-{i}-n{n}", f"{label}{anchors}", len(want), len(seen), seen == want)
    return report


def run_suite(name: str, count: int | None = None, seed: int = 0) -> Report:
    if name == "small-random":
        return run_small_random(200 if count is None else count, seed)
    if name == "fixtures":
        return run_fixtures(seed)
    if name == "reductions":
        return run_reductions(seed)
    if name == "parity":
        return run_parity(30 if count is None else count, seed)
    raise ValueError(f"unknown suite {name!r}")
