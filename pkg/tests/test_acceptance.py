"""Acceptance checks; each test prints one PASS/FAIL line."""

import itertools
import time

import pytest

from bondcut.cutcount import cc_connected_cut_exists, cc_st_bond_exists, count_parities, random_weights
from bondcut.decomposition import heuristic_decomposition_tree, heuristic_tree_decomposition, to_nice
from bondcut.generators import random_connected_graph
from bondcut.graph import block_cut_tree, complete_bipartite, cycle_graph, star_graph
from bondcut.modulewidth import mw_solve
from bondcut.oracle import brute_bond_sizes, brute_connected_cut_sizes, brute_largest_bond, brute_max_connected_cut
from bondcut.partition_dp import solve_bond_td, solve_mcc_td, state_bound
from bondcut.preprocess import (
    MinorModel,
    bond_from_k2k_model,
    find_k2k_model_heuristic,
    st_block_reduce,
    st_bond_from_k22k_model,
)
from bondcut.twincover import build_twin_cover_instance, min_twin_cover, tc_largest_bond, tc_max_connected_cut
from bondcut.validation import run_fixtures, run_parity, run_reductions, run_small_random


@pytest.fixture
def verdict(capsys):
    def report(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail
    return report


def test_oracle_equivalence(verdict):
    start = time.perf_counter()
    report = run_small_random(count=200, seed=0, max_n=10)
    elapsed = time.perf_counter() - start
    graphs = {r["instance"] for r in report.rows}
    twin = {r["instance"] for r in report.rows if r["check"].startswith("twincover")}
    detail = f"{len(graphs)} graphs, {len(report.rows)} checks, {len(report.mismatches)} mismatches, {len(twin)} with tc<=4, {elapsed:.1f}s"
    verdict(1, "exact solvers match the oracle on random graphs", report.ok and len(graphs) >= 200 and elapsed < 120, detail)


def _no_instances():
    """(graph, kind, anchors, k) with oracle-certified absence."""
    out = []
    i = 0
    while len(out) < 60:
        G = random_connected_graph(5 + i % 3, 0.5, 20_000 + i)
        i += 1
        s, t = 0, G.n - 1
        missing = [k for k in range(1, G.m + 1) if k not in brute_bond_sizes(G, (s, t))]
        if missing:
            out.append((G, "bond", (s, t), missing[0]))
        missing = [k for k in range(1, G.m + 1) if k not in brute_connected_cut_sizes(G, (s, t))]
        if missing:
            out.append((G, "cut", (s, t), missing[-1]))
    return out


def _yes_instances():
    out = []
    for i in range(60):
        G = random_connected_graph(5 + i % 3, 0.5, 30_000 + i)
        s, t = 0, G.n - 1
        if i % 2:
            out.append((G, "bond", (s, t), brute_largest_bond(G, (s, t)).cut_size))
        else:
            out.append((G, "cut", (s, t), brute_max_connected_cut(G, (s, t)).cut_size))
    return out


def _run(G, kind, anchors, k, seed, trials=20):
    s, t = anchors
    if kind == "bond":
        return cc_st_bond_exists(G, s, t, k, trials=trials, seed=seed)
    return cc_connected_cut_exists(G, k, s=s, t=t, trials=trials, seed=seed)


def test_cut_and_count_soundness_and_completeness(verdict):
    no = _no_instances()
    false_pos = sum(_run(G, kind, a, k, seed) for G, kind, a, k in no for seed in range(10))
    yes = _yes_instances()
    misses = 0
    for j, (G, kind, a, k) in enumerate(yes):
        if not _run(G, kind, a, k, seed=j):
            # rerun once with a fresh seed
            misses += not _run(G, kind, a, k, seed=10_000 + j)
    detail = f"{len(no)} no-instances x 10 seeds: {false_pos} false positives; {len(yes)} yes-instances: {misses} misses"
    verdict(2, "Cut & Count has no false positives and rarely misses", len(no) >= 50 and len(yes) >= 50 and false_pos == 0 and misses <= 1, detail)


def test_parity_oracle(verdict):
    report = run_parity(count=30, seed=0, max_n=8)
    graphs = {r["instance"] for r in report.rows}
    detail = f"{len(graphs)} graphs, {len(report.rows)} root tables compared, {len(report.mismatches)} mismatches"
    verdict(3, "root parities equal brute-force parities", report.ok and len(graphs) >= 30, detail)


def test_reduction_thresholds(verdict):
    report = run_reductions(seed=0)
    kinds = {r["check"].split("-")[0] for r in report.rows}
    detail = (f"{len(report.rows)} checks over {sorted(kinds)}, {len(report.mismatches)} mismatches; "
              "split and H_phi checked in the certificate direction only")
    verdict(4, "reduction thresholds and certificates", report.ok, detail)


def test_structural_invariants(verdict):
    rows = run_small_random(count=60, seed=7).rows + run_fixtures(trials=10).rows
    bad = [r for r in rows if not r["ok"]]
    C5 = cycle_graph(5)
    cyc = {
        "oracle": brute_largest_bond(C5).cut_size,
        "tw": solve_bond_td(C5, to_nice(C5, heuristic_tree_decomposition(C5))).cut_size,
        "mw": mw_solve(C5, heuristic_decomposition_tree(C5)).cut_size,
    }
    gaps = []
    for n in range(2, 8):
        S = star_graph(n)
        inst = build_twin_cover_instance(S, min_twin_cover(S))
        gaps.append((tc_largest_bond(S, inst).cut_size, tc_max_connected_cut(S, inst).cut_size, n))
    invariant_rows = [r for r in rows if r["check"] in ("bond<=m-n+2", "maxcut>=mcc>=bond", "mcc>=maxdeg")]
    ok = not bad and set(cyc.values()) == {2} and all(b == 1 and c == n for b, c, n in gaps) and invariant_rows
    detail = f"{len(invariant_rows)} invariant checks, C5 bond {cyc}, star gaps {[(b, c) for b, c, _ in gaps]}"
    verdict(5, "structural invariants, cycle bond and star gap", bool(ok), detail)


def _biconnected(G):
    return len(block_cut_tree(G).blocks) == 1


def test_minor_lemmas_and_block_reduction(verdict):
    plain = []
    for k in range(2, 7):
        plain.append((complete_bipartite(2, k), MinorModel({0}, {1}, [{2 + i} for i in range(k)])))
    seed = 0
    while len(plain) < 30:
        G = random_connected_graph(8, 0.4, 40_000 + seed)
        seed += 1
        m = find_k2k_model_heuristic(G, 2 + seed % 3)
        if m is not None:
            plain.append((G, m))
    bond_ok = all((r := bond_from_k2k_model(G, m)).is_bond and r.cut_size >= m.k for G, m in plain)

    st_models = []
    seed = 0
    while len(st_models) < 25:
        G = random_connected_graph(7 + seed % 3, 0.6, 50_000 + seed)
        seed += 1
        if not _biconnected(G):
            continue
        m = find_k2k_model_heuristic(G, 4 if seed % 2 else 2)
        if m is not None:
            st_models.append((G, m))
    st_ok = True
    for G, m in st_models:
        k = m.k // 2
        for s, t in itertools.permutations(range(G.n), 2):
            r = st_bond_from_k22k_model(G, s, t, m)
            st_ok &= r.is_bond and r.cut_size >= k and s in r.side and t not in r.side

    reduce_cases = 0
    reduce_ok = True
    for i in range(40):
        G = random_connected_graph(6 + i % 7, 0.25, 60_000 + i)
        for s, t in ((0, G.n - 1), (G.n // 2, 1)):
            H, mp = st_block_reduce(G, s, t)
            reduce_ok &= brute_largest_bond(G, (s, t)).cut_size == brute_largest_bond(H, (mp[s], mp[t])).cut_size
            reduce_cases += 1
    detail = f"{len(plain)} K2,k models, {len(st_models)} K2,2k models over all anchor pairs, {reduce_cases} block reductions"
    verdict(6, "minor lemmas give bonds; block reduction keeps st values", bond_ok and st_ok and reduce_ok, detail)


def test_resource_bounds(verdict):
    dp_nodes = cc_nodes = 0
    ok = True
    widest = 0
    for i in range(25):
        G = random_connected_graph(8 + i % 5, (0.3, 0.5)[i % 2], 70_000 + i)
        td = heuristic_tree_decomposition(G)
        if td.width > 8:
            continue
        widest = max(widest, td.width)
        ntd = to_nice(G, td)
        for solve in (solve_bond_td, solve_mcc_td):
            stats = {}
            solve(G, ntd, stats=stats)
            for node, count in zip(ntd.nodes, stats["state_counts"]):
                ok &= count <= state_bound(len(node.bag))
                dp_nodes += 1
        actd = to_nice(G, td, (0, G.n - 1))
        stats = {}
        count_parities(G, actd, (0, G.n - 1), random_weights(G.n, i, 0), stats=stats)
        for node, rows in zip(actd.nodes, stats["row_counts"]):
            ok &= rows <= 4 ** len(node.bag)
            cc_nodes += 1
    detail = f"{dp_nodes} DP nodes and {cc_nodes} Cut & Count nodes checked, widths up to {widest}"
    verdict(7, "state counts within 2^b B(b+1) and 4^b", ok and dp_nodes > 0, detail)
