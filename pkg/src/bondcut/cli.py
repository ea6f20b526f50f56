"""Command line: ``bondcut {solve,gen,validate,bench}``.

Exit codes: 0 success, 1 validation mismatch, 2 bad input, 3 timeout,
4 infeasible anchoring.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import signal
import sys
import time
from contextlib import contextmanager
from itertools import product

from .cutcount import cc_anchored_value, cc_largest_bond, cc_max_connected_cut
from .decomposition import heuristic_decomposition_tree, heuristic_tree_decomposition, parse_td, to_nice, validate_td
from .generators import (
    K2,
    find_exact_cover,
    gen_hphi,
    gen_phi,
    gen_psi,
    gen_split_bond,
    gen_split_x3c,
    gen_subdivide,
    gen_xi,
    psi_certificate,
    psi_threshold,
    random_connected_graph,
    xi_bond_from_cut,
)
from .graph import FORMATS, GraphError, cut_edges, emit_graph, format_for_path, is_connected, make_cut, read_graph
from .modulewidth import mw_solve
from .oracle import DEFAULT_LIMIT, brute_largest_bond, brute_max_connected_cut, brute_max_cut
from .partition_dp import solve_bond_td, solve_mcc_td
from .preprocess import winwin_pipeline
from .twincover import BudgetExceeded, build_twin_cover_instance, min_twin_cover, tc_largest_bond, tc_max_connected_cut
from .validation import SUITES, run_suite

EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_TIMEOUT = 3
EXIT_ANCHORS = 4

ALGOS = ("oracle", "tw", "cutcount", "twincover", "modulewidth", "auto")
AUTO_TWIN_COVER = 6
AUTO_TREEWIDTH = 14


class CliError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


class Timeout(Exception):
    pass


@contextmanager
def time_limit(seconds):
    if not seconds:
        yield
        return

    def fire(signum, frame):
        raise Timeout()

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _load(path, fmt=None):
    try:
        return read_graph(path, fmt)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None


def _anchors(G, text):
    if text is None:
        return None
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise CliError(f"anchors must read s,t; got {text!r}") from None
    if len(parts) != 2:
        raise CliError(f"anchors must read s,t; got {text!r}")
    where = {lab: i for i, lab in enumerate(G.labels)}
    if any(p not in where for p in parts):
        raise CliError(f"anchor is not a vertex: {text}", EXIT_ANCHORS)
    s, t = where[parts[0]], where[parts[1]]
    if s == t:
        raise CliError("anchors must be distinct", EXIT_ANCHORS)
    return s, t


# ---------------------------------------------------------------- solve

def _tree_decomposition(G, args):
    if not args.td:
        return heuristic_tree_decomposition(G)
    try:
        with open(args.td) as fh:
            td = parse_td(fh.read(), G.n)
    except OSError as exc:
        raise CliError(f"cannot read {args.td}: {exc.strerror}") from None
    except GraphError as exc:
        raise CliError(f"{args.td}: {exc}") from None
    problems = validate_td(G, td)
    if problems:
        raise CliError(f"{args.td}: {problems[0]}")
    return td


def _dispatch(G, problem, algo, anchors, args, td=None):
    """Returns (CutResult or None, value, certified, width_used, peak)."""
    bond = problem == "bond"
    stats = {}
    if algo == "oracle":
        if G.n > DEFAULT_LIMIT:
            raise CliError(f"oracle limited to {DEFAULT_LIMIT} vertices")
        r = (brute_largest_bond if bond else brute_max_connected_cut)(G, anchors)
        return r, None, True, None, None
    if algo == "tw":
        td = td or _tree_decomposition(G, args)
        ntd = to_nice(G, td, anchors)
        r = (solve_bond_td if bond else solve_mcc_td)(G, ntd, anchors, stats=stats)
        return r, None, True, td.width, stats.get("peak_states")
    if algo == "cutcount":
        if G.weighted:
            raise CliError("cutcount needs an unweighted graph")
        if anchors is None:
            value = (cc_largest_bond if bond else cc_max_connected_cut)(G, trials=args.trials, seed=args.seed, stats=stats)
            width = heuristic_tree_decomposition(G).width
        else:
            td = td or _tree_decomposition(G, args)
            value = cc_anchored_value(G, anchors, problem, trials=args.trials, seed=args.seed, td=td, stats=stats)
            width = td.width
        return None, value or None, False, width, stats.get("peak_rows")
    if anchors is not None:
        raise CliError(f"{algo} does not support anchors")
    if G.weighted:
        raise CliError(f"{algo} needs an unweighted graph")
    if algo == "twincover":
        X = min_twin_cover(G)
        inst = build_twin_cover_instance(G, X)
        r = (tc_largest_bond if bond else tc_max_connected_cut)(G, inst)
        return r, None, True, len(X), None
    if algo == "modulewidth":
        tree = heuristic_decomposition_tree(G)
        r = mw_solve(G, tree, "bond" if bond else "connected-cut", stats=stats)
        return r, None, True, tree.width, stats.get("peak_states")
    raise CliError(f"unknown algorithm {algo!r}")


def _auto(G, problem, anchors, args):
    """Pick the cheapest exact route; returns (algo, dispatch result, vertex map)."""
    host, mapping, local = G, None, anchors
    td = None
    if problem == "bond" and not G.weighted:
        bound = G.m - G.n + 2
        out = winwin_pipeline(G, bound, anchors)
        if out.is_certificate:
            return "auto:minor", (out.certificate, None, True, None, None), None
        if anchors is not None:
            host, local = out.graph, out.anchors
            mapping = [None] * G.n
            for v, w in out.mapping.items():
                mapping[v] = w
    if local is None and not host.weighted:
        try:
            X = min_twin_cover(host, budget=AUTO_TWIN_COVER)
        except BudgetExceeded:
            X = None
        if X is not None:
            return "twincover", _dispatch(host, problem, "twincover", None, args), mapping
    td = heuristic_tree_decomposition(host)
    if td.width <= AUTO_TREEWIDTH:
        return "tw", _dispatch(host, problem, "tw", local, args, td), mapping
    if host.n <= DEFAULT_LIMIT:
        return "oracle", _dispatch(host, problem, "oracle", local, args), mapping
    if host.weighted:
        return "tw", _dispatch(host, problem, "tw", local, args, td), mapping
    return "cutcount", _dispatch(host, problem, "cutcount", local, args, td), mapping


def _lift_side(G, mapping, side):
    """Side of G from a side of the block-reduced graph: hanging parts follow attachments."""
    back = {w: v for v, w in enumerate(mapping) if w is not None}
    kept = set(back.values())
    chosen = {back[x] for x in side}
    result = set(chosen)
    seen = set(kept)
    for v in sorted(kept):
        stack = [v]
        while stack:
            a = stack.pop()
            for b in G.adj[a]:
                if b not in seen:
                    seen.add(b)
                    if v in chosen:
                        result.add(b)
                    stack.append(b)
    return result


def solve_record(G, args):
    problem = args.problem
    anchors = _anchors(G, args.anchors)
    if not is_connected(G) or G.n < 2:
        raise CliError("input graph must be connected with at least two vertices")
    start = time.perf_counter()
    with time_limit(args.timeout):
        if args.algo == "auto":
            algo, out, mapping = _auto(G, problem, anchors, args)
        else:
            algo, mapping = args.algo, None
            out = _dispatch(G, problem, algo, anchors, args)
    elapsed = (time.perf_counter() - start) * 1000
    result, value, certified, width, _ = out
    witness = None
    if result is not None:
        side = set(result.side)
        if mapping is not None:
            side = _lift_side(G, mapping, side)
            result = make_cut(G, side)
        value = result.cut_size
        witness = sorted(G.labels[v] for v in result.side)
    if value is None and anchors is not None:
        raise CliError("no solution respects the anchors", EXIT_ANCHORS)
    return {
        "problem": problem,
        "algo": algo,
        "n": G.n,
        "m": G.m,
        "value": value,
        "witness": witness,
        "certified": bool(certified and result is not None),
        "width_used": width,
        "elapsed_ms": round(elapsed, 3),
        "seed": args.seed,
    }


def run_solve(args) -> int:
    G = _load(args.graph, args.format)
    record = solve_record(G, args)
    print(json.dumps(record))
    return 0


# ---------------------------------------------------------------- gen

def _read_text(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def parse_dimacs(text):
    clauses, current = [], []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "cp%":
            continue
        try:
            nums = [int(x) for x in line.split()]
        except ValueError:
            raise CliError(f"line {no}: malformed clause {line!r}") from None
        for x in nums:
            if x == 0:
                clauses.append(current)
                current = []
            else:
                current.append(x)
    if current:
        clauses.append(current)
    return clauses


def _sides(G, side):
    return sorted(G.labels[v] for v in side)


def generate(args):
    """Returns (graph, certificate dict or None)."""
    kind = args.kind
    if kind == "random":
        if args.n is None:
            raise CliError("random needs --n")
        return random_connected_graph(args.n, args.p, args.seed), None
    if kind == "x3c":
        data = json.loads(_read_text(args.input))
        inst = gen_split_x3c(data["X"], data["F"], args.multiplier)
        cert = None
        cover = find_exact_cover(data["X"], data["F"])
        if cover is not None:
            r = inst.certificate(cover)
            cert = {"witness": sorted(r.side), "value": r.cut_size, "target": inst.target}
        return inst.graph, cert or {"witness": None, "value": None, "target": inst.target}
    if kind == "hphi":
        clauses = parse_dimacs(_read_text(args.input))
        inst = gen_hphi(clauses, K=args.multiplier)
        cert = {"witness": None, "value": None, "target": inst.target}
        if inst.variables <= 20:
            for a in product((False, True), repeat=inst.variables):
                if all(any(a[abs(l) - 1] == (l > 0) for l in c) for c in inst.clauses):
                    r = inst.certificate(a)
                    cert = {"witness": sorted(r.side), "value": r.cut_size, "target": inst.target}
                    break
        return inst.graph, cert
    if args.input is None:
        raise CliError(f"{kind} needs an input graph")
    G = _load(args.input)
    small = G.n <= DEFAULT_LIMIT
    if kind == "subdivide":
        return gen_subdivide(G), None
    if kind == "psi":
        out = gen_psi(G)
        if not small:
            return out, None
        best = brute_max_cut(G)
        side = psi_certificate(G, best.side)
        r = make_cut(out, side)
        return out, {"witness": sorted(side), "value": r.cut_size, "target": psi_threshold(G.n, best.cut_size)}
    if kind == "phi":
        return gen_phi(G), None
    if kind == "split-bond":
        inst = gen_split_bond(G, args.multiplier)
        if not small:
            return inst.graph, None
        best = brute_max_cut(G)
        r = inst.certificate(best.side)
        return inst.graph, {"witness": sorted(r.side), "value": r.cut_size, "target": inst.threshold(best.cut_size)}
    if kind == "xi":
        if not small:
            return gen_xi(G, K2, args.h), None
        L = cut_edges(G, brute_max_cut(G).side)
        host, r = xi_bond_from_cut(G, L, args.h)
        return host, {"witness": sorted(r.side), "value": r.cut_size, "target": len(L) ** args.h}
    raise CliError(f"unknown generator {kind!r}")


def run_gen(args) -> int:
    G, cert = generate(args)
    fmt = args.format or (format_for_path(args.out) if args.out else "edge-list")
    text = emit_graph(G, fmt)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        if cert is not None:
            with open(args.cert or args.out + ".cert.json", "w") as fh:
                json.dump(cert, fh)
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if cert is not None and args.cert:
            with open(args.cert, "w") as fh:
                json.dump(cert, fh)
                fh.write("\n")
    return 0


# ---------------------------------------------------------------- validate / bench

def run_validate(args) -> int:
    report = run_suite(args.suite, args.count, args.seed)
    print(report.table())
    return 0 if report.ok else EXIT_MISMATCH


def bench_rows(directory, algos, problem="bond", trials=20, seed=0):
    if not os.path.isdir(directory):
        raise CliError(f"no such directory: {directory}")
    names = sorted(f for f in os.listdir(directory) if f.endswith((".txt", ".gr", ".json", ".edges")))
    rows = []
    opts = argparse.Namespace(td=None, trials=trials, seed=seed)
    for name in names:
        G = _load(os.path.join(directory, name))
        for algo in algos:
            start = time.perf_counter()
            result, value, _, _, peak = _dispatch(G, problem, algo, None, opts)
            elapsed = (time.perf_counter() - start) * 1000
            if result is not None:
                value = result.cut_size
            rows.append({"instance": name, "algo": algo, "value": value,
                         "elapsed_ms": round(elapsed, 3), "peak_state_count": peak})
    return rows


def run_bench(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS or a == "auto":
            raise CliError(f"unknown algorithm {a!r}")
    rows = bench_rows(args.directory, algos, args.problem, args.trials, args.seed)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, ["instance", "algo", "value", "elapsed_ms", "peak_state_count"], lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------- parser

def _problem(text):
    aliases = {"bond": "bond", "mcc": "mcc", "connected-cut": "mcc"}
    if text not in aliases:
        raise argparse.ArgumentTypeError(f"unknown problem {text!r}")
    return aliases[text]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bondcut", description="Largest bond and maximum connected cut solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance, print a JSON record")
    p.add_argument("graph")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--problem", type=_problem, default="bond", help="bond or mcc")
    p.add_argument("--anchors", help="s,t (vertex labels)")
    p.add_argument("--algo", choices=ALGOS, default="auto")
    p.add_argument("--td", help="tree decomposition in PACE .td format")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timeout", type=float, default=None, help="seconds")
    p.set_defaults(func=run_solve)

    g = sub.add_parser("gen", help="build a reduction instance")
    g.add_argument("kind", choices=("psi", "phi", "split-bond", "x3c", "subdivide", "hphi", "xi", "random"))
    g.add_argument("input", nargs="?", help="graph file (x3c: JSON with X and F; hphi: DIMACS cnf)")
    g.add_argument("--out", "-o")
    g.add_argument("--cert", help="certificate path (default OUT.cert.json)")
    g.add_argument("--format", choices=FORMATS)
    g.add_argument("--multiplier", type=int, help="split multiplier, x3c M, or hphi K")
    g.add_argument("--h", type=int, default=1, help="xi iterations")
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=run_gen)

    v = sub.add_parser("validate", help="cross-check solvers against the oracle")
    v.add_argument("--suite", choices=SUITES, default="small-random")
    v.add_argument("--count", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=run_validate)

    b = sub.add_parser("bench", help="time algorithms on a directory of graphs")
    b.add_argument("directory")
    b.add_argument("--algos", default="tw,cutcount")
    b.add_argument("--problem", type=_problem, default="bond")
    b.add_argument("--trials", type=int, default=20)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", "-o")
    b.set_defaults(func=run_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"bondcut: {exc}", file=sys.stderr)
        return exc.code
    except Timeout:
        print("bondcut: time limit exceeded", file=sys.stderr)
        return EXIT_TIMEOUT
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"bondcut: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
