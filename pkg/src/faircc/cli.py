"""Command-line interface: ``faircc {build,run,bench,eval,oracle}``.

Exit codes: 0 success, 2 usage or parse error, 3 infeasible or too large.
"""

import argparse
import csv
import glob
import json
import sys
from fractions import Fraction

from . import ingestion
from .exceptions import FairCCError, Infeasible, TooLarge
from .experiments import ALGORITHMS, FAIR_ALGORITHMS, evaluate, run_repeated
from .fairness import FairnessConstraint
from .solvers import brute_force_cc

EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
ORACLE_MAX_N = 12


class CLIError(Exception):
    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _fail(exc):
    code = EXIT_INFEASIBLE if isinstance(exc, (Infeasible, TooLarge)) else EXIT_USAGE
    raise CLIError(str(exc), code) from exc


def _load(path):
    try:
        return ingestion.load_graph(path)
    except (FairCCError, OSError) as exc:
        _fail(exc)


def _emit_json(obj, out):
    out.write(json.dumps(obj, indent=2, sort_keys=False))
    out.write("\n")


def _table(rows, columns, out):
    cells = [[("" if r.get(c) is None else (f"{r[c]:.4f}" if isinstance(r[c], float) else str(r[c])))
              for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


# -- subcommands ------------------------------------------------------------

def cmd_build(args, out):
    embed_mode = args.embeddings is not None
    edge_mode = args.colors is not None or args.edges is not None
    if embed_mode == edge_mode:
        raise CLIError("give either --embeddings with --theta, or --colors with --edges")
    try:
        if embed_mode:
            if args.theta is None:
                raise CLIError("--embeddings needs --theta")
            g = ingestion.threshold_graph(ingestion.load_embeddings(args.embeddings), args.theta)
        else:
            if args.colors is None or args.edges is None:
                raise CLIError("--colors and --edges go together")
            g = ingestion.load_edge_graph(args.colors, args.edges)
        ingestion.save_graph(g, args.out)
    except (FairCCError, OSError, ValueError) as exc:
        if isinstance(exc, CLIError):
            raise
        _fail(exc)
    frac = g.n_positive / g.n_edges if g.n_edges else 0.0
    out.write(f"n={g.n} C={g.n_colors} positive_fraction={frac:.6f}\n")
    return 0


def _check_algo_alpha(algo, alpha):
    want = FAIR_ALGORITHMS.get(algo)
    if want and alpha is not None and alpha != want:
        raise CLIError(f"--algo {algo} requires --alpha {want}")


def cmd_run(args, out):
    _check_algo_alpha(args.algo, args.alpha)
    g = _load(args.graph)
    try:
        reports, mean = run_repeated(
            g, args.algo, args.seed, args.repeats,
            dataset=ingestion.graph_name(args.graph), theta=args.theta,
            alpha=args.alpha or "half", pivot_repeats=args.pivot_repeats,
        )
    except FairCCError as exc:
        _fail(exc)
    rows = [r.as_dict() for r in reports] + [mean.as_dict()]
    if not args.timing:
        for r in rows:
            r["wall_time_ms"] = None
    if args.json:
        _emit_json(rows, out)
    else:
        _table(rows, ["run", "algorithm", "seed", "error", "imbalance_half", "imbalance_equal",
                      "n_clusters", "wall_time_ms"], out)
    return 0


BENCH_COLUMNS = ["graph", "n", "C", "algorithm", "repeats", "error", "imbalance_half",
                 "imbalance_equal", "n_clusters", "wall_time_ms", "error_ratio_vs_local"]


def cmd_bench(args, out):
    paths = sorted(glob.glob(args.graphs))
    if not paths:
        raise CLIError(f"no graph matches {args.graphs!r}")
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    unknown = [a for a in algos if a not in ALGORITHMS]
    if unknown:
        raise CLIError(f"unknown algorithms: {', '.join(unknown)}")
    rows, failures = [], 0
    for path in paths:
        try:
            g = ingestion.load_graph(path)
        except (FairCCError, OSError) as exc:
            sys.stderr.write(f"warning: skipping {path}: {exc}\n")
            failures += len(algos)
            continue
        per_graph = {}
        for algo in algos:
            try:
                _, mean = run_repeated(g, algo, args.seed, args.repeats,
                                       dataset=ingestion.graph_name(path), alpha=args.alpha,
                                       pivot_repeats=args.pivot_repeats)
            except FairCCError as exc:
                sys.stderr.write(f"warning: {path} / {algo} failed: {exc}\n")
                failures += 1
                continue
            per_graph[algo] = {
                "graph": ingestion.graph_name(path), "n": g.n, "C": g.n_colors,
                "algorithm": algo, "repeats": args.repeats, "error": mean.error,
                "imbalance_half": mean.imbalance_half, "imbalance_equal": mean.imbalance_equal,
                "n_clusters": mean.n_clusters, "wall_time_ms": mean.wall_time_ms,
            }
        local = per_graph.get("local")
        for algo, row in per_graph.items():
            ratio = None
            if local is not None and local["error"] > 0:
                ratio = row["error"] / local["error"]
            row["error_ratio_vs_local"] = ratio
            rows.append(row)
    if not rows:
        raise CLIError("every benchmark cell failed", EXIT_INFEASIBLE)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
        w.writeheader()
        for row in rows:
            w.writerow({k: ("" if v is None else v) for k, v in row.items()})
    out.write(f"wrote {len(rows)} rows to {args.out}" + (f" ({failures} cells failed)" if failures else "") + "\n")
    return 0


def _alphas(g, which):
    if which in ("half", "both"):
        yield "imbalance_half", Fraction(1, 2)
    if which in ("equal", "both") and g.n_colors >= 2:
        yield "imbalance_equal", Fraction(1, g.n_colors)


def cmd_eval(args, out):
    g = _load(args.graph)
    try:
        c = ingestion.load_clustering(args.clustering, g.n)
    except (FairCCError, OSError) as exc:
        _fail(exc)
    measures = evaluate(g, c)
    report = {"error": measures["error"], "n_clusters": measures["n_clusters"]}
    for key, _ in _alphas(g, args.alpha):
        report[key] = measures[key]
    if args.json:
        _emit_json(report, out)
    else:
        for k, v in report.items():
            out.write(f"{k}\t{v}\n")
    return 0


def cmd_oracle(args, out):
    g = _load(args.graph)
    if g.n > ORACLE_MAX_N:
        raise CLIError(f"n = {g.n} exceeds the oracle limit {ORACLE_MAX_N}", EXIT_INFEASIBLE)
    try:
        constraint = FairnessConstraint.parse(args.alpha) if args.alpha else None
        c, cost = brute_force_cc(g, constraint, max_n=ORACLE_MAX_N)
    except FairCCError as exc:
        _fail(exc)
    clusters = [list(map(int, members)) for members in c.clusters()]
    report = {"cost": int(cost), "error": cost / g.n_edges if g.n_edges else 0.0,
              "alpha": args.alpha, "clusters": clusters}
    if args.json:
        _emit_json(report, out)
    else:
        out.write(f"cost\t{cost}\n")
        for k, members in enumerate(clusters):
            out.write(f"cluster {k}\t{' '.join(map(str, members))}\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="faircc", description="Fair correlation clustering.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a signed graph file")
    p.add_argument("--embeddings")
    p.add_argument("--theta", type=float)
    p.add_argument("--colors")
    p.add_argument("--edges")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("run", help="run one algorithm K times on a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--alpha", choices=("half", "equal"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--pivot-repeats", type=int, default=10)
    p.add_argument("--theta", type=float, help="recorded in the report only")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="report wall time (breaks byte-identical output)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bench", help="mean measures for several graphs and algorithms")
    p.add_argument("--graphs", required=True, help="glob of graph files")
    p.add_argument("--algos", default="local,pivot,match-local,single,rand")
    p.add_argument("--alpha", choices=("half", "equal"), default="half", help="shape of rand fairlets")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--pivot-repeats", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("eval", help="score a clustering file")
    p.add_argument("--graph", required=True)
    p.add_argument("--clustering", required=True)
    p.add_argument("--alpha", choices=("half", "equal", "both"), default="both")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("oracle", help=f"exact optimum for n <= {ORACLE_MAX_N}")
    p.add_argument("--graph", required=True)
    p.add_argument("--alpha", help="half, equal or 1/t; omit for unconstrained")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "repeats", 1) < 1:
        sys.stderr.write("faircc: --repeats must be >= 1\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except CLIError as exc:
        sys.stderr.write(f"faircc: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
