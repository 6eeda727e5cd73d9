"""Command-line front end for generation, kernelization, decision,
approximation, exact solving, verification and benchmarking.

Exit codes: 0 success, 2 malformed input, 3 infeasible instance (a vertex is
unreachable from the root), 4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import sys

from . import graphio
from .approx import approximate, approximate_each_root, sqrt_opt_tree
from .digraph import verify_outbranching
from .errors import GraphFormatError, InfeasibleError, InternalInvariantError
from .exact import DEFAULT_LIMIT, maxleaf_exact
from .gen import FAMILIES, GenSpec, generate
from .reduce import decide, kernelize, rule0

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_INFEASIBLE = 3
EXIT_INTERNAL = 4


def _write_or_print(text, path, out):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_gen(args, out, err):
    spec = GenSpec(args.family, args.size if args.family != "random" else args.n,
                   seed=args.seed, arc_probability=args.p)
    d = generate(spec)
    _write_or_print(graphio.format_graph(d), args.out, out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(graphio.to_dot(d))
    return EXIT_OK


def cmd_kernelize(args, out, err):
    d = graphio.load_graph(args.graph)
    reduced, trace = kernelize(d)
    if args.out:
        graphio.save_graph(reduced, args.out)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(trace.to_text())
    out.write(f"{d.n} {d.m} -> {reduced.n} {reduced.m} ({len(trace)} steps)\n")
    return EXIT_OK


def cmd_decide(args, out, err):
    d = graphio.load_graph(args.graph)
    decision = decide(d, args.k)
    if decision.verdict == "TRUE":
        out.write(f"TRUE (witness leaves={decision.witness.leaf_count})\n")
        if args.witness:
            graphio.save_tree(decision.witness, args.witness)
    elif decision.verdict == "FALSE":
        out.write("FALSE\n")
    else:
        out.write(f"REDUCED (n={decision.reduced.n} m={decision.reduced.m}"
                  f" < threshold {decision.threshold})\n")
        if args.out:
            graphio.save_graph(decision.reduced, args.out)
        if args.trace:
            with open(args.trace, "w", encoding="utf-8") as fh:
                fh.write(decision.trace.to_text())
    return EXIT_OK


def cmd_approx(args, out, err):
    d = graphio.load_graph(args.graph)
    if args.all_roots:
        best = None
        for root, tree, report in approximate_each_root(d):
            if best is None or tree.leaf_count > best[1].leaf_count:
                best = (root, tree, report)
        if best is None:
            raise InfeasibleError("no root reaches every vertex")
        root, tree, report = best
        out.write(f"root={root}\n")
    else:
        tree, report = approximate(d)
    out.write(report.format())
    out.write(f"leaves={tree.leaf_count}\n")
    if args.tree:
        graphio.save_tree(tree, args.tree)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(graphio.to_dot(d, tree=tree))
    return EXIT_OK


def cmd_exact(args, out, err):
    d = graphio.load_graph(args.graph)
    if not rule0(d):
        raise InfeasibleError("some vertex is unreachable from the root")
    result = maxleaf_exact(d, limit=args.limit)
    out.write(f"{result.maxleaf}\n")
    if args.witness:
        graphio.save_tree(result.witness, args.witness)
    return EXIT_OK


def cmd_verify(args, out, err):
    d = graphio.load_graph(args.graph)
    t = graphio.load_tree(args.tree)
    check = verify_outbranching(d, t)
    if check.ok:
        out.write(f"OK leaves={check.leaf_count}\n")
        return EXIT_OK
    out.write(f"INVALID: {check.reason}\n")
    return 1


def cmd_bench(args, out, err):
    rows = []
    for i in range(args.count):
        if args.family == "random":
            spec = GenSpec("random", args.n, seed=args.seed + i, arc_probability=args.p)
        else:
            spec = GenSpec(args.family, args.size + i, seed=args.seed)
        d = generate(spec)
        tree, report = approximate(d)
        exact = maxleaf_exact(d, limit=args.limit).maxleaf
        ratio = exact / tree.leaf_count
        rows.append((i, d.n, d.m, report.l, report.h, exact, tree.leaf_count, ratio))
    out.write("instance,n,m,l,h,exact,approx,ratio\n")
    worst = None
    for row in rows:
        out.write(",".join(str(x) for x in row[:7]) + f",{row[7]:.4f}\n")
        if worst is None or row[7] > worst[7]:
            worst = row
    err.write(f"worst ratio {worst[7]:.4f} on instance {worst[0]}\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="maxleaf",
        description="Rooted maximum leaf outbranchings: kernelize, decide, approximate, solve.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance and write the graph file")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--size", type=int, default=3, help="family size parameter")
    p.add_argument("--n", type=int, default=10, help="vertex count (random family)")
    p.add_argument("--p", type=float, default=0.3, help="arc probability (random family)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output graph file (default stdout)")
    p.add_argument("--dot", help="also write a DOT rendering here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("kernelize", help="reduce an instance to its rule fixpoint")
    p.add_argument("graph")
    p.add_argument("--out", help="write the reduced graph here")
    p.add_argument("--trace", help="write the reduction trace here")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("decide", help="decide whether k leaves are achievable, or kernelize")
    p.add_argument("graph")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--witness", help="write the witness tree here on TRUE")
    p.add_argument("--out", help="write the reduced graph here on REDUCED")
    p.add_argument("--trace", help="write the reduction trace here on REDUCED")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("approx", help="factor-92 approximation")
    p.add_argument("graph")
    p.add_argument("--tree", help="write the tree here")
    p.add_argument("--dot", help="write a DOT rendering with the tree bolded")
    p.add_argument("--all-roots", action="store_true",
                   help="try every vertex as root and keep the best tree")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("exact", help="exact maximum leaf count by exhaustive search")
    p.add_argument("graph")
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p.add_argument("--witness", help="write the optimal tree here")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="check a (graph, tree) pair")
    p.add_argument("graph")
    p.add_argument("tree")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="sweep a generator and emit CSV rows")
    p.add_argument("--family", choices=FAMILIES, default="random")
    p.add_argument("--n", type=int, default=9)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--size", type=int, default=2)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out, err)
    except GraphFormatError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FORMAT
    except FileNotFoundError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FORMAT
    except InfeasibleError as exc:
        err.write(f"infeasible: {exc}\n")
        return EXIT_INFEASIBLE
    except InternalInvariantError as exc:
        err.write(f"internal invariant violation: {exc}\n")
        return EXIT_INTERNAL
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FORMAT


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
