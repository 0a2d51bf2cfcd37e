"""Command-line entry point: ``perfmatch <command> ...``.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
2 malformed input, 3 graph outside the requested class, 4 invalid
decomposition, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import math
import statistics
import sys
import time

from . import kernels
from .decomposition import decompose_k33free, read_decomposition, validate, write_decomposition
from .engine import MODES, EngineStats, count_perfmatch, evaluate_decomposition
from .errors import InvalidDecompositionError, PerfMatchError
from .graph import format_rational, read_graph, write_graph
from .oracle import brute_perfmatch, gen_cliquesum, gen_cliquesum_sized, gen_grid, gen_planar


def _weights(text):
    lo, _, hi = text.partition(",")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError("expected LO,HI") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("LO must not exceed HI")
    return lo, hi


def _sizes(text):
    try:
        out = [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perfmatch", description="Exact weighted perfect-matching sums.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="exact PerfMatch of a graph file")
    c.add_argument("graph")
    c.add_argument("--mode", choices=[m for m in MODES if m != "decomp"], default="auto")
    c.add_argument("--decomp", metavar="FILE", help="use this decomposition (validated first)")
    c.add_argument("--threads", type=int, default=1)

    d = sub.add_parser("decompose", help="write a clique-sum decomposition")
    d.add_argument("graph")
    d.add_argument("--target", choices=["k33"], default="k33")
    d.add_argument("-o", "--output", required=True)

    v = sub.add_parser("validate", help="check a decomposition file against a graph")
    v.add_argument("decomposition")
    v.add_argument("--graph", required=True)

    o = sub.add_parser("oracle", help="brute-force PerfMatch (small graphs)")
    o.add_argument("graph")

    g = sub.add_parser("gen", help="write a random or structured graph")
    g.add_argument("family", choices=["planar", "k33sum", "grid"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--n", type=int, default=12, help="planar: vertex count")
    g.add_argument("--density", type=float, default=0.7, help="planar: edge keep probability")
    g.add_argument("--weights", type=_weights, default=(-3, 3), metavar="LO,HI")
    g.add_argument("--pieces", type=int, default=4, help="k33sum: number of pieces")
    g.add_argument("--max-piece", type=int, default=8)
    g.add_argument("--k5-fraction", type=float, default=0.3)
    g.add_argument("--size", type=int, help="k33sum: exact vertex count (benchmark family)")
    g.add_argument("--decomp-out", metavar="FILE", help="k33sum: also write the ground-truth decomposition")
    g.add_argument("--rows", type=int, default=4)
    g.add_argument("--cols", type=int, default=4)

    b = sub.add_parser("bench", help="time the K3,3-free pipeline over growing sizes")
    b.add_argument("--mode", choices=["k33"], default="k33")
    b.add_argument("--sizes", type=_sizes, default=[2 ** k for k in range(10, 17)])
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--kernel", choices=["auto", "python", "compiled"], default="auto")
    b.add_argument("--threads", type=int, default=1)
    return p


def _count(args):
    G = read_graph(args.graph)
    if args.decomp:
        T = read_decomposition(args.decomp)
        value = count_perfmatch(G, "decomp", decomposition=T, threads=args.threads)
    else:
        value = count_perfmatch(G, args.mode, threads=args.threads)
    print(format_rational(value))
    return 0


def _decompose(args):
    G = read_graph(args.graph)
    T = decompose_k33free(G)
    write_decomposition(T, args.output)
    print(f"{len(T)} nodes, total size {T.total_size()}", file=sys.stderr)
    return 0


def _validate(args):
    G = read_graph(args.graph)
    T = read_decomposition(args.decomposition)
    problems = validate(T, G)
    if not problems:
        print("OK")
        return 0
    for v in problems:
        print(v)
    return InvalidDecompositionError.exit_code


def _oracle(args):
    print(format_rational(brute_perfmatch(read_graph(args.graph))))
    return 0


def _gen(args):
    T = None
    if args.family == "planar":
        G = gen_planar(args.n, args.density, args.weights, args.seed)
    elif args.family == "grid":
        G = gen_grid(args.rows, args.cols)
    elif args.size is not None:
        G = gen_cliquesum_sized(args.size, args.seed, args.max_piece, args.weights, args.k5_fraction)
    else:
        G, T = gen_cliquesum(args.pieces, args.seed, args.max_piece, args.k5_fraction, args.weights,
                             with_tree=args.decomp_out is not None)
    # the file format numbers vertices 1..n in sorted order
    mapping = {v: i for i, v in enumerate(sorted(G.vertices), start=1)}
    write_graph(G, args.output, f"{args.family} seed {args.seed}")
    if args.decomp_out:
        if T is None:
            T = decompose_k33free(G)
        write_decomposition(T.relabel(mapping), args.decomp_out)
    return 0


def _bench(args):
    previous = kernels.use_backend(args.kernel)
    try:
        return _bench_table(args)
    finally:
        kernels.use_backend(previous)


def _bench_table(args):
    print(f"# kernel {kernels.active_backend()}, seed {args.seed}", file=sys.stderr)
    print(f"{'n':>8} {'m':>8} {'nodes':>7} {'sum_nt':>8} {'decomp_s':>9} {'eval_s':>9} {'total_s':>9}")
    ns, ts = [], []
    for n in args.sizes:
        G = gen_cliquesum_sized(n, args.seed)
        t0 = time.perf_counter()
        T = decompose_k33free(G)
        t1 = time.perf_counter()
        stats = EngineStats()
        evaluate_decomposition(T, args.threads, stats=stats)
        t2 = time.perf_counter()
        print(f"{G.n:>8} {G.m:>8} {len(T):>7} {T.total_size():>8} {t1 - t0:>9.3f} {t2 - t1:>9.3f} {t2 - t0:>9.3f}",
              flush=True)
        ns.append(G.n)
        ts.append(t2 - t0)
    if len(ns) >= 2 and min(ts) > 0:
        fit = statistics.linear_regression([math.log(x) for x in ns], [math.log(t) for t in ts])
        print(f"fitted exponent {fit.slope:.3f}")
    return 0


_COMMANDS = {"count": _count, "decompose": _decompose, "validate": _validate, "oracle": _oracle,
             "gen": _gen, "bench": _bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PerfMatchError as exc:
        print(f"perfmatch: {type(exc).__name__}: {exc}", file=sys.stderr)
        for v in getattr(exc, "violations", ()):
            print(f"  {v}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"perfmatch: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
