"""Command-line front door.

Exit codes: 0 success, 2 invalid input (parse error, disconnected, not a
block graph, no paired-dominating set, negative weight), 3 differential
verification mismatch, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .blocks import find_blocks, pendant_elimination_order, to_dot
from .errors import InternalInconsistency, PairdomError, TooLarge
from .generator import GENERATOR_ALGORITHM, chain_of_triangles, random_block_graph
from .graph import is_paired_dominating_set
from .instance_io import format_instance, load_instance
from .oracle import oracle_min_pds
from .solver import solve


def _cmd_solve(args) -> int:
    g = load_instance(args.file)
    vset, weight = solve(g)
    if args.check:
        if not is_paired_dominating_set(g, vset):
            raise InternalInconsistency("output failed the paired-domination check")
        if vset.total_weight != weight:
            raise InternalInconsistency("output weight mismatch")
    members = [v + 1 for v in vset]
    if args.json:
        bct = find_blocks(g)
        print(json.dumps({"weight": weight, "set": members, "n": g.n,
                          "blocks": bct.num_blocks}))
    else:
        print(f"weight {weight}")
        print("set " + " ".join(str(v) for v in members))
    return 0


def _cmd_verify(args) -> int:
    mismatches = 0
    for i in range(args.instances):
        sub_seed = args.seed + i
        rng = np.random.default_rng(sub_seed)
        nb = int(rng.integers(1, args.max_blocks + 1))
        g = random_block_graph(nb, args.max_size, args.wmax, seed=sub_seed)
        try:
            ref = oracle_min_pds(g)
        except TooLarge:
            print(f"seed {sub_seed}: n={g.n} exceeds the oracle guard; "
                  "reduce --max-blocks/--max-size", file=sys.stderr)
            return 2
        vset, weight = solve(g)
        ok = (ref is not None and ref[1] == weight
              and is_paired_dominating_set(g, vset)
              and vset.total_weight == weight)
        if not ok:
            mismatches += 1
            refw = "none" if ref is None else ref[1]
            print(f"MISMATCH seed={sub_seed} n={g.n} solver={weight} oracle={refw}")
            print(format_instance(g, comments=[f"seed {sub_seed}"]), end="")
    if mismatches:
        print(f"{mismatches} mismatch(es) in {args.instances} instances")
        return 3
    print(f"verified {args.instances} instances: solver matches oracle")
    return 0


def _cmd_gen(args) -> int:
    g = random_block_graph(args.blocks, args.max_size, args.wmax, seed=args.seed)
    text = format_instance(g, comments=[
        f"generator {GENERATOR_ALGORITHM} seed={args.seed} blocks={args.blocks} "
        f"max-size={args.max_size} wmax={args.wmax}",
    ])
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_bench(args) -> int:
    # warm up the jitted kernels on a tiny instance before timing
    solve(chain_of_triangles(4))
    g = chain_of_triangles(args.chain)
    times = []
    for _ in range(args.repeat):
        t0 = time.perf_counter()
        _, weight = solve(g)
        times.append(time.perf_counter() - t0)
    best = min(times)
    print(f"n {g.n} blocks {args.chain} weight {weight} time {best:.6f}s")
    return 0


def _cmd_decompose(args) -> int:
    g = load_instance(args.file)
    bct = find_blocks(g)
    if args.dot:
        print(to_dot(bct))
        return 0
    print(f"blocks {bct.num_blocks}")
    print(f"cut-vertices {len(bct.cut_vertices)}")
    for b in range(bct.num_blocks):
        vs = " ".join(str(int(v) + 1) for v in sorted(bct.block_vertices(b)))
        print(f"block {b + 1}: {vs}")
    print("cuts: " + " ".join(str(c + 1) for c in bct.cut_vertices))
    order = pendant_elimination_order(bct)
    print("order: " + " ".join(str(b + 1) for b in order))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairdom",
        description="Exact minimum-weight paired domination on block graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--check", action="store_true",
                   help="re-validate the output set before printing")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="differential test: solver vs brute force")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--max-blocks", type=int, default=4)
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--wmax", type=int, default=100)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--blocks", type=int, required=True)
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--wmax", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="time the solver on a triangle chain")
    p.add_argument("--chain", type=int, required=True, help="number of triangles")
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("decompose", help="print blocks, cut vertices, order")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="emit DOT instead")
    p.set_defaults(func=_cmd_decompose)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalInconsistency as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PairdomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
