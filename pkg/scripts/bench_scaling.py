#!/usr/bin/env python3
"""Wall-time scaling of the solver on triangle chains.

Doubles the instance size across a range and reports solve time per
block, so deviations from linear scaling are visible at a glance.

Usage:
  python3 scripts/bench_scaling.py
  python3 scripts/bench_scaling.py --max-exp 21 --repeat 5
"""

import argparse
import time

from pairdom import chain_of_triangles, solve


def run(max_exp: int, repeat: int) -> None:
    solve(chain_of_triangles(4))      # warm the jitted kernels
    print(f"{'blocks':>10} {'n':>10} {'time[s]':>10} {'ns/block':>10}")
    prev = None
    for exp in range(10, max_exp + 1):
        blocks = 2 ** exp
        g = chain_of_triangles(blocks)
        best = min(_solve_time(g) for _ in range(repeat))
        rate = best / blocks * 1e9
        growth = "" if prev is None else f"  x{best / prev:.2f}"
        print(f"{blocks:>10} {g.n:>10} {best:>10.4f} {rate:>10.1f}{growth}")
        prev = best


def _solve_time(g) -> float:
    t0 = time.perf_counter()
    solve(g)
    return time.perf_counter() - t0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-exp", type=int, default=20,
                        help="largest chain is 2**max_exp blocks (default 20)")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    run(args.max_exp, args.repeat)
