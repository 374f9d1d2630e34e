#!/usr/bin/env python3
"""Long-running differential soak: solver vs brute force vs state oracle.

Heavier than `pairdom verify`: every instance is also checked state by
state after each block merge, so a disagreement pinpoints the exact
merge and case that produced it.

Usage:
  python3 scripts/soak_verify.py --instances 2000
"""

import argparse
import sys

from pairdom import (StateKind, is_paired_dominating_set, oracle_min_pds,
                     oracle_state, random_block_graph, solve_detailed)

FAMILIES = [(4, 3), (3, 3), (2, 4), (8, 2), (9, 2), (5, 2), (2, 3), (6, 2)]


def check_instance(seed: int) -> list:
    nb, ms = FAMILIES[seed % len(FAMILIES)]
    g = random_block_graph(nb, ms, 100, seed=seed)
    res = solve_detailed(g)
    problems = []
    ref = oracle_min_pds(g)
    if ref is None or ref[1] != res.weight:
        problems.append(f"weight {res.weight} != oracle {ref and ref[1]}")
    if not is_paired_dominating_set(g, res.set):
        problems.append("output is not a paired-dominating set")
    hset = {v: {v} for v in range(g.n)}
    for ev in res.events:
        H = set(hset[ev.root])
        for c in ev.children:
            H |= hset[c]
        for v in res.bct.block_vertices(ev.block_id):
            H.add(int(v))
        hset[ev.root] = H
        sub, index = g.induced(sorted(H))
        for state in StateKind:
            expect = oracle_state(sub, index[ev.root], state)
            if expect != ev.weights[int(state)]:
                problems.append(
                    f"event {ev.index} state {state.name}: stored "
                    f"{ev.weights[int(state)]}, oracle {expect} "
                    f"(q1 case {ev.q1_case}, q2 case {ev.q2_case})")
    return problems


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    bad = 0
    for i in range(args.instances):
        seed = args.seed + i
        problems = check_instance(seed)
        if problems:
            bad += 1
            print(f"seed {seed}:")
            for p in problems:
                print(f"  {p}")
        if (i + 1) % 200 == 0:
            print(f"... {i + 1}/{args.instances} checked, {bad} bad")
    print(f"done: {args.instances} instances, {bad} with mismatches")
    return 3 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
