"""Shared fixtures: canonical small graphs and trace helpers."""

import numpy as np
import pytest

from pairdom import build_graph, find_blocks

# Fifteen-vertex golden instance: eight cliques glued at six cut vertices.
# 1-based vertex labels; blocks 1,2,4,5,7 are pendant and block 8 is the
# central K4.  Unit weights; optimal paired-domination weight 6 (frozen,
# derived from the brute-force oracle).
GOLDEN_BLOCKS = [
    (10, 14),
    (11, 15),
    (6, 10, 11),
    (7, 8, 12),
    (5, 9, 13),
    (4, 5),
    (1, 2, 4),
    (3, 4, 6, 7),
]
GOLDEN_N = 15
GOLDEN_PENDANT_SETS = {
    frozenset({10, 14}), frozenset({11, 15}), frozenset({7, 8, 12}),
    frozenset({5, 9, 13}), frozenset({1, 2, 4}),
}
GOLDEN_WEIGHT = 6


def golden_graph():
    edges = []
    for blk in GOLDEN_BLOCKS:
        vs = [v - 1 for v in blk]
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                edges.append((vs[i], vs[j]))
    return build_graph(GOLDEN_N, [1] * GOLDEN_N, edges)


@pytest.fixture(scope="session")
def golden():
    return golden_graph()


def path_graph(n, weights=None):
    return build_graph(n, weights or [1] * n, [(i, i + 1) for i in range(n - 1)])


def clique_graph(n, weights=None):
    return build_graph(n, weights or [1] * n,
                       [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves, weights=None):
    return build_graph(leaves + 1, weights or [1] * (leaves + 1),
                       [(0, i) for i in range(1, leaves + 1)])


def cycle_graph(n, weights=None):
    return build_graph(n, weights or [1] * n,
                       [(i, (i + 1) % n) for i in range(n)])


def event_subgraphs(g, result):
    """For each merge event: the vertex set of the processed subgraph H
    rooted at the event's root, and the root's own component before the
    merge (accumulated exactly as the sweep does)."""
    hset = {v: {v} for v in range(g.n)}
    out = []
    for ev in result.events:
        g1 = frozenset(hset[ev.root])
        H = set(g1)
        for c in ev.children:
            H |= hset[c]
        for v in result.bct.block_vertices(ev.block_id):
            H.add(int(v))
        hset[ev.root] = H
        out.append((ev, frozenset(H), g1))
    return out


def assert_valid_elimination(g, bct=None):
    """Each listed block must be pendant in the tree remaining after its
    predecessors are removed (at most one cut vertex shared with what is
    left); the last block absorbs everything."""
    bct = bct or find_blocks(g)
    order = [int(b) for b in bct.elimination_order]
    assert sorted(order) == list(range(bct.num_blocks))
    remaining = set(order)
    for pos, b in enumerate(order):
        remaining.discard(b)
        shared = set()
        mine = set(int(v) for v in bct.block_vertices(b))
        for b2 in remaining:
            shared |= mine & set(int(v) for v in bct.block_vertices(b2))
        if pos < len(order) - 1:
            assert len(shared) == 1, (order, pos, b, shared)
            root = int(bct.block_roots[b])
            assert root in shared
        else:
            assert not shared
    return order
