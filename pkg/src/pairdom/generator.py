"""Seeded random block-graph instances and the scaling benchmark family."""

from __future__ import annotations

import numpy as np

from .graph import WeightedGraph, build_graph

# PRNG identity recorded in generated instance metadata so instances are
# reproducible across implementations given (algorithm, seed).
GENERATOR_ALGORITHM = "numpy-pcg64"


def random_block_graph(n_blocks: int, max_block_size: int = 3,
                       weight_max: int = 10, seed: int = 0) -> WeightedGraph:
    """Random connected weighted block graph with exactly ``n_blocks`` blocks.

    Starts from one clique of random size in [2, max_block_size], then
    repeatedly glues a fresh clique onto a uniformly random existing
    vertex.  Weights are uniform in [1, weight_max].  Deterministic for
    a given (algorithm, seed); the algorithm is ``GENERATOR_ALGORITHM``.
    """
    if n_blocks < 1:
        raise ValueError("n_blocks must be >= 1")
    if max_block_size < 2:
        raise ValueError("max_block_size must be >= 2")
    if weight_max < 1:
        raise ValueError("weight_max must be >= 1")
    rng = np.random.default_rng(seed)
    edges = []
    size = int(rng.integers(2, max_block_size + 1))
    n = size
    edges.extend((i, j) for i in range(size) for j in range(i + 1, size))
    for _ in range(n_blocks - 1):
        glue = int(rng.integers(0, n))
        size = int(rng.integers(2, max_block_size + 1))
        block = [glue] + list(range(n, n + size - 1))
        n += size - 1
        edges.extend((block[i], block[j])
                     for i in range(len(block)) for j in range(i + 1, len(block)))
    weights = rng.integers(1, weight_max + 1, size=n, dtype=np.int64)
    return build_graph(n, weights, edges)


def chain_of_triangles(n_blocks: int) -> WeightedGraph:
    """Path-like block graph of ``n_blocks`` triangles glued at shared cut
    vertices; n = 2 * n_blocks + 1, unit weights."""
    if n_blocks < 1:
        raise ValueError("n_blocks must be >= 1")
    base = 2 * np.arange(n_blocks, dtype=np.int64)
    eu = np.concatenate([base, base, base + 1])
    ev = np.concatenate([base + 1, base + 2, base + 2])
    n = 2 * n_blocks + 1
    edges = np.stack([eu, ev], axis=1)
    return build_graph(n, np.ones(n, dtype=np.int64), edges)
