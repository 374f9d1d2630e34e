"""Vertex-weighted undirected graphs and the domination predicates.

The graph is stored in CSR form (``adj_indptr``/``adj_indices``) so the
same object feeds both the pure-Python predicates and the array kernels.
Vertex ids are dense 0-based integers; instance files use 1-based ids and
are converted at the I/O boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DuplicateEdge, OutOfRange, SelfLoop, WeightOverflow
from .weights import MAX_TOTAL_WEIGHT


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Simple undirected graph with nonnegative integer vertex weights."""

    n: int
    m: int
    weights: np.ndarray            # int64[n]
    adj_indptr: np.ndarray         # int64[n + 1]
    adj_indices: np.ndarray        # int64[2 * m]
    max_degree: int
    edges: np.ndarray = field(repr=False)   # int64[m, 2], each row u < v

    def neighbors(self, v: int) -> np.ndarray:
        return self.adj_indices[self.adj_indptr[v]:self.adj_indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.adj_indptr[v + 1] - self.adj_indptr[v])

    def weight_of(self, vertices: Iterable[int]) -> int:
        return int(sum(int(self.weights[v]) for v in vertices))

    def total_weight(self) -> int:
        return int(sum(int(w) for w in self.weights))

    def edge_list(self) -> list:
        return [(int(u), int(v)) for u, v in self.edges]

    def induced(self, vertices: Sequence[int]) -> tuple["WeightedGraph", dict]:
        """Subgraph induced by ``vertices``, relabeled to 0..k-1.

        Returns the subgraph and the old-id -> new-id mapping.
        """
        keep = sorted(set(int(v) for v in vertices))
        index = {v: i for i, v in enumerate(keep)}
        sub_edges = [
            (index[int(u)], index[int(v)])
            for u, v in self.edges
            if int(u) in index and int(v) in index
        ]
        sub = build_graph(len(keep), [int(self.weights[v]) for v in keep], sub_edges)
        return sub, index


@dataclass(frozen=True)
class VertexSet:
    """Sorted vertex set with its precomputed total weight."""

    members: tuple
    total_weight: int

    @classmethod
    def from_iterable(cls, g: WeightedGraph, vertices: Iterable[int]) -> "VertexSet":
        members = tuple(sorted(set(int(v) for v in vertices)))
        return cls(members, g.weight_of(members))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, v):
        return v in self.members


def build_graph(n: int, weights: Sequence[int], edges) -> WeightedGraph:
    """Validate and build a :class:`WeightedGraph`.

    ``edges`` is a sequence of (u, v) pairs or an int array of shape
    (m, 2).  Rejects out-of-range ids, self loops, duplicate edges,
    negative weights, and totals that could overflow downstream
    arithmetic.
    """
    w_arr = np.asarray(list(weights) if not isinstance(weights, np.ndarray) else weights,
                       dtype=np.int64)
    if w_arr.shape != (n,):
        raise WeightOverflow(f"expected {n} weights, got {w_arr.shape}")
    if n and int(w_arr.min()) < 0:
        v = int(np.argmin(w_arr))
        raise WeightOverflow(f"vertex {v} has negative weight {int(w_arr[v])}")
    # exact total via split sums (a straight int64 sum could wrap silently)
    total = int(np.sum(w_arr >> 30, dtype=np.int64)) * (1 << 30) \
        + int(np.sum(w_arr & ((1 << 30) - 1), dtype=np.int64))
    if total >= MAX_TOTAL_WEIGHT:
        raise WeightOverflow(f"total weight {total} exceeds the supported range")

    e = np.asarray(edges, dtype=np.int64)
    if e.size == 0:
        e = e.reshape(0, 2)
    if e.ndim != 2 or e.shape[1] != 2:
        raise OutOfRange("edges must be pairs of vertex ids")
    m = e.shape[0]
    if m:
        if int(e.min()) < 0 or int(e.max()) >= n:
            bad = e[(e < 0).any(axis=1) | (e >= n).any(axis=1)][0]
            raise OutOfRange(f"edge ({int(bad[0])}, {int(bad[1])}) is out of range for n={n}")
        loops = e[:, 0] == e[:, 1]
        if loops.any():
            v = int(e[int(np.argmax(loops)), 0])
            raise SelfLoop(f"edge ({v}, {v}) is a self loop")
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        keys = lo * n + hi
        uniq, counts = np.unique(keys, return_counts=True)
        if uniq.size != m:
            k = int(uniq[int(np.argmax(counts > 1))])
            raise DuplicateEdge(f"edge ({k // n}, {k % n}) appears more than once")
        canon = np.stack([lo, hi], axis=1)
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        deg = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        order = np.argsort(src, kind="stable")
        indices = dst[order]
        max_deg = int(deg.max())
    else:
        canon = np.empty((0, 2), dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        indices = np.empty(0, dtype=np.int64)
        max_deg = 0
    return WeightedGraph(
        n=n,
        m=m,
        weights=w_arr,
        adj_indptr=indptr,
        adj_indices=indices,
        max_degree=max_deg,
        edges=canon,
    )


def is_connected(g: WeightedGraph) -> bool:
    """True iff a traversal from vertex 0 reaches every vertex (n=0 is connected)."""
    if g.n == 0:
        return True
    from ._kernels import reach_count
    return int(reach_count(g.n, g.adj_indptr, g.adj_indices, 0)) == g.n


def is_dominating_set(g: WeightedGraph, s) -> bool:
    """Every vertex not in ``s`` has a neighbor in ``s``."""
    members = set(int(v) for v in s)
    for v in range(g.n):
        if v in members:
            continue
        if not any(int(u) in members for u in g.neighbors(v)):
            return False
    return True


def has_perfect_matching(g: WeightedGraph, s) -> bool:
    """True iff the subgraph induced by ``s`` has a perfect matching.

    Backtracking search: repeatedly match the lowest-id unmatched vertex
    against each unmatched neighbor.  Exponential in the worst case; fine
    for the oracle-scale sets and solver outputs it is applied to.  The
    empty set is vacuously matched.
    """
    members = sorted(set(int(v) for v in s))
    if len(members) % 2 == 1:
        return False
    if not members:
        return True
    member_set = set(members)
    nbrs = {
        v: [int(u) for u in g.neighbors(v) if int(u) in member_set]
        for v in members
    }
    matched = set()
    # Explicit stack so huge solver outputs cannot hit the recursion limit.
    stack = []
    v = members[0]
    ni = 0
    while True:
        advanced = False
        while ni < len(nbrs[v]):
            u = nbrs[v][ni]
            ni += 1
            if u not in matched:
                matched.add(v)
                matched.add(u)
                if len(matched) == len(members):
                    return True
                stack.append((v, ni, u))
                v = next(x for x in members if x not in matched)
                ni = 0
                advanced = True
                break
        if advanced:
            continue
        if not stack:
            return False
        v, ni, u = stack.pop()
        matched.discard(v)
        matched.discard(u)


def is_paired_dominating_set(g: WeightedGraph, s) -> bool:
    """Dominating set whose induced subgraph has a perfect matching.

    The empty set never paired-dominates a nonempty graph; for n=0 the
    empty set qualifies.
    """
    members = set(int(v) for v in s)
    if g.n == 0:
        return not members
    if not members:
        return False
    return is_dominating_set(g, members) and has_perfect_matching(g, members)
