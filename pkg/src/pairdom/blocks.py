"""Blocks, cut vertices, the block-cut tree, and the elimination order."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._kernels import eliminate, tarjan_blocks
from .errors import Disconnected, InternalInconsistency
from .graph import WeightedGraph


@dataclass(frozen=True)
class Block:
    block_id: int
    vertices: tuple


@dataclass(eq=False)
class BlockCutTree:
    """Decomposition of a connected graph into blocks and cut vertices.

    Array form: ``block_ptr``/``block_verts`` is a CSR over blocks,
    ``is_cut`` flags articulation points.  ``elimination_order`` lists
    block ids so that each block is a leaf of the remaining tree when it
    is removed; ``block_roots[b]`` is the cut vertex it hangs from at
    that moment (-1 for the final block).
    """

    n: int
    num_blocks: int
    block_ptr: np.ndarray
    block_verts: np.ndarray
    block_edge_counts: np.ndarray
    is_cut: np.ndarray
    _blocks: Optional[list] = field(default=None, repr=False)
    _order: Optional[np.ndarray] = field(default=None, repr=False)
    _roots: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def blocks(self) -> list:
        if self._blocks is None:
            out = []
            for b in range(self.num_blocks):
                vs = self.block_verts[self.block_ptr[b]:self.block_ptr[b + 1]]
                out.append(Block(b, tuple(int(v) for v in vs)))
            self._blocks = out
        return self._blocks

    @property
    def cut_vertices(self) -> tuple:
        return tuple(int(v) for v in np.nonzero(self.is_cut)[0])

    def block_vertices(self, b: int) -> np.ndarray:
        return self.block_verts[self.block_ptr[b]:self.block_ptr[b + 1]]

    def block_size(self, b: int) -> int:
        return int(self.block_ptr[b + 1] - self.block_ptr[b])

    def block_cuts(self, b: int) -> list:
        return [int(v) for v in self.block_vertices(b) if self.is_cut[v]]

    def tree_edges(self) -> list:
        """Bipartite tree adjacency as (block_id, cut_vertex) pairs."""
        return [(b, c) for b in range(self.num_blocks) for c in self.block_cuts(b)]

    def pendant_blocks(self) -> list:
        """Blocks containing exactly one cut vertex (the leaves of the tree)."""
        return [b for b in range(self.num_blocks) if len(self.block_cuts(b)) == 1]

    @property
    def elimination_order(self) -> np.ndarray:
        if self._order is None:
            self._order, self._roots = _compute_elimination(self)
        return self._order

    @property
    def block_roots(self) -> np.ndarray:
        if self._roots is None:
            self._order, self._roots = _compute_elimination(self)
        return self._roots


def find_blocks(g: WeightedGraph) -> BlockCutTree:
    """Biconnected components, articulation points, and the block-cut tree.

    Bridges become 2-vertex blocks; a single-vertex graph is one block.
    Raises :class:`Disconnected` when the graph is not connected.
    """
    if g.n == 0:
        raise Disconnected("empty graph")
    if g.n == 1:
        return BlockCutTree(
            n=1,
            num_blocks=1,
            block_ptr=np.array([0, 1], dtype=np.int64),
            block_verts=np.array([0], dtype=np.int64),
            block_edge_counts=np.array([0], dtype=np.int64),
            is_cut=np.zeros(1, dtype=np.uint8),
        )
    comp_ptr, comp_verts, comp_ecnt, is_cut, visited = tarjan_blocks(
        g.n, g.adj_indptr, g.adj_indices)
    if int(visited) < g.n:
        raise Disconnected(f"graph is disconnected ({int(visited)} of {g.n} reachable)")
    return BlockCutTree(
        n=g.n,
        num_blocks=int(comp_ptr.shape[0]) - 1,
        block_ptr=np.asarray(comp_ptr),
        block_verts=np.asarray(comp_verts),
        block_edge_counts=np.asarray(comp_ecnt),
        is_cut=np.asarray(is_cut),
    )


def is_block_graph(g: WeightedGraph) -> bool:
    """True iff every block induces a clique (k vertices, k(k-1)/2 edges)."""
    return first_non_clique_block(find_blocks(g)) is None


def first_non_clique_block(bct: BlockCutTree) -> Optional[Block]:
    """Lowest-id block that is not a clique, or None."""
    sizes = np.diff(bct.block_ptr)
    expected = sizes * (sizes - 1) // 2
    bad = np.nonzero(bct.block_edge_counts != expected)[0]
    if bad.size == 0:
        return None
    b = int(bad[0])
    return Block(b, tuple(int(v) for v in bct.block_vertices(b)))


def pendant_elimination_order(bct: BlockCutTree) -> list:
    """Block ids in removal order: always the smallest-id current leaf.

    Each listed block is pendant (at most one cut vertex) in the tree
    that remains after removing its predecessors.
    """
    return [int(b) for b in bct.elimination_order]


def _compute_elimination(bct: BlockCutTree):
    order, roots, ok = eliminate(bct.num_blocks, bct.block_ptr,
                                 bct.block_verts, bct.is_cut, bct.n)
    if not int(ok):
        raise InternalInconsistency("block-cut tree peel did not consume every block")
    order = np.asarray(order)
    roots = np.asarray(roots)
    if bct.num_blocks > 1 and int((roots[order[:-1]] < 0).sum()) > 0:
        raise InternalInconsistency("a non-final block had no attachment cut vertex")
    return order, roots


def to_dot(bct: BlockCutTree, one_based: bool = True) -> str:
    """DOT rendering of the block-cut tree (blocks as boxes, cuts as circles)."""
    off = 1 if one_based else 0
    lines = ["graph blockcut {"]
    for b in range(bct.num_blocks):
        vs = " ".join(str(int(v) + off) for v in bct.block_vertices(b))
        lines.append(f'  B{b + off} [shape=box, label="B{b + off}: {vs}"];')
    for c in bct.cut_vertices:
        lines.append(f'  c{c + off} [shape=circle, label="{c + off}"];')
    for b, c in bct.tree_edges():
        lines.append(f"  B{b + off} -- c{c + off};")
    lines.append("}")
    return "\n".join(lines)
