"""Exact minimum-weight paired domination on block graphs.

A paired-dominating set is a dominating set whose induced subgraph has a
perfect matching.  On block graphs (every biconnected component a
clique) the optimum is found exactly by a bottom-up dynamic program over
the block-cut tree, in time linear in the graph size.
"""

from .blocks import (Block, BlockCutTree, find_blocks, first_non_clique_block,
                     is_block_graph, pendant_elimination_order, to_dot)
from .errors import (Disconnected, DuplicateEdge, InternalInconsistency,
                     NoPairedDominatingSet, NotBlockGraph, OutOfRange,
                     PairdomError, ParseError, SelfLoop, TooLarge,
                     WeightOverflow)
from .generator import (GENERATOR_ALGORITHM, chain_of_triangles,
                        random_block_graph)
from .graph import (VertexSet, WeightedGraph, build_graph,
                    has_perfect_matching, is_connected, is_dominating_set,
                    is_paired_dominating_set)
from .instance_io import (format_instance, load_instance, parse_instance,
                          save_instance)
from .oracle import enumerate_block_graphs, oracle_min_pds, oracle_state
from .solver import (CandidateTag, ChoiceRecord, MergeContext, MergeEvent,
                     SolveResult, StateKind, StateQuad, build_merge_context,
                     init_states, merge_D, merge_P, merge_Pbar, merge_Pprime,
                     merge_Q1, merge_Q2, reconstruct_state, solve,
                     solve_detailed)
from .weights import INFEASIBLE, is_feasible

__version__ = "0.1.0"

__all__ = [
    "Block", "BlockCutTree", "CandidateTag", "ChoiceRecord", "Disconnected",
    "DuplicateEdge", "GENERATOR_ALGORITHM", "INFEASIBLE",
    "InternalInconsistency", "MergeContext", "MergeEvent",
    "NoPairedDominatingSet", "NotBlockGraph", "OutOfRange", "PairdomError",
    "ParseError", "SelfLoop", "SolveResult", "StateKind", "StateQuad",
    "TooLarge", "VertexSet", "WeightOverflow", "WeightedGraph",
    "build_graph", "build_merge_context", "chain_of_triangles",
    "enumerate_block_graphs", "find_blocks", "first_non_clique_block",
    "format_instance", "has_perfect_matching", "init_states", "is_block_graph",
    "is_connected", "is_dominating_set", "is_feasible",
    "is_paired_dominating_set", "load_instance", "merge_D", "merge_P",
    "merge_Pbar", "merge_Pprime", "merge_Q1", "merge_Q2", "oracle_min_pds",
    "oracle_state", "parse_instance", "pendant_elimination_order",
    "random_block_graph", "reconstruct_state", "save_instance", "solve",
    "solve_detailed", "to_dot",
]
