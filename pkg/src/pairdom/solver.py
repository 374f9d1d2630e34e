"""Bottom-up dynamic program over the block-cut tree.

Each vertex that currently roots a processed subgraph H carries four
state weights:

  D       min-weight dominating set of H containing the root, with the
          rest of the set perfectly matched (the root pairs later),
  P       min-weight paired-dominating set of H containing the root,
  P'      min-weight paired-dominating set of H avoiding the root,
  Pbar    min-weight paired-dominating set of H minus the root that also
          leaves the root undominated.

Blocks are merged in pendant order; each merge combines the root's
previous states with the per-child cheapest states plus a constant
number of repair candidates (see ``_kernels`` for the case analysis).
The winning weight of the whole graph is min(P, P') at the final block's
root, and the set itself is rebuilt from per-merge choice records.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Optional, Sequence

import numpy as np

from . import _kernels as k
from .blocks import BlockCutTree, find_blocks, first_non_clique_block
from .errors import (InternalInconsistency, NoPairedDominatingSet,
                     NotBlockGraph)
from .graph import VertexSet, WeightedGraph
from .weights import INFEASIBLE, fmt_weight


class StateKind(IntEnum):
    D = 0
    P = 1
    P_PRIME = 2
    P_BAR = 3


class CandidateTag(IntEnum):
    X = k.TAG_X
    X_PLUS = k.TAG_X_PLUS
    X_MINUS = k.TAG_X_MINUS
    Y = k.TAG_Y
    Y_PLUS = k.TAG_Y_PLUS
    Y_MINUS = k.TAG_Y_MINUS
    Z1 = k.TAG_Z1
    Z1_PLUS = k.TAG_Z1_PLUS
    Z1_MINUS = k.TAG_Z1_MINUS
    T1 = k.TAG_T1
    T2 = k.TAG_T2
    T3 = k.TAG_T3
    T4 = k.TAG_T4
    T5 = k.TAG_T5
    T6 = k.TAG_T6
    T7 = k.TAG_T7
    T8 = k.TAG_T8
    Z2 = k.TAG_Z2
    Z2_PLUS = k.TAG_Z2_PLUS
    Z2_MINUS = k.TAG_Z2_MINUS
    T9 = k.TAG_T9
    T10 = k.TAG_T10
    T11 = k.TAG_T11
    T12 = k.TAG_T12
    PBAR_SUM = k.TAG_PBAR
    INIT = k.TAG_INIT


@dataclass(frozen=True)
class StateQuad:
    """The four state weights recorded at a subgraph root."""

    owner: int
    d: int
    p: int
    p_prime: int
    p_bar: int

    @classmethod
    def initial(cls, g: WeightedGraph, v: int) -> "StateQuad":
        return cls(owner=v, d=int(g.weights[v]), p=INFEASIBLE,
                   p_prime=INFEASIBLE, p_bar=0)

    def weight(self, kind: StateKind) -> int:
        return (self.d, self.p, self.p_prime, self.p_bar)[int(kind)]

    def as_tuple(self) -> tuple:
        return (self.d, self.p, self.p_prime, self.p_bar)

    def __repr__(self):
        vals = ", ".join(f"{name}={fmt_weight(w)}" for name, w in
                         zip(("D", "P", "P'", "Pbar"), self.as_tuple()))
        return f"StateQuad(owner={self.owner}, {vals})"


def init_states(g: WeightedGraph) -> dict:
    """Initial quad at every vertex: D = own weight, P = P' = infeasible,
    Pbar = 0 (the empty set)."""
    return {v: StateQuad.initial(g, v) for v in range(g.n)}


@dataclass(frozen=True)
class ChoiceRecord:
    """How a merge result is assembled from its inputs.

    ``overrides`` replaces the base per-child selections at up to two
    slots; ``convert_pbar_children`` re-points every Pbar-selected child
    to its P' state (the all-children-self-dominated candidates).
    """

    g1_kind: StateKind
    tag: CandidateTag
    overrides: tuple = ()
    convert_pbar_children: bool = False
    case: int = 0


@dataclass(frozen=True)
class MergeContext:
    """Per-block scratch shared by the four merges.

    Slots index the children list (spec's child i corresponds to slot
    i-2).  Absent selectors are slot -1 with an infeasible gain.
    """

    k: int                      # block size (children + root)
    s_star_kinds: tuple         # per-child cheapest state
    s_star_weights: tuple
    r: int                      # children whose cheapest state is D
    any_p: bool
    base_weight: int            # sum of per-child cheapest weights
    p_prime_sum: int            # sum of per-child P' weights
    alpha: int
    alpha_gain: int
    alpha_prime: int
    alpha_prime_gain: int
    beta: int
    beta_down: int
    beta_down_kind: int
    beta_p_gain: int
    beta_q_gain: int
    beta_r_gain: int
    gamma: int
    gamma_gain: int
    gamma_prime: int
    gamma_prime_gain: int
    pbar_children: tuple        # the index set I
    i_delta: int                # total cost of converting I to P'

    def as_tuple(self) -> tuple:
        return (len(self.s_star_kinds), self.r, 1 if self.any_p else 0,
                self.base_weight, self.p_prime_sum,
                self.alpha, self.alpha_gain, self.alpha_prime, self.alpha_prime_gain,
                self.beta, self.beta_down, self.beta_down_kind,
                self.beta_p_gain, self.beta_q_gain, self.beta_r_gain,
                self.gamma, self.gamma_gain, self.gamma_prime, self.gamma_prime_gain,
                len(self.pbar_children), self.i_delta)

    def __repr__(self):
        names = ("D", "P", "P'", "Pbar")
        stars = ", ".join(f"{j}:{names[kd]}({fmt_weight(w)})" for j, (kd, w)
                          in enumerate(zip(self.s_star_kinds, self.s_star_weights)))
        return (f"MergeContext(k={self.k}, r={self.r}, any_p={self.any_p}, "
                f"S*=[{stars}], alpha={self.alpha}, alpha'={self.alpha_prime}, "
                f"beta={self.beta}, gamma={self.gamma}, gamma'={self.gamma_prime}, "
                f"I={list(self.pbar_children)})")


def build_merge_context(children: Sequence[StateQuad]) -> MergeContext:
    """Selectors over the child quads, matching the sweep kernel exactly."""
    kk = len(children)
    cd = np.fromiter((c.d for c in children), np.int64, kk) if kk else np.empty(0, np.int64)
    cp = np.fromiter((c.p for c in children), np.int64, kk) if kk else np.empty(0, np.int64)
    cq = np.fromiter((c.p_prime for c in children), np.int64, kk) if kk else np.empty(0, np.int64)
    cr = np.fromiter((c.p_bar for c in children), np.int64, kk) if kk else np.empty(0, np.int64)
    kinds = np.empty(max(kk, 1), np.int8)
    ctx = k.build_ctx(cd, cp, cq, cr, kk, kinds)
    ctx = tuple(int(x) for x in ctx)
    (_, r, anyp, base, qsum, a1s, a1g, a2s, a2g, bs, bdown, bkind,
     bp, bq, br, g1s, g1g, g2s, g2g, icnt, idelta) = ctx
    mc = MergeContext(
        k=kk + 1,
        s_star_kinds=tuple(int(kinds[j]) for j in range(kk)),
        s_star_weights=tuple(min(c.as_tuple()) for c in children),
        r=r,
        any_p=bool(anyp),
        base_weight=base,
        p_prime_sum=qsum,
        alpha=a1s, alpha_gain=a1g,
        alpha_prime=a2s, alpha_prime_gain=a2g,
        beta=bs, beta_down=bdown, beta_down_kind=bkind,
        beta_p_gain=bp, beta_q_gain=bq, beta_r_gain=br,
        gamma=g1s, gamma_gain=g1g,
        gamma_prime=g2s, gamma_prime_gain=g2g,
        pbar_children=tuple(j for j in range(kk) if int(kinds[j]) == k.KIND_R),
        i_delta=idelta,
    )
    return mc


def _record_from(raw) -> ChoiceRecord:
    w, g1k, tag, o1s, o1k, o2s, o2k, ifl, case = (int(x) for x in raw)
    overrides = tuple((s, StateKind(kd)) for s, kd in ((o1s, o1k), (o2s, o2k)) if s >= 0)
    return ChoiceRecord(g1_kind=StateKind(g1k), tag=CandidateTag(tag),
                        overrides=overrides, convert_pbar_children=bool(ifl),
                        case=case)


def _check_case(raw, which: str, ctx: MergeContext):
    if int(raw[8]) < 0:
        raise InternalInconsistency(f"no unique {which} case matched for {ctx!r}")


def merge_D(g1: StateQuad, ctx: MergeContext):
    """Minimum D state of the merged subgraph; returns (weight, record)."""
    raw = k.merge_d(g1.d, ctx.as_tuple())
    return int(raw[0]), _record_from(raw)


def merge_P(g1: StateQuad, ctx: MergeContext):
    """Minimum P state of the merged subgraph; returns (weight, record)."""
    raw = k.merge_p(g1.d, g1.p, ctx.as_tuple())
    return int(raw[0]), _record_from(raw)


def merge_Q1(g1: StateQuad, ctx: MergeContext):
    """Root-avoiding candidate built over the root component's P' state."""
    raw = k.merge_q1(g1.p_prime, ctx.as_tuple())
    _check_case(raw, "Q1", ctx)
    return int(raw[0]), _record_from(raw)


def merge_Q2(g1: StateQuad, ctx: MergeContext):
    """Root-avoiding candidate built over the root component's Pbar state."""
    raw = k.merge_q2(g1.p_bar, ctx.as_tuple())
    _check_case(raw, "Q2", ctx)
    return int(raw[0]), _record_from(raw)


def merge_Pprime(g1: StateQuad, ctx: MergeContext):
    """Minimum P' state: the better of the two root-avoiding routes (ties
    prefer the first)."""
    w1, r1 = merge_Q1(g1, ctx)
    w2, r2 = merge_Q2(g1, ctx)
    return (w1, r1) if w1 <= w2 else (w2, r2)


def merge_Pbar(g1: StateQuad, ctx: MergeContext):
    """Minimum Pbar state: root component's Pbar plus every child's P'."""
    raw = k.merge_pbar(g1.p_bar, ctx.as_tuple())
    return int(raw[0]), _record_from(raw)


@dataclass(frozen=True)
class MergeEvent:
    """One processed block: its root, children, and the merge outcome."""

    index: int
    block_id: int
    root: int
    children: tuple
    child_kinds: tuple
    g1_weights: tuple           # root quad before the merge
    weights: tuple              # resulting quad (D, P, P', Pbar)
    q1_case: int
    q2_case: int
    records: tuple              # four ChoiceRecords, by StateKind


@dataclass(eq=False)
class SolveResult:
    """Solution plus the full merge trace (for verification and tests)."""

    set: VertexSet
    weight: int
    final_kind: StateKind
    final_root: int
    bct: BlockCutTree
    events: list
    state_weights: np.ndarray       # final per-vertex quads, shape (n, 4)
    _raw: tuple = field(repr=False, default=None)

    def quad(self, v: int) -> StateQuad:
        d, p, q, r = (int(x) for x in self.state_weights[v])
        return StateQuad(owner=v, d=d, p=p, p_prime=q, p_bar=r)


def _prepare(g: WeightedGraph):
    if g.n <= 1:
        raise NoPairedDominatingSet(
            f"a graph on {g.n} vertex(es) has no paired-dominating set")
    bct = find_blocks(g)        # raises Disconnected
    bad = first_non_clique_block(bct)
    if bad is not None:
        verts = " ".join(str(v + 1) for v in sorted(bad.vertices))
        raise NotBlockGraph(
            f"block {bad.block_id + 1} ({{{verts}}}) is not a clique",
            block_vertices=bad.vertices)
    return bct


def _run_sweep(g: WeightedGraph, bct: BlockCutTree, final_root: Optional[int]):
    order = bct.elimination_order
    roots = bct.block_roots
    final_block = int(order[-1])
    fverts = [int(v) for v in bct.block_vertices(final_block)]
    if final_root is None:
        final_root = min(fverts)
    elif final_root not in fverts:
        raise ValueError(
            f"final root {final_root} is not in the final block {sorted(fverts)}")
    raw = k.dp_sweep(g.n, g.weights, bct.num_blocks, bct.block_ptr,
                     bct.block_verts, order, roots, final_root)
    if int(raw[-1]) != 0:
        raise InternalInconsistency("a merge context matched no case")
    return raw, final_root


def _extract_answer(g: WeightedGraph, raw, final_root: int):
    res_w = raw[8]
    last = res_w.shape[0] - 1
    wp = int(res_w[last, k.KIND_P])
    wq = int(res_w[last, k.KIND_Q])
    if min(wp, wq) >= INFEASIBLE:
        raise InternalInconsistency(
            "no paired-dominating set found on a connected block graph")
    kind = StateKind.P if wp <= wq else StateKind.P_PRIME
    weight = min(wp, wq)
    (sD, sP, sQ, sR, ev_root, ev_child_ptr, ev_child_v, ev_child_kind,
     _res_w, rec_g1k, rec_tag, rec_o1s, rec_o1k, rec_o2s, rec_o2k, rec_ifl,
     ev_q1case, ev_q2case, g1_prev, last_event, _err) = raw
    mask, err = k.reconstruct_mask(
        g.n, res_w.shape[0], final_root, int(kind), last,
        ev_child_ptr, ev_child_v, ev_child_kind,
        rec_g1k, rec_tag, rec_o1s, rec_o1k, rec_o2s, rec_o2k, rec_ifl,
        g1_prev, last_event)
    if int(err) != 0:
        raise InternalInconsistency(f"reconstruction walk failed (code {int(err)})")
    members = np.nonzero(np.asarray(mask))[0]
    total = int(g.weights[members].sum())
    if total != weight:
        raise InternalInconsistency(
            f"reconstructed weight {total} != stored weight {weight}")
    return VertexSet(tuple(int(v) for v in members), total), weight, kind


def solve(g: WeightedGraph, final_root: Optional[int] = None):
    """Minimum-weight paired-dominating set of a connected block graph.

    Returns ``(VertexSet, weight)``.  Runs in time linear in the graph
    size: decomposition, one merge per block, and a choice-record walk.

    Raises NoPairedDominatingSet (n <= 1), Disconnected, NotBlockGraph.
    ``final_root`` overrides the root vertex used for the last block
    (any vertex of that block yields the same weight).
    """
    bct = _prepare(g)
    raw, froot = _run_sweep(g, bct, final_root)
    vset, weight, _ = _extract_answer(g, raw, froot)
    return vset, weight


def solve_detailed(g: WeightedGraph, final_root: Optional[int] = None) -> SolveResult:
    """Like :func:`solve` but keeps the per-block merge trace.

    Builds a Python event object per block; intended for verification
    and tests, not for the million-block benchmark path.
    """
    bct = _prepare(g)
    raw, froot = _run_sweep(g, bct, final_root)
    vset, weight, kind = _extract_answer(g, raw, froot)
    (sD, sP, sQ, sR, ev_root, ev_child_ptr, ev_child_v, ev_child_kind,
     res_w, rec_g1k, rec_tag, rec_o1s, rec_o1k, rec_o2s, rec_o2k, rec_ifl,
     ev_q1case, ev_q2case, g1_prev, last_event, _err) = raw
    order = bct.elimination_order
    events = []
    for e in range(bct.num_blocks):
        lo, hi = int(ev_child_ptr[e]), int(ev_child_ptr[e + 1])
        prev = int(g1_prev[e])
        root = int(ev_root[e])
        if prev >= 0:
            g1w = tuple(int(x) for x in res_w[prev])
        else:
            g1w = StateQuad.initial(g, root).as_tuple()
        records = []
        for s in range(4):
            ov = tuple((int(a), StateKind(int(b))) for a, b in
                       ((rec_o1s[e, s], rec_o1k[e, s]), (rec_o2s[e, s], rec_o2k[e, s]))
                       if int(a) >= 0)
            records.append(ChoiceRecord(
                g1_kind=StateKind(int(rec_g1k[e, s])),
                tag=CandidateTag(int(rec_tag[e, s])),
                overrides=ov,
                convert_pbar_children=bool(int(rec_ifl[e, s])),
                case=int(ev_q1case[e]) if s == 2 else 0,
            ))
        events.append(MergeEvent(
            index=e,
            block_id=int(order[e]),
            root=root,
            children=tuple(int(v) for v in ev_child_v[lo:hi]),
            child_kinds=tuple(StateKind(int(x)) for x in ev_child_kind[lo:hi]),
            g1_weights=g1w,
            weights=tuple(int(x) for x in res_w[e]),
            q1_case=int(ev_q1case[e]),
            q2_case=int(ev_q2case[e]),
            records=tuple(records),
        ))
    state = np.stack([np.asarray(sD), np.asarray(sP), np.asarray(sQ),
                      np.asarray(sR)], axis=1)
    return SolveResult(set=vset, weight=weight, final_kind=kind,
                       final_root=froot, bct=bct, events=events,
                       state_weights=state, _raw=raw)


def reconstruct_state(g: WeightedGraph, result: SolveResult, vertex: int,
                      kind: StateKind) -> VertexSet:
    """Vertex set realizing the state stored at ``vertex`` after the sweep.

    Follows the choice records of the vertex's last merge (or the
    initial assignment if it never rooted one).  The reconstructed
    weight must equal the stored weight exactly.
    """
    raw = result._raw
    (sD, sP, sQ, sR, ev_root, ev_child_ptr, ev_child_v, ev_child_kind,
     res_w, rec_g1k, rec_tag, rec_o1s, rec_o1k, rec_o2s, rec_o2k, rec_ifl,
     ev_q1case, ev_q2case, g1_prev, last_event, _err) = raw
    stored = int(result.state_weights[vertex, int(kind)])
    if stored >= INFEASIBLE:
        raise InternalInconsistency(
            f"state {kind.name} at vertex {vertex} is infeasible")
    mask, err = k.reconstruct_mask(
        g.n, res_w.shape[0], vertex, int(kind), int(last_event[vertex]),
        ev_child_ptr, ev_child_v, ev_child_kind,
        rec_g1k, rec_tag, rec_o1s, rec_o1k, rec_o2s, rec_o2k, rec_ifl,
        g1_prev, last_event)
    if int(err) != 0:
        raise InternalInconsistency(f"reconstruction walk failed (code {int(err)})")
    members = np.nonzero(np.asarray(mask))[0]
    total = int(g.weights[members].sum()) if members.size else 0
    if total != stored:
        raise InternalInconsistency(
            f"reconstructed weight {total} != stored weight {stored}")
    return VertexSet(tuple(int(v) for v in members), total)
