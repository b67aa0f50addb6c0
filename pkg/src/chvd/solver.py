"""Max-weight induced chordal subgraph by dynamic programming over a nice decomposition.

Inside a node, vertex sets are bitsets over bag *positions* (index into the
sorted bag), so their size depends on the width only. A partial solution is
stored as its condensed graph: the boundary X (given by the family key) plus
a sorted tuple of neighborhood masks, one per contracted component.

Families are shrunk with max representative families of the signatures in
the graphic matroid of Base(G[X]).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, NamedTuple

from .boundary import BaseIndex, cached_base_index, edges_acyclic
from .errors import InvalidDecomposition, InvariantViolation, NotChordal
from .graph import WeightedGraph, bits, is_chordal, mask_is_chordal, mask_is_clique
from .matroid import GraphicMatroid, build_graphic_matroid, max_representative
from .treedecomp import (
    BASE,
    FORGET,
    INTRODUCE,
    JOIN,
    NiceDecomposition,
    check_nice,
    make_nice,
    min_fill_decomposition,
    nice_as_tree_decomposition,
    validate,
)

log = logging.getLogger(__name__)


class CondensedEntry(NamedTuple):
    """Condensed partial solution: neighborhood masks, kept weight, provenance.

    ``back`` is None (nothing kept), ``('add', v, back)`` or
    ``('join', back_left, back_right)``.
    """

    graph: tuple[int, ...]
    weight: int
    back: Any = None


# state: X (bag-position bitset) -> list of entries; absent X means empty family
State = dict


@dataclass
class Solution:
    optimum: int
    deletion_set: list[int]
    deletion_weight: int
    kept: list[int]
    stats: "SolveStats"


@dataclass
class SolveStats:
    nodes: int = 0
    entries_checked: int = 0
    max_family: int = 0
    max_entry_vertices_slack: int = 0
    width: int = -1
    violations: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# bit position helpers


def insert_bit(m: int, p: int) -> int:
    low = m & ((1 << p) - 1)
    return ((m >> p) << (p + 1)) | low


def remove_bit(m: int, p: int) -> int:
    low = m & ((1 << p) - 1)
    return ((m >> (p + 1)) << p) | low


def restrict(ladj: tuple[int, ...], x: int) -> tuple[int, ...]:
    """Key for the induced boundary graph: adjacency within X, zero outside."""
    return tuple((a & x) if (x >> i) & 1 else 0 for i, a in enumerate(ladj))


# ---------------------------------------------------------------------------
# cached pure transitions; keys use only bag-local data so repeated
# structures anywhere in the graph share work


@lru_cache(maxsize=1 << 18)
def condensed_is_chordal(badj: tuple[int, ...], x: int, masks: tuple[int, ...]) -> bool:
    b = len(badj)
    adj = list(badj) + list(masks)
    for i, m in enumerate(masks):
        c = 1 << (b + i)
        for v in bits(m):
            adj[v] |= c
    alive = x | (((1 << len(masks)) - 1) << b)
    return mask_is_chordal(adj, alive)


@lru_cache(maxsize=1 << 16)
def boundary_chordal(badj: tuple[int, ...], x: int) -> bool:
    return mask_is_chordal(badj, x)


@lru_cache(maxsize=1 << 18)
def shift_in(masks: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple(insert_bit(m, p) for m in masks)


@lru_cache(maxsize=1 << 18)
def forget_add(badj: tuple[int, ...], p: int, masks: tuple[int, ...]) -> tuple[int, ...]:
    """Condense after moving bag position ``p`` out of the boundary, then drop bit ``p``.

    ``v`` merges with every contracted vertex adjacent to it; the merged
    vertex survives only if its neighborhood is not a clique.
    """
    vb = 1 << p
    nbr = badj[p]
    rest = []
    for m in masks:
        if m & vb:
            nbr |= m
        else:
            rest.append(m)
    nbr &= ~vb
    if not mask_is_clique(badj, nbr):
        rest.append(nbr)
        rest.sort()
    return tuple(remove_bit(m, p) for m in rest)


@lru_cache(maxsize=1 << 18)
def forget_keep(masks: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple(remove_bit(m, p) for m in masks)


@lru_cache(maxsize=1 << 16)
def boundary_index(badj: tuple[int, ...], x: int) -> tuple[BaseIndex, GraphicMatroid]:
    idx = cached_base_index(badj, x)
    return idx, build_graphic_matroid(idx)


@lru_cache(maxsize=1 << 18)
def signature(badj: tuple[int, ...], x: int, masks: tuple[int, ...]) -> int:
    idx, _ = boundary_index(badj, x)
    out = 0
    for m in masks:
        out |= idx.span(m)
    return out


@lru_cache(maxsize=1 << 18)
def _acyclic(badj: tuple[int, ...], x: int, edges: int) -> bool:
    idx, _ = boundary_index(badj, x)
    return edges_acyclic(idx, edges)


# ---------------------------------------------------------------------------
# node transitions


def _check_entry(x: int, e: CondensedEntry, stats: SolveStats | None):
    k = x.bit_count()
    size = k + len(e.graph)
    if k == 0:
        if e.graph:
            raise InvariantViolation("condensed graph over an empty boundary must be empty")
    elif size > 2 * k - 1:
        raise InvariantViolation(f"condensed graph has {size} vertices over a boundary of {k}")
    if stats is not None:
        stats.entries_checked += 1
        if k:
            stats.max_entry_vertices_slack = max(stats.max_entry_vertices_slack, size - (2 * k - 1))


def reduce_family(ladj: tuple[int, ...], x: int, family: list[CondensedEntry],
                  stats: SolveStats | None = None) -> list[CondensedEntry]:
    """Keep the best entry per signature, then a max representative family of the signatures."""
    if len(family) > 1:
        badj = restrict(ladj, x)
        best: dict[int, int] = {}
        for i, e in enumerate(family):
            s = signature(badj, x, e.graph)
            j = best.get(s)
            if j is None or e.weight > family[j].weight:
                best[s] = i
        if len(best) > 1:
            _, matroid = boundary_index(badj, x)
            fam = [(s, family[i].weight, i) for s, i in best.items()]
            family = [family[r.payload] for r in max_representative(matroid, fam)]
        else:
            family = [family[i] for i in best.values()]
    limit = 1 << x.bit_count()
    if len(family) > limit:
        raise InvariantViolation(f"family of {len(family)} exceeds 2^|X| = {limit}")
    for e in family:
        _check_entry(x, e, stats)
    if stats is not None:
        stats.max_family = max(stats.max_family, len(family))
    return family


def _merge(target: dict, masks: tuple[int, ...], weight: int, back):
    cur = target.get(masks)
    if cur is None or weight > cur.weight:
        target[masks] = CondensedEntry(masks, weight, back)


def process_introduce(child: State, ladj: tuple[int, ...], p: int) -> State:
    """Bag gains position ``p``; ``ladj`` is the local adjacency of the new bag."""
    out: State = {}
    vb = 1 << p
    for xc, fam in child.items():
        x = insert_bit(xc, p)
        shifted = [CondensedEntry(shift_in(e.graph, p), e.weight, e.back) for e in fam]
        out[x] = shifted
        xv = x | vb
        badj = restrict(ladj, xv)
        if not boundary_chordal(badj, xv):
            continue
        kept = [e for e in shifted if condensed_is_chordal(badj, xv, e.graph)]
        if kept:
            out[xv] = kept
    return out


def process_forget(child: State, ladj_child: tuple[int, ...], p: int, v: int, wv: int,
                   ladj: tuple[int, ...], stats: SolveStats | None = None) -> State:
    """Bag loses position ``p`` (vertex ``v`` of weight ``wv``)."""
    vb = 1 << p
    pools: dict[int, dict] = {}
    for xc, fam in child.items():
        if xc & vb:
            badj = restrict(ladj_child, xc)
            target = pools.setdefault(remove_bit(xc, p), {})
            for e in fam:
                _merge(target, forget_add(badj, p, e.graph), e.weight + wv, ("add", v, e.back))
        else:
            target = pools.setdefault(remove_bit(xc, p), {})
            for e in fam:
                _merge(target, forget_keep(e.graph, p), e.weight, e.back)
    out: State = {}
    for x in sorted(pools):
        out[x] = reduce_family(ladj, x, list(pools[x].values()), stats)
    return out


def process_join(left: State, right: State, ladj: tuple[int, ...],
                 stats: SolveStats | None = None) -> State:
    out: State = {}
    for x in sorted(left.keys() & right.keys()):
        badj = restrict(ladj, x)
        sr = [(signature(badj, x, e.graph), e) for e in right[x]]
        target: dict = {}
        for e1 in left[x]:
            s1 = signature(badj, x, e1.graph)
            for s2, e2 in sr:
                if s1 & s2 or not _acyclic(badj, x, s1 | s2):
                    continue
                masks = tuple(sorted(e1.graph + e2.graph))
                _merge(target, masks, e1.weight + e2.weight, ("join", e1.back, e2.back))
        if target:
            out[x] = reduce_family(ladj, x, list(target.values()), stats)
    return out


# ---------------------------------------------------------------------------
# driver


def local_adjacency(g: WeightedGraph, bag: tuple[int, ...]) -> tuple[int, ...]:
    nbrs = g.neighbor_sets
    out = []
    for u in bag:
        nu = nbrs[u]
        m = 0
        for j, w in enumerate(bag):
            if w in nu:
                m |= 1 << j
        out.append(m)
    return tuple(out)


def replay(back) -> list[int]:
    """Vertices kept by a back-pointer chain."""
    out = []
    stack = [back]
    while stack:
        b = stack.pop()
        while b is not None:
            if b[0] == "add":
                out.append(b[1])
                b = b[2]
            else:
                stack.append(b[2])
                b = b[1]
    return out


def run_states(g: WeightedGraph, nd: NiceDecomposition, keep: bool = False,
               stats: SolveStats | None = None, check: bool = True) -> list:
    """Process every node; returns the per-node states (only the root unless ``keep``)."""
    if check:
        problem = check_nice(nd)
        if problem is None:
            v = validate(nice_as_tree_decomposition(nd), g)
            problem = None if v is None else str(v)
        if problem is not None:
            raise InvalidDecomposition(problem)
    weights = g.weights
    states: list = [None] * len(nd)
    ladjs: list = [None] * len(nd)
    for t in range(len(nd)):
        kind, bag = nd.kinds[t], nd.bags[t]
        ladj = local_adjacency(g, bag)
        ladjs[t] = ladj
        if kind == BASE:
            st = {0: [CondensedEntry((), 0, None)]}
        elif kind == INTRODUCE:
            c = nd.children[t][0]
            st = process_introduce(states[c], ladj, bag.index(nd.vertex[t]))
        elif kind == FORGET:
            c = nd.children[t][0]
            v = nd.vertex[t]
            cbag = nd.bags[c]
            st = process_forget(states[c], ladjs[c], cbag.index(v), v, weights[v], ladj, stats)
        elif kind == JOIN:
            a, b = nd.children[t]
            st = process_join(states[a], states[b], ladj, stats)
        else:
            raise InvalidDecomposition(f"unknown node kind {kind!r}")
        states[t] = st
        if stats is not None:
            stats.nodes += 1
        if not keep:
            for c in nd.children[t]:
                states[c] = None
                ladjs[c] = None
    return states


def solve(g: WeightedGraph, nd: NiceDecomposition | None = None,
          stats: SolveStats | None = None) -> Solution:
    """Maximum weight induced chordal subgraph and the matching minimum deletion set."""
    if nd is None:
        td = min_fill_decomposition(g)
        log.info("using min-fill decomposition of width %d", td.width)
        nd = make_nice(td)
    if stats is None:
        stats = SolveStats()
    stats.width = nd.width
    states = run_states(g, nd, stats=stats)
    root = states[nd.root]
    fam = root.get(0, [])
    if not fam:
        raise InvariantViolation("root family is empty")
    best = max(fam, key=lambda e: e.weight)
    kept = sorted(replay(best.back))
    if len(set(kept)) != len(kept):
        raise InvariantViolation("witness repeats a vertex")
    kept_set = set(kept)
    deletion = [v for v in range(g.n) if v not in kept_set]
    if g.weight_of(kept) != best.weight:
        raise InvariantViolation("witness weight does not match the optimum")
    sub, _ = g.induced(kept)
    if not is_chordal(sub):
        raise NotChordal("reconstructed solution is not chordal")
    return Solution(best.weight, deletion, g.total_weight() - best.weight, kept, stats)


def solve_graph(g: WeightedGraph, td=None, stats: SolveStats | None = None) -> Solution:
    """Convenience wrapper taking an optional plain tree decomposition."""
    nd = make_nice(td) if td is not None else None
    return solve(g, nd, stats)


# ---------------------------------------------------------------------------
# brute-force invariant audit (test scale only)


def _to_global(bag: tuple[int, ...], m: int) -> int:
    out = 0
    for i in bits(m):
        out |= 1 << bag[i]
    return out


def _subsets(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def verify_invariants(g: WeightedGraph, nd: NiceDecomposition, t: int, state: State,
                      subtree: list | None = None) -> list[str]:
    """Brute-force check of witness replay and extension dominance for node ``t``.

    Returns a list of violation messages; empty means the state is sound.
    """
    from .boundary import BoundariedGraph, condensed_masks, from_masks, glue

    if subtree is None:
        subtree = nd.subtree_vertices()
    bag = nd.bags[t]
    vt = 0
    for v in subtree[t]:
        vt |= 1 << v
    bag_mask = _to_global(bag, (1 << len(bag)) - 1)
    ut = vt & ~bag_mask
    rest = g.all_mask & ~vt
    adj = g.masks
    w = g.weights
    problems = []
    for xp in range(1 << len(bag)):
        x = _to_global(bag, xp)
        fam = state.get(xp, [])
        if len(fam) > 1 << xp.bit_count():
            problems.append(f"node {t} X={sorted(bits(x))}: size invariant broken")
        for e in fam:
            kept = replay(e.back)
            a = 0
            for v in kept:
                a |= 1 << v
            if a & ~ut or len(kept) != a.bit_count():
                problems.append(f"node {t}: witness leaves U_t")
                continue
            if sum(w[v] for v in kept) != e.weight:
                problems.append(f"node {t}: witness weight mismatch")
            if not mask_is_chordal(adj, a | x):
                problems.append(f"node {t}: witness is not chordal")
            got = condensed_masks(BoundariedGraph(adj, a | x, x))
            want = tuple(sorted(_to_global(bag, m) for m in e.graph))
            if got != want:
                problems.append(f"node {t}: witness condenses to a different graph")
        need: dict[int, int] = {}
        for b in _subsets(rest):
            for a in _subsets(ut):
                if mask_is_chordal(adj, a | x | b):
                    wa = sum(w[v] for v in bits(a))
                    if wa > need.get(b, -1):
                        need[b] = wa
        graphs = [(from_masks(adj, x, [_to_global(bag, m) for m in e.graph]), e.weight) for e in fam]
        for b, wa in need.items():
            side = BoundariedGraph(adj, b | x, x)
            if not any(h >= wa and glue(hg, side).is_chordal() for hg, h in graphs):
                problems.append(f"node {t} X={sorted(bits(x))}: extension B={sorted(bits(b))} "
                                f"has no representative of weight >= {wa}")
    return problems
