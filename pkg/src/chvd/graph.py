"""Weighted graphs and the chordal / interval toolbox.

Vertices are dense 0-based integers. Vertex sets are plain Python ints used
as bitsets (bit ``v`` set iff ``v`` is a member); the ``mask_*`` helpers work
on adjacency given as a sequence of neighbor bitsets and are what the
dynamic program calls in its inner loop.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import InvalidGraph, NotChordal, WeightOverflow

U64_MAX = (1 << 64) - 1


# ---------------------------------------------------------------------------
# bitset helpers


def bits(mask: int) -> Iterator[int]:
    """Yield the members of a bitset in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices) -> int:
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def mask_to_list(mask: int) -> list[int]:
    return list(bits(mask))


def mask_neighborhood(adj: Sequence[int], s: int) -> int:
    """Open neighborhood N(S) of a vertex set."""
    nb = 0
    for v in bits(s):
        nb |= adj[v]
    return nb & ~s


def mask_is_clique(adj: Sequence[int], s: int) -> bool:
    for v in bits(s):
        if (s & ~adj[v]) != (1 << v):
            return False
    return True


def mask_components(adj: Sequence[int], alive: int) -> list[int]:
    """Connected components of the subgraph induced by ``alive``, ordered by lowest member."""
    comps = []
    rest = alive
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nb = 0
            for v in bits(frontier):
                nb |= adj[v]
            frontier = nb & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def mask_mcs(adj: Sequence[int], alive: int) -> list[int]:
    """Maximum cardinality search visit order (ties: smallest id)."""
    order = []
    visited = 0
    todo = alive
    while todo:
        best, best_cnt = -1, -1
        for v in bits(todo):
            c = (adj[v] & visited).bit_count()
            if c > best_cnt:
                best, best_cnt = v, c
        order.append(best)
        visited |= 1 << best
        todo &= ~(1 << best)
    return order


def mask_is_chordal(adj: Sequence[int], alive: int | None = None) -> bool:
    """Chordality of the induced subgraph: MCS order checked as a reversed PEO."""
    if alive is None:
        alive = (1 << len(adj)) - 1
    visited = 0
    last = {}
    todo = alive
    step = 0
    while todo:
        best, best_cnt = -1, -1
        for v in bits(todo):
            c = (adj[v] & visited).bit_count()
            if c > best_cnt:
                best, best_cnt = v, c
        earlier = adj[best] & visited
        if earlier:
            parent = max(bits(earlier), key=last.__getitem__)
            if (earlier & ~(1 << parent)) & ~adj[parent]:
                return False
        last[best] = step
        step += 1
        visited |= 1 << best
        todo &= ~(1 << best)
    return True


def mask_peo(adj: Sequence[int], alive: int) -> list[int] | None:
    """Perfect elimination ordering of ``G[alive]``, or None when not chordal."""
    if not mask_is_chordal(adj, alive):
        return None
    return mask_mcs(adj, alive)[::-1]


def _bfs_path(adj: Sequence[int], allowed: int, src: int, dst: int) -> list[int] | None:
    """Shortest path from src to dst inside ``allowed`` (both endpoints must be allowed)."""
    parent = {src: -1}
    seen = 1 << src
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            path = []
            while u != -1:
                path.append(u)
                u = parent[u]
            return path[::-1]
        for w in bits(adj[u] & allowed & ~seen):
            seen |= 1 << w
            parent[w] = u
            queue.append(w)
    return None


def mask_find_hole(adj: Sequence[int], alive: int) -> list[int] | None:
    """A shortest hole of ``G[alive]`` as a vertex list, or None if chordal.

    Every hole has a vertex ``v`` with two non-adjacent hole neighbors ``a``,
    ``b``; a shortest a-b path avoiding the rest of ``N[v]`` closes an induced
    cycle through ``v``.
    """
    if mask_is_chordal(adj, alive):
        return None
    best = None
    for v in bits(alive):
        nb = adj[v] & alive
        closed = nb | (1 << v)
        for a in bits(nb):
            rest_b = nb & ~adj[a] & ~((1 << (a + 1)) - 1)
            for b in bits(rest_b):
                allowed = (alive & ~closed) | (1 << a) | (1 << b)
                path = _bfs_path(adj, allowed, a, b)
                if path is not None and (best is None or len(path) + 1 < len(best)):
                    best = [v] + path
                    if len(best) == 4:
                        return best
    return best


def mask_is_minimal_separator(adj: Sequence[int], alive: int, s: int) -> bool:
    return len(mask_full_components(adj, alive, s)) >= 2


def mask_full_components(adj: Sequence[int], alive: int, s: int) -> list[int]:
    """Components C of ``G[alive] - S`` with N(C) = S."""
    out = []
    for comp in mask_components(adj, alive & ~s):
        if mask_neighborhood(adj, comp) & alive == s:
            out.append(comp)
    return out


def mask_minimal_separators(adj: Sequence[int], alive: int) -> list[tuple[int, list[int]]]:
    """All minimal separators of a chordal ``G[alive]`` with their full components.

    Peels simplicial vertices in elimination order; every minimal separator
    of the graph is the remaining neighborhood of some peeled vertex, so the
    candidates only need filtering. Output is sorted by separator bitset.
    """
    order = mask_peo(adj, alive)
    if order is None:
        raise NotChordal("minimal separator enumeration needs a chordal graph")
    remaining = alive
    candidates = set()
    for v in order:
        candidates.add(adj[v] & remaining & ~(1 << v))
        remaining &= ~(1 << v)
    out = []
    for s in sorted(candidates):
        full = mask_full_components(adj, alive, s)
        if len(full) >= 2:
            out.append((s, full))
    return out


# ---------------------------------------------------------------------------
# weighted graph


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with non-negative integer vertex weights."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise InvalidGraph(f"adjacency has {len(self.adjacency)} rows, expected {self.n}")
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * self.n)
        if len(self.weights) != self.n:
            raise InvalidGraph("one weight per vertex required")
        total = 0
        for v, w in enumerate(self.weights):
            if not isinstance(w, (int, np.integer)) or w < 0:
                raise InvalidGraph(f"weight of vertex {v} must be a non-negative integer")
            total += int(w)
        if total > U64_MAX:
            raise WeightOverflow(f"total weight {total} exceeds 2^64-1")
        nsets = [set(row) for row in self.adjacency]
        for v, row in enumerate(self.adjacency):
            if len(nsets[v]) != len(row):
                raise InvalidGraph(f"duplicate neighbor of vertex {v}")
            for u in row:
                if not 0 <= u < self.n:
                    raise InvalidGraph(f"neighbor {u} of {v} out of range")
                if u == v:
                    raise InvalidGraph(f"self-loop at vertex {v}")
                if v not in nsets[u]:
                    raise InvalidGraph(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], weights=None) -> "WeightedGraph":
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"edge {u}-{v} out of range")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adjacency = tuple(tuple(sorted(s)) for s in nbrs)
        return cls(n, adjacency, tuple(int(w) for w in weights) if weights is not None else ())

    @classmethod
    def from_masks(cls, masks: Sequence[int], weights=None) -> "WeightedGraph":
        adjacency = tuple(tuple(bits(m)) for m in masks)
        return cls(len(masks), adjacency, tuple(weights) if weights is not None else ())

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(row) for row in self.adjacency)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(row) for row in self.adjacency)

    @property
    def m(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, row in enumerate(self.adjacency) for v in row if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def total_weight(self) -> int:
        return sum(self.weights)

    def weight_of(self, vertices) -> int:
        if isinstance(vertices, int):
            vertices = bits(vertices)
        return sum(self.weights[v] for v in vertices)

    def induced(self, vertices) -> tuple["WeightedGraph", list[int]]:
        """Induced subgraph relabeled densely; also returns new-id -> old-id."""
        keep = sorted(bits(vertices)) if isinstance(vertices, int) else sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        adjacency = tuple(
            tuple(sorted(index[u] for u in self.adjacency[v] if u in index)) for v in keep
        )
        return WeightedGraph(len(keep), adjacency, tuple(self.weights[v] for v in keep)), keep

    def remove(self, vertices) -> tuple["WeightedGraph", list[int]]:
        drop = set(bits(vertices)) if isinstance(vertices, int) else set(vertices)
        return self.induced([v for v in range(self.n) if v not in drop])

    def with_weights(self, weights) -> "WeightedGraph":
        return WeightedGraph(self.n, self.adjacency, tuple(int(w) for w in weights))


def complete_graph(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int, weights=None) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], weights)


def path_graph(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


# ---------------------------------------------------------------------------
# recognition


def _mcs_linear(g: WeightedGraph) -> list[int]:
    n = g.n
    weight = [0] * n
    done = [False] * n
    buckets = [set(range(n))]
    top = 0
    order = []
    for _ in range(n):
        while not buckets[top]:
            top -= 1
        v = buckets[top].pop()
        done[v] = True
        order.append(v)
        for u in g.adjacency[v]:
            if not done[u]:
                w = weight[u]
                buckets[w].discard(u)
                weight[u] = w + 1
                if w + 1 == len(buckets):
                    buckets.append(set())
                buckets[w + 1].add(u)
                if w + 1 > top:
                    top = w + 1
    return order


def is_chordal(g: WeightedGraph) -> bool:
    """True iff ``g`` has a perfect elimination ordering; O(n + m)."""
    order = _mcs_linear(g)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    nsets = g.neighbor_sets
    for v in order:
        earlier = [u for u in g.adjacency[v] if pos[u] < pos[v]]
        if len(earlier) < 2:
            continue
        parent = max(earlier, key=pos.__getitem__)
        pn = nsets[parent]
        for u in earlier:
            if u != parent and u not in pn:
                return False
    return True


def find_simplicial(g: WeightedGraph) -> int | None:
    """Smallest vertex whose neighborhood is a clique."""
    nsets = g.neighbor_sets
    for v in range(g.n):
        row = g.adjacency[v]
        if all(len(nsets[u].intersection(row)) == len(row) - 1 for u in row):
            return v
    return None


class SeparatorRecord(NamedTuple):
    separator: int
    full_components: tuple[int, ...]


def minimal_separators_chordal(g: WeightedGraph) -> list[SeparatorRecord]:
    """MinSep(g) with each separator's full components, sorted by separator bitset."""
    if not is_chordal(g):
        raise NotChordal("graph is not chordal")
    return [
        SeparatorRecord(s, tuple(sorted(comps, key=mask_to_list)))
        for s, comps in mask_minimal_separators(g.masks, g.all_mask)
    ]


def is_minimal_separator(g: WeightedGraph, s) -> bool:
    """True iff at least two components of g - s have neighborhood exactly s."""
    return mask_is_minimal_separator(g.masks, g.all_mask, to_mask(s))


def _component_lists(g: WeightedGraph, alive: Sequence[bool] | None = None) -> list[list[int]]:
    seen = [False] * g.n if alive is None else [not a for a in alive]
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        i = 0
        while i < len(comp):
            for u in g.adjacency[comp[i]]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
            i += 1
        comps.append(sorted(comp))
    return comps


def connected_components(g: WeightedGraph) -> list[list[int]]:
    return _component_lists(g)


def _avoidance_labels(adj: Sequence[int], n: int) -> np.ndarray:
    """labels[z, u] = component id of u in G - N[z], or -1 when u is in N[z]."""
    labels = np.full((n, n), -1, dtype=np.int32)
    full = (1 << n) - 1
    for z in range(n):
        for cid, comp in enumerate(mask_components(adj, full & ~(adj[z] | (1 << z)))):
            for u in bits(comp):
                labels[z, u] = cid
    return labels


def mask_find_asteroidal_triple(adj: Sequence[int]) -> tuple[int, int, int] | None:
    """Brute-force AT search over all triples using per-vertex component labels."""
    n = len(adj)
    if n < 3:
        return None
    labels = _avoidance_labels(adj, n)
    nonadj = np.ones((n, n), dtype=bool)
    for v in range(n):
        nonadj[v, v] = False
        for u in bits(adj[v]):
            nonadj[v, u] = False
    # same[z, a, b]: a and b connected in G - N[z]
    for a in range(n):
        la = labels[:, a]
        # candidates b > a, c > b
        for b in range(a + 1, n):
            if not nonadj[a, b]:
                continue
            lb = labels[:, b]
            # a-b path avoiding N[c]: labels[c,a] == labels[c,b] != -1
            ab_ok = (la == lb) & (la >= 0)
            # a-c path avoiding N[b]: labels[b,a] == labels[b,c]
            ac_ok = (labels[b] == labels[b, a]) & (labels[b, a] >= 0)
            bc_ok = (labels[a] == labels[a, b]) & (labels[a, b] >= 0)
            cand = ab_ok & ac_ok & bc_ok & nonadj[a] & nonadj[b]
            cand[: b + 1] = False
            hits = np.flatnonzero(cand)
            if hits.size:
                return a, b, int(hits[0])
    return None


def asteroidal_triple_witness(adj: Sequence[int], triple: tuple[int, int, int]) -> int:
    """Vertex set of the three avoiding paths; it induces a graph that still has the AT."""
    n = len(adj)
    full = (1 << n) - 1
    a, b, c = triple
    out = 0
    for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
        allowed = full & ~(adj[z] | (1 << z))
        path = _bfs_path(adj, allowed, x, y)
        assert path is not None
        out |= to_mask(path)
    return out


def find_asteroidal_triple(g: WeightedGraph) -> tuple[int, int, int] | None:
    for comp in connected_components(g):
        if len(comp) < 3:
            continue
        sub, back = g.induced(comp)
        at = mask_find_asteroidal_triple(sub.masks)
        if at is not None:
            return tuple(back[v] for v in at)
    return None


def is_interval(g: WeightedGraph) -> bool:
    """Chordal and asteroidal-triple free."""
    if not is_chordal(g):
        return False
    return find_asteroidal_triple(g) is None


def mask_is_interval(adj: Sequence[int], alive: int) -> bool:
    if not mask_is_chordal(adj, alive):
        return False
    for comp in mask_components(adj, alive):
        if comp.bit_count() < 3:
            continue
        members = mask_to_list(comp)
        index = {v: i for i, v in enumerate(members)}
        sub = [0] * len(members)
        for v in members:
            sub[index[v]] = to_mask(index[u] for u in bits(adj[v] & comp))
        if mask_find_asteroidal_triple(sub) is not None:
            return False
    return True


# ---------------------------------------------------------------------------
# constructions


def subdivide_all_edges(g: WeightedGraph) -> WeightedGraph:
    """Replace every edge by a path of length two.

    Original vertices keep their ids and weights; subdivision vertices get ids
    n..n+m-1 (edges in lexicographic order) and weight 1 + w(V(g)), so a
    minimum-weight chordal deletion set never needs them.
    """
    heavy = 1 + g.total_weight()
    edges = g.edges()
    new_edges = []
    for i, (u, v) in enumerate(edges):
        s = g.n + i
        new_edges.append((u, s))
        new_edges.append((s, v))
    weights = list(g.weights) + [heavy] * len(edges)
    return WeightedGraph.from_edges(g.n + len(edges), new_edges, weights)
