"""Boundaried graphs: condensation, gluing and the two gluing chordality criteria.

A boundaried graph keeps its vertices as ids into a bitset adjacency table.
Boundary ids are never renamed, so two graphs over the same boundary can be
compared and glued id by id.

A condensed graph is determined by its boundary graph and the neighborhoods
of its non-boundary vertices (they form an independent set, and in a chordal
condensed graph no two of them share a neighborhood). The solver therefore
stores condensed graphs as a sorted tuple of neighborhood masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import (
    IncompatibleBoundaries,
    NotASeparator,
    NotChordal,
    NotChordalBoundary,
    PreconditionFailed,
)
from .graph import (
    WeightedGraph,
    bits,
    mask_components,
    mask_full_components,
    mask_is_chordal,
    mask_is_clique,
    mask_minimal_separators,
    mask_neighborhood,
    to_mask,
)


@dataclass(frozen=True)
class BoundariedGraph:
    """Graph on the vertex ids in ``vertices`` with boundary ``boundary`` (both bitsets)."""

    adj: tuple[int, ...]
    vertices: int
    boundary: int

    def __post_init__(self):
        if self.boundary & ~self.vertices:
            raise ValueError("boundary must be a subset of the vertices")

    @classmethod
    def from_graph(cls, g: WeightedGraph, boundary) -> "BoundariedGraph":
        return cls(g.masks, g.all_mask, to_mask(boundary))

    @classmethod
    def from_edges(cls, vertices, edges, boundary) -> "BoundariedGraph":
        vm = to_mask(vertices)
        size = vm.bit_length()
        adj = [0] * size
        for u, v in edges:
            if u == v or not (vm >> u) & 1 or not (vm >> v) & 1:
                raise ValueError(f"bad edge {u}-{v}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(tuple(adj), vm, to_mask(boundary))

    @property
    def outside(self) -> int:
        return self.vertices & ~self.boundary

    def nbr(self, v: int) -> int:
        return self.adj[v] & self.vertices

    def boundary_graph(self) -> tuple[int, ...]:
        """Adjacency of G[X] as masks restricted to X, indexed by vertex id."""
        x = self.boundary
        return tuple((a & x) if (x >> v) & 1 else 0 for v, a in enumerate(self.adj))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in bits(self.vertices):
            for v in bits(self.adj[u] & self.vertices):
                if u < v:
                    out.append((u, v))
        return out

    def is_chordal(self) -> bool:
        return mask_is_chordal(self.adj, self.vertices)

    def components_outside(self) -> list[int]:
        return mask_components(self.adj, self.outside)

    def to_graph(self) -> tuple[WeightedGraph, list[int]]:
        """Plain graph on 0..|V|-1 plus the new-to-old id table."""
        ids = list(bits(self.vertices))
        pos = {v: i for i, v in enumerate(ids)}
        masks = []
        for v in ids:
            m = 0
            for u in bits(self.adj[v] & self.vertices):
                m |= 1 << pos[u]
            masks.append(m)
        return WeightedGraph.from_masks(masks), ids


def compatible(a: BoundariedGraph, b: BoundariedGraph) -> bool:
    if a.boundary != b.boundary:
        return False
    x = a.boundary
    return all((a.adj[v] & x) == (b.adj[v] & x) for v in bits(x))


def condense(bg: BoundariedGraph) -> BoundariedGraph:
    """Contract every component of G - X and drop the contracted vertices that are simplicial.

    Contracted vertices get fresh ids above the boundary, in ascending order of
    their neighborhood bitset, so equal condensed graphs compare equal.
    """
    masks = condensed_masks(bg)
    return from_masks(bg.boundary_graph(), bg.boundary, masks)


def condensed_masks(bg: BoundariedGraph) -> tuple[int, ...]:
    """Sorted neighborhoods (within X) of the non-simplicial contracted components."""
    out = []
    for comp in bg.components_outside():
        nb = mask_neighborhood(bg.adj, comp) & bg.boundary
        if not mask_is_clique(bg.adj, nb):
            out.append(nb)
    return tuple(sorted(out))


def from_masks(boundary_adj: Sequence[int], boundary: int, masks: Sequence[int]) -> BoundariedGraph:
    """Boundaried graph made of G[X] plus an independent vertex per neighborhood mask."""
    base = max(boundary.bit_length(), len(boundary_adj))
    adj = [0] * (base + len(masks))
    for v in bits(boundary):
        adj[v] = boundary_adj[v] & boundary
    vertices = boundary
    for i, m in enumerate(masks):
        c = base + i
        adj[c] = m
        vertices |= 1 << c
        for v in bits(m):
            adj[v] |= 1 << c
    return BoundariedGraph(tuple(adj), vertices, boundary)


def canonical_form(bg: BoundariedGraph) -> tuple:
    """Boundary ids fixed, non-boundary vertices listed by their neighborhood bitset.

    Only meaningful for graphs whose non-boundary part is independent, such
    as condensed graphs.
    """
    x = bg.boundary
    bgraph = tuple((v, bg.adj[v] & x) for v in bits(x))
    outside = tuple(sorted(bg.nbr(v) for v in bits(bg.outside)))
    return (x, bgraph, outside)


def glue(a: BoundariedGraph, b: BoundariedGraph) -> BoundariedGraph:
    """Union of ``a`` and ``b`` identified on the shared boundary.

    Non-boundary vertices of ``b`` are renamed to fresh ids after those of ``a``.
    """
    if not compatible(a, b):
        raise IncompatibleBoundaries("boundaries or boundary graphs differ")
    offset = max(len(a.adj), a.vertices.bit_length())
    rename = {v: v for v in bits(b.boundary)}
    for i, v in enumerate(bits(b.outside)):
        rename[v] = offset + i
    adj = [0] * (offset + b.outside.bit_count())
    for v in bits(a.vertices):
        adj[v] = a.adj[v] & a.vertices
    vertices = a.vertices
    for v in bits(b.vertices):
        nv = rename[v]
        vertices |= 1 << nv
        for u in bits(b.adj[v] & b.vertices):
            adj[nv] |= 1 << rename[u]
    return BoundariedGraph(tuple(adj), vertices, a.boundary)


# ---------------------------------------------------------------------------
# Base graph, spans and signatures


@dataclass(frozen=True)
class BaseIndex:
    """Base(B): one clique per minimal separator S of B on the full components of S.

    ``base_vertices[i]`` is ``(separator index, component mask)``; cliques are
    consecutive index ranges. ``base_edges`` lists, clique by clique, all pairs
    ``(p, q)`` with ``p < q``.
    """

    boundary: int
    separators: tuple[tuple[int, tuple[int, ...]], ...]
    base_vertices: tuple[tuple[int, int], ...]
    base_edges: tuple[tuple[int, int], ...]
    clique_start: tuple[int, ...]
    edge_index: dict = field(compare=False, repr=False)
    _span_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n_base(self) -> int:
        return len(self.base_vertices)

    @property
    def rank_bound(self) -> int:
        """Spanning forest size of Base(B)."""
        return sum(len(c) - 1 for _, c in self.separators)

    def span(self, y: int) -> int:
        """Bitset over ``base_edges``: per separator, the path through the hit components."""
        hit = self._span_cache.get(y)
        if hit is not None:
            return hit
        out = 0
        for si, (_, comps) in enumerate(self.separators):
            start = self.clique_start[si]
            prev = -1
            for ci, comp in enumerate(comps):
                if comp & y:
                    if prev >= 0:
                        out |= 1 << self.edge_index[(start + prev, start + ci)]
                    prev = ci
        self._span_cache[y] = out
        return out


def base_index(adj: Sequence[int], boundary: int) -> BaseIndex:
    """Base index of the chordal graph induced by ``boundary``."""
    seps = mask_minimal_separators(adj, boundary)
    separators = []
    base_vertices = []
    base_edges = []
    clique_start = []
    edge_index = {}
    for si, (s, comps) in enumerate(seps):
        comps = tuple(sorted(comps, key=lambda c: list(bits(c))))
        separators.append((s, comps))
        start = len(base_vertices)
        clique_start.append(start)
        for c in comps:
            base_vertices.append((si, c))
        for p in range(start, start + len(comps)):
            for q in range(p + 1, start + len(comps)):
                edge_index[(p, q)] = len(base_edges)
                base_edges.append((p, q))
    return BaseIndex(boundary, tuple(separators), tuple(base_vertices), tuple(base_edges),
                     tuple(clique_start), edge_index)


@lru_cache(maxsize=1 << 16)
def cached_base_index(boundary_adj: tuple[int, ...], boundary: int) -> BaseIndex:
    return base_index(boundary_adj, boundary)


def _boundary_index(bg: BoundariedGraph) -> BaseIndex:
    badj = bg.boundary_graph()
    if not mask_is_chordal(badj, bg.boundary):
        raise NotChordalBoundary("boundary graph is not chordal")
    return cached_base_index(badj, bg.boundary)


def span(idx: BaseIndex, y) -> int:
    return idx.span(to_mask(y) & idx.boundary)


def sign(bg: BoundariedGraph, idx: BaseIndex | None = None) -> int:
    """Union of the spans of N(C) over the components C of G - X."""
    if idx is None:
        idx = _boundary_index(bg)
    out = 0
    for comp in bg.components_outside():
        out |= idx.span(mask_neighborhood(bg.adj, comp) & bg.boundary)
    return out


def sign_of_masks(idx: BaseIndex, masks: Sequence[int]) -> int:
    out = 0
    for m in masks:
        out |= idx.span(m)
    return out


def edges_acyclic(idx: BaseIndex, edges: int) -> bool:
    """Union-find acyclicity of an edge bitset of Base(B)."""
    parent = list(range(idx.n_base))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in bits(edges):
        p, q = idx.base_edges[e]
        rp, rq = find(p), find(q)
        if rp == rq:
            return False
        parent[rp] = rq
    return True


def glue_is_chordal_via_signatures(a: BoundariedGraph, b: BoundariedGraph) -> tuple[bool, int]:
    """Signature verdict for the chordality of ``glue(a, b)`` and the glued signature.

    Both sides must be chordal; the verdict is exact under that precondition.
    """
    if not compatible(a, b):
        raise IncompatibleBoundaries("boundaries or boundary graphs differ")
    if not a.is_chordal() or not b.is_chordal():
        raise NotChordal("both sides must be chordal")
    idx = _boundary_index(a)
    sa, sb = sign(a, idx), sign(b, idx)
    union = sa | sb
    return (sa & sb) == 0 and edges_acyclic(idx, union), union


# ---------------------------------------------------------------------------
# auxiliary bipartite graphs


def aux_graph(bg: BoundariedGraph, s) -> WeightedGraph:
    """Bipartite contraction graph for separator ``s`` of G[X].

    Vertices ``0..c-1`` are the full components of ``s`` in G[X] (ascending by
    lowest member), followed by the components of G - X in the same order.
    """
    s = to_mask(s)
    badj = bg.boundary_graph()
    x = bg.boundary
    comps = mask_full_components(badj, x, s)
    if s & ~x or len(comps) < 2:
        raise NotASeparator("not a minimal separator of the boundary graph")
    outside = bg.components_outside()
    c = len(comps)
    edges = []
    for j, d in enumerate(outside):
        nb = mask_neighborhood(bg.adj, d)
        for i, comp in enumerate(comps):
            if nb & comp:
                edges.append((i, c + j))
    return WeightedGraph.from_edges(c + len(outside), edges)


def _is_forest(g: WeightedGraph) -> bool:
    comps = len(mask_components(g.masks, g.all_mask))
    return g.m == g.n - comps


def chordal_by_aux(bg: BoundariedGraph) -> bool:
    """Chordality of G from the acyclicity of every auxiliary graph.

    Requires G[X] and every G[X + C] (C a component of G - X) to be chordal.
    """
    x = bg.boundary
    if not mask_is_chordal(bg.adj, x):
        raise PreconditionFailed("boundary graph is not chordal")
    for comp in bg.components_outside():
        if not mask_is_chordal(bg.adj, x | comp):
            raise PreconditionFailed(f"G[X + C] is not chordal for component {sorted(bits(comp))}")
    for s, _ in mask_minimal_separators(bg.boundary_graph(), x):
        if not _is_forest(aux_graph(bg, s)):
            return False
    return True
