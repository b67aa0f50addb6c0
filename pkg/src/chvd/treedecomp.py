"""Tree decompositions: validation, conversion to nice form, min-fill fallback."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import InvalidDecomposition
from .graph import WeightedGraph

BASE, INTRODUCE, FORGET, JOIN = "base", "introduce", "forget", "join"


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags (sorted vertex tuples) and the tree edges between bag indices."""

    bags: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(tuple(sorted(set(b))) for b in self.bags))
        object.__setattr__(self, "edges", tuple((int(a), int(b)) for a, b in self.edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


class Violation(NamedTuple):
    clause: str
    witness: object
    message: str

    def __str__(self):
        return f"{self.clause}: {self.message}"


def validate(d: TreeDecomposition, g: WeightedGraph) -> Violation | None:
    """First violated tree-decomposition clause, or None when ``d`` is valid for ``g``."""
    k = len(d.bags)
    if k == 0:
        return Violation("tree", None, "decomposition has no bags")
    tree = [[] for _ in range(k)]
    seen_edges = set()
    for a, b in d.edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            return Violation("tree", (a, b), f"bad tree edge {a}-{b}")
        key = (min(a, b), max(a, b))
        if key in seen_edges:
            return Violation("tree", (a, b), f"duplicate tree edge {a}-{b}")
        seen_edges.add(key)
        tree[a].append(b)
        tree[b].append(a)
    if len(d.edges) != k - 1 or len(_reach(tree, 0)) != k:
        return Violation("tree", None, "tree edges do not form a tree over the bags")
    occurrences = [[] for _ in range(g.n)]
    for t, bag in enumerate(d.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return Violation("vertex", v, f"bag {t} names vertex {v} outside the graph")
            occurrences[v].append(t)
    for v in range(g.n):
        if not occurrences[v]:
            return Violation("coverage", v, f"vertex {v} is in no bag")
    for v in range(g.n):
        occ = set(occurrences[v])
        if len(_reach(tree, occurrences[v][0], occ)) != len(occ):
            return Violation("connectivity", v, f"bags containing vertex {v} are not connected")
    for u, v in g.edges():
        if not set(occurrences[u]).intersection(occurrences[v]):
            return Violation("edge", (u, v), f"edge {u}-{v} is not covered by any bag")
    return None


def _reach(tree, start, allowed=None) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for s in tree[t]:
            if s not in seen and (allowed is None or s in allowed):
                seen.add(s)
                queue.append(s)
    return seen


@dataclass
class NiceDecomposition:
    """Rooted nice decomposition; node ids are in post-order (children first).

    ``vertex[t]`` is the introduced/forgotten vertex for those kinds, -1 else.
    """

    kinds: list[str]
    bags: list[tuple[int, ...]]
    vertex: list[int]
    children: list[tuple[int, ...]]

    @property
    def root(self) -> int:
        return len(self.kinds) - 1

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def __len__(self):
        return len(self.kinds)

    def _add(self, kind, bag, vertex=-1, children=()):
        self.kinds.append(kind)
        self.bags.append(bag)
        self.vertex.append(vertex)
        self.children.append(children)
        return len(self.kinds) - 1

    def subtree_vertices(self) -> list[set]:
        """V_t for every node (only sensible for small test instances)."""
        out = []
        for t in range(len(self)):
            vt = set(self.bags[t])
            for c in self.children[t]:
                vt |= out[c]
            out.append(vt)
        return out


def _chain(nd: NiceDecomposition, top: int, frm: tuple, to: tuple) -> int:
    bag = list(frm)
    target = set(to)
    for v in sorted(set(frm) - target):
        bag.remove(v)
        top = nd._add(FORGET, tuple(bag), v, (top,))
    for v in sorted(target - set(frm)):
        bag.append(v)
        bag.sort()
        top = nd._add(INTRODUCE, tuple(bag), v, (top,))
    return top


def make_nice(d: TreeDecomposition) -> NiceDecomposition:
    """Nice decomposition of the same width rooted at bag 0, with empty root and leaves."""
    k = len(d.bags)
    if k == 0:
        raise InvalidDecomposition("decomposition has no bags")
    tree = [[] for _ in range(k)]
    for a, b in d.edges:
        tree[a].append(b)
        tree[b].append(a)
    parent = [-2] * k
    parent[0] = -1
    order = [0]
    for t in order:
        for s in sorted(tree[t]):
            if parent[s] == -2:
                parent[s] = t
                order.append(s)
    if len(order) != k:
        raise InvalidDecomposition("tree edges do not connect all bags")
    kids = [[] for _ in range(k)]
    for t in order[1:]:
        kids[parent[t]].append(t)

    nd = NiceDecomposition([], [], [], [])
    top_of = [-1] * k
    for t in reversed(order):
        bag = d.bags[t]
        tops = [_chain(nd, top_of[c], d.bags[c], bag) for c in sorted(kids[t])]
        if not tops:
            top = _chain(nd, nd._add(BASE, ()), (), bag)
        else:
            top = tops[0]
            for other in tops[1:]:
                top = nd._add(JOIN, bag, -1, (top, other))
        top_of[t] = top
    root = _chain(nd, top_of[0], d.bags[0], ())
    if root != len(nd) - 1 or nd.bags[root]:
        raise InvalidDecomposition("root bag is not empty")
    return nd


def check_nice(nd: NiceDecomposition) -> str | None:
    """Per-kind structural check; returns a message for the first bad node."""
    if not nd.kinds:
        return "empty decomposition"
    if nd.bags[nd.root]:
        return "root bag is not empty"
    for t, kind in enumerate(nd.kinds):
        bag, ch, v = nd.bags[t], nd.children[t], nd.vertex[t]
        if list(bag) != sorted(set(bag)):
            return f"node {t}: bag not sorted"
        if any(c >= t for c in ch):
            return f"node {t}: children are not earlier in post-order"
        if kind == BASE:
            if ch or bag:
                return f"node {t}: base node must be an empty leaf"
        elif kind == INTRODUCE:
            if len(ch) != 1:
                return f"node {t}: introduce needs one child"
            cb = nd.bags[ch[0]]
            if v in cb or set(bag) != set(cb) | {v}:
                return f"node {t}: bad introduce of {v}"
        elif kind == FORGET:
            if len(ch) != 1:
                return f"node {t}: forget needs one child"
            cb = nd.bags[ch[0]]
            if v not in cb or set(bag) != set(cb) - {v}:
                return f"node {t}: bad forget of {v}"
        elif kind == JOIN:
            if len(ch) != 2 or any(nd.bags[c] != bag for c in ch):
                return f"node {t}: join children must share its bag"
        else:
            return f"node {t}: unknown kind {kind!r}"
    return None


def nice_as_tree_decomposition(nd: NiceDecomposition) -> TreeDecomposition:
    edges = [(t, c) for t in range(len(nd)) for c in nd.children[t]]
    return TreeDecomposition(tuple(nd.bags), tuple(edges))


def elimination_decomposition(g: WeightedGraph, order: Sequence[int]) -> TreeDecomposition:
    """Decomposition induced by eliminating vertices in ``order``.

    Bag of ``v`` is ``v`` plus its neighbors at elimination time; it hangs below
    the bag of its earliest-eliminated later neighbor. Bag 0 is the bag of the
    last eliminated vertex so it is a natural root.
    """
    n = g.n
    if n == 0:
        return TreeDecomposition(((),), ())
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the vertices")
    nbrs = [set(row) for row in g.adjacency]
    pos = {v: i for i, v in enumerate(order)}
    bags = []
    parent_vertex = []
    for v in order:
        nb = nbrs[v]
        bags.append(tuple(sorted(nb | {v})))
        parent_vertex.append(min(nb, key=pos.__getitem__) if nb else -1)
        nl = list(nb)
        for i, a in enumerate(nl):
            nbrs[a].discard(v)
            for b in nl[i + 1:]:
                nbrs[a].add(b)
                nbrs[b].add(a)
        nbrs[v] = set()
    return _assemble(bags, parent_vertex, pos)


def _assemble(bags, parent_vertex, pos) -> TreeDecomposition:
    n = len(bags)
    # relabel so that bag index 0 is the last eliminated vertex
    new_id = lambda i: n - 1 - i  # noqa: E731
    edges = []
    roots = []
    for i, pv in enumerate(parent_vertex):
        if pv == -1:
            roots.append(i)
        else:
            edges.append((new_id(pos[pv]), new_id(i)))
    roots.sort()
    last = roots[-1]
    for r in roots[:-1]:
        edges.append((new_id(last), new_id(r)))
    return TreeDecomposition(tuple(bags[::-1]), tuple(edges))


def min_fill_decomposition(g: WeightedGraph) -> TreeDecomposition:
    """Decomposition from a greedy min-fill elimination ordering (ties: smallest id)."""
    n = g.n
    if n == 0:
        return TreeDecomposition(((),), ())
    nbrs = [set(row) for row in g.adjacency]

    def fill(v):
        nl = list(nbrs[v])
        missing = 0
        for i, a in enumerate(nl):
            na = nbrs[a]
            for b in nl[i + 1:]:
                if b not in na:
                    missing += 1
        return missing

    current = [fill(v) for v in range(n)]
    heap = [(current[v], v) for v in range(n)]
    heapq.heapify(heap)
    eliminated = [False] * n
    order = []
    bags = []
    parent_vertex = []
    while heap:
        f, v = heapq.heappop(heap)
        if eliminated[v] or f != current[v]:
            continue
        eliminated[v] = True
        order.append(v)
        nb = nbrs[v]
        bags.append(tuple(sorted(nb | {v})))
        parent_vertex.append(nb)
        nl = list(nb)
        touched = set(nl)
        for i, a in enumerate(nl):
            nbrs[a].discard(v)
            for b in nl[i + 1:]:
                if b not in nbrs[a]:
                    nbrs[a].add(b)
                    nbrs[b].add(a)
                    touched |= nbrs[a] & nbrs[b]
        nbrs[v] = set()
        for u in touched:
            if not eliminated[u]:
                nf = fill(u)
                if nf != current[u]:
                    current[u] = nf
                    heapq.heappush(heap, (nf, u))
    pos = {v: i for i, v in enumerate(order)}
    parents = [min(nb, key=pos.__getitem__) if nb else -1 for nb in parent_vertex]
    return _assemble(bags, parents, pos)
