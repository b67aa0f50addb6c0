"""Exact brute-force references and seeded instance generation.

The random generator is xoshiro256** seeded through splitmix64 so instances
can be regenerated bit for bit elsewhere:

* state: four 64-bit words s0..s3 = four consecutive splitmix64 outputs of the seed
* output: rotl(s1 * 5, 7) * 9, then the standard xoshiro256 state update
* G(n, p): pairs (u, v), u < v, in lexicographic order; edge iff (next() >> 11) * 2^-53 < p
* weights: afterwards, for v = 0..n-1, lo + next() % (hi - lo + 1)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import TooLarge
from .graph import (
    WeightedGraph,
    asteroidal_triple_witness,
    bits,
    mask_components,
    mask_find_asteroidal_triple,
    mask_find_hole,
    mask_is_chordal,
    to_mask,
)

MASK64 = (1 << 64) - 1
MAX_BRUTE_N = 22


def splitmix64(x: int) -> tuple[int, int]:
    """One splitmix64 step; returns (new state, output)."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return x, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** 1.0."""

    def __init__(self, seed: int):
        x = seed & MASK64
        s = []
        for _ in range(4):
            x, out = splitmix64(x)
            s.append(out)
        self.s = s

    def next(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def random(self) -> float:
        return (self.next() >> 11) * (1.0 / (1 << 53))

    def below(self, k: int) -> int:
        return self.next() % k

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


@dataclass(frozen=True)
class RandomSpec:
    n: int
    p: float
    weight_range: tuple[int, int] = (1, 1)
    seed: int = 0


def random_instance(spec: RandomSpec) -> WeightedGraph:
    rng = Xoshiro256(spec.seed)
    edges = [(u, v) for u in range(spec.n) for v in range(u + 1, spec.n) if rng.random() < spec.p]
    lo, hi = spec.weight_range
    weights = [lo + rng.next() % (hi - lo + 1) for _ in range(spec.n)]
    return WeightedGraph.from_edges(spec.n, edges, weights)


def _check_size(g: WeightedGraph, cap: int = MAX_BRUTE_N):
    if g.n > cap:
        raise TooLarge(f"brute force is limited to {cap} vertices, got {g.n}")


# ---------------------------------------------------------------------------
# chordal deletion


def brute_force_chvd(g: WeightedGraph) -> tuple[int, list[int]]:
    """Minimum weight chordal deletion set by branching on shortest holes.

    Among optimal sets the one with the smallest bitset is returned.
    """
    _check_size(g)
    adj = g.masks
    w = g.weights
    full = g.all_mask
    best = [sum(w) + 1, full + 1]
    seen = set()

    def go(deleted: int, cost: int):
        if cost > best[0] or (cost == best[0] and deleted >= best[1]) or deleted in seen:
            return
        seen.add(deleted)
        hole = mask_find_hole(adj, full & ~deleted)
        if hole is None:
            best[0], best[1] = cost, deleted
            return
        for v in sorted(hole):
            go(deleted | (1 << v), cost + w[v])

    go(0, 0)
    return best[0], sorted(bits(best[1]))


def brute_force_chvd_scan(g: WeightedGraph) -> tuple[int, list[int]]:
    """Same answer as :func:`brute_force_chvd` from a full subset scan (n <= 10)."""
    _check_size(g, 10)
    best = None
    for deleted in range(1 << g.n):
        if mask_is_chordal(g.masks, g.all_mask & ~deleted):
            c = sum(g.weights[v] for v in bits(deleted))
            if best is None or c < best[0]:
                best = (c, deleted)
    return best[0], sorted(bits(best[1]))


# ---------------------------------------------------------------------------
# feedback vertex set


def _find_cycle(adj, alive: int) -> list[int] | None:
    """A short cycle of G[alive] after stripping vertices of degree <= 1."""
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if (adj[v] & alive).bit_count() <= 1:
                alive &= ~(1 << v)
                changed = True
    if not alive:
        return None
    best = None
    for root in bits(alive):
        parent = {root: -1}
        depth = {root: 0}
        queue = [root]
        found = None
        for u in queue:
            for x in bits(adj[u] & alive):
                if x not in parent:
                    parent[x] = u
                    depth[x] = depth[u] + 1
                    queue.append(x)
                elif x != parent[u] and found is None:
                    found = (u, x)
            if found:
                break
        if found is None:
            continue
        u, x = found
        pu, px = [u], [x]
        while pu[-1] != root:
            pu.append(parent[pu[-1]])
        while px[-1] != root:
            px.append(parent[px[-1]])
        common = set(pu) & set(px)
        pu = [y for y in pu if y not in common]
        px = [y for y in px if y not in common]
        meet = max(common, key=depth.__getitem__)
        cycle = pu + [meet] + px[::-1]
        if best is None or len(cycle) < len(best):
            best = cycle
    return best


def brute_force_fvs(g: WeightedGraph) -> int:
    """Minimum feedback vertex set size by branching on short cycles."""
    _check_size(g)
    adj = g.masks
    best = [g.n]
    seen = set()

    def go(deleted: int, size: int):
        if size >= best[0] or deleted in seen:
            return
        seen.add(deleted)
        cyc = _find_cycle(adj, g.all_mask & ~deleted)
        if cyc is None:
            best[0] = size
            return
        for v in cyc:
            go(deleted | (1 << v), size + 1)

    go(0, 0)
    return best[0]


# ---------------------------------------------------------------------------
# interval deletion


def _relabel(adj, comp: int) -> tuple[list[int], list[int]]:
    members = list(bits(comp))
    index = {v: i for i, v in enumerate(members)}
    sub = [to_mask(index[u] for u in bits(adj[v] & comp)) for v in members]
    return sub, members


def interval_obstruction(adj, alive: int) -> int | None:
    """Vertex set inducing a non-interval subgraph of G[alive], or None if it is interval."""
    hole = mask_find_hole(adj, alive)
    if hole is not None:
        return to_mask(hole)
    for comp in mask_components(adj, alive):
        if comp.bit_count() < 6:
            continue  # asteroidal triples need at least six vertices in a chordal graph
        sub, members = _relabel(adj, comp)
        at = mask_find_asteroidal_triple(sub)
        if at is not None:
            return to_mask(members[i] for i in bits(asteroidal_triple_witness(sub, at)))
    return None


def brute_force_interval_deletion(g: WeightedGraph, cap: int = MAX_BRUTE_N) -> int:
    """Minimum size of a vertex set whose removal leaves an interval graph (unit weights)."""
    _check_size(g, cap)
    adj = g.masks
    best = [g.n]
    seen = set()

    def go(deleted: int, size: int):
        if size >= best[0] or deleted in seen:
            return
        seen.add(deleted)
        obs = interval_obstruction(adj, g.all_mask & ~deleted)
        if obs is None:
            best[0] = size
            return
        for v in bits(obs):
            go(deleted | (1 << v), size + 1)

    go(0, 0)
    return best[0]


def interval_deletion_scan(g: WeightedGraph, max_size: int) -> list[int]:
    """All vertex sets of size <= max_size whose removal leaves an interval graph (bitsets)."""
    _check_size(g)
    out = []
    for k in range(max_size + 1):
        for combo in combinations(range(g.n), k):
            d = to_mask(combo)
            if interval_obstruction(g.masks, g.all_mask & ~d) is None:
                out.append(d)
    return out


# ---------------------------------------------------------------------------
# chained instances with a known decomposition


def chained_instance(n: int, width: int, p: float = 0.6, seed: int = 0,
                     weight_range: tuple[int, int] = (1, 9)) -> WeightedGraph:
    """Chain of overlapping windows: edges only join vertices at distance <= ``width``.

    Consecutive windows {i, ..., i + width} form a path decomposition of width
    ``width`` (see :func:`chain_decomposition`).
    """
    rng = Xoshiro256(seed)
    edges = []
    for u in range(n):
        for d in range(1, width + 1):
            v = u + d
            if v < n and rng.random() < p:
                edges.append((u, v))
    lo, hi = weight_range
    weights = [lo + rng.next() % (hi - lo + 1) for _ in range(n)]
    return WeightedGraph.from_edges(n, edges, weights)


def chain_decomposition(n: int, width: int):
    from .treedecomp import TreeDecomposition

    if n <= width + 1:
        return TreeDecomposition((tuple(range(n)),), ())
    bags = [tuple(range(i, i + width + 1)) for i in range(n - width)]
    edges = [(i, i + 1) for i in range(len(bags) - 1)]
    return TreeDecomposition(tuple(bags), tuple(edges))


# ---------------------------------------------------------------------------
# random boundaried graphs


def random_boundaried_side(rng: Xoshiro256, badj, boundary: int, extra: int, p: float,
                           tries: int = 1000):
    """Random chordal graph extending the boundary graph by ``extra`` vertices.

    Extra vertices get ids just above the boundary range.
    """
    from .boundary import BoundariedGraph

    base = max(boundary.bit_length(), len(badj))
    n = base + extra
    for _ in range(tries):
        adj = [badj[v] & boundary if (boundary >> v) & 1 else 0 for v in range(base)] + [0] * extra
        for u in range(base, n):
            for v in list(bits(boundary)) + list(range(base, u)):
                if rng.random() < p:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
        vertices = boundary | (((1 << extra) - 1) << base)
        if mask_is_chordal(adj, vertices):
            return BoundariedGraph(tuple(adj), vertices, boundary)
    raise RuntimeError("no chordal side found")


def random_chordal_boundary(rng: Xoshiro256, k: int, p: float, tries: int = 1000) -> tuple[int, ...]:
    for _ in range(tries):
        adj = [0] * k
        for u in range(k):
            for v in range(u + 1, k):
                if rng.random() < p:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
        if mask_is_chordal(adj, (1 << k) - 1):
            return tuple(adj)
    raise RuntimeError("no chordal boundary found")


def random_chordal_graph(rng: Xoshiro256, n: int, density: float) -> tuple[int, ...]:
    """Adjacency masks of a random chordal graph.

    Vertices arrive in order; each attaches to a clique grown greedily from a
    shuffled list of earlier vertices, taking each candidate with probability
    ``density``.  Every chordal graph on n labelled vertices has positive
    probability.
    """
    adj = [0] * n
    for v in range(1, n):
        order = list(range(v))
        rng.shuffle(order)
        clique = 0
        for u in order:
            if adj[u] & clique == clique and rng.random() < density:
                clique |= 1 << u
        adj[v] = clique
        for u in bits(clique):
            adj[u] |= 1 << v
    return tuple(adj)


def random_chordal_side(rng: Xoshiro256, k: int, extra: int, density: float):
    """Random chordal boundaried graph with boundary ids 0..k-1 and extras k..k+extra-1."""
    from .boundary import BoundariedGraph

    n = k + extra
    adj = random_chordal_graph(rng, n, density)
    perm = list(range(n))
    rng.shuffle(perm)  # perm[i] = new id of old vertex i; the first k new ids form the boundary
    new = [0] * n
    for old in range(n):
        new[perm[old]] = to_mask(perm[u] for u in bits(adj[old]))
    return BoundariedGraph(tuple(new), (1 << n) - 1, (1 << k) - 1)
