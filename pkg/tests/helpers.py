"""Small independent reference implementations used across the tests."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import networkx as nx

from chvd.graph import WeightedGraph


def to_nx(g: WeightedGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def has_hole_brute(g: WeightedGraph) -> bool:
    """Any induced cycle of length >= 4, by scanning vertex subsets."""
    adj = g.neighbor_sets
    for size in range(4, g.n + 1):
        for sub in combinations(range(g.n), size):
            s = set(sub)
            if all(len(adj[v] & s) == 2 for v in sub):
                h = nx.Graph((u, v) for u in sub for v in adj[u] & s)
                if nx.is_connected(h):
                    return True
    return False


def is_interval_brute(g: WeightedGraph) -> bool:
    """Search over sweeps of the 2n interval endpoints.

    A start event for v needs v adjacent to every open interval; an end event
    needs every neighbour of v to have started.
    """
    adj = g.neighbor_sets
    everyone = frozenset(range(g.n))

    @lru_cache(maxsize=None)
    def go(open_set: frozenset, done: frozenset) -> bool:
        if done == everyone:
            return True
        started = open_set | done
        for v in everyone - started:
            if open_set <= adj[v] and go(open_set | {v}, done):
                return True
        for v in open_set:
            if adj[v] <= started and go(open_set - {v}, done | {v}):
                return True
        return False

    return go(frozenset(), frozenset())


def minimal_separators_brute(g: WeightedGraph) -> set[int]:
    out = set()
    h = to_nx(g)
    for size in range(g.n + 1):
        for sub in combinations(range(g.n), size):
            rest = h.subgraph(set(range(g.n)) - set(sub))
            full = 0
            for comp in nx.connected_components(rest):
                nb = set().union(*(h[v] for v in comp)) - comp
                full += nb == set(sub)
            if full >= 2:
                out.add(sum(1 << v for v in sub))
    return out


def interval_by_permutations(g: WeightedGraph) -> bool:
    """Interval iff some vertex order makes every maximal-clique set consecutive (n <= 7)."""
    cliques = [set(c) for c in nx.find_cliques(to_nx(g))] if g.n else []
    for order in permutations(range(len(cliques))):
        if all(_consecutive([v in cliques[i] for i in order]) for v in range(g.n)):
            return True
    return not cliques


def _consecutive(flags) -> bool:
    s = "".join("1" if f else "0" for f in flags).strip("0")
    return "0" not in s
