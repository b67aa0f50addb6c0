import random

import pytest

from chvd.errors import InvalidGraph, NotChordal, WeightOverflow
from chvd.graph import (
    WeightedGraph,
    complete_graph,
    connected_components,
    cycle_graph,
    find_asteroidal_triple,
    find_simplicial,
    is_chordal,
    is_interval,
    is_minimal_separator,
    mask_is_chordal,
    minimal_separators_chordal,
    path_graph,
    subdivide_all_edges,
    to_mask,
)

from helpers import has_hole_brute, is_interval_brute, minimal_separators_brute


def random_graph(rng, n, p):
    return WeightedGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_chordal(rng, n):
    """Add vertices one at a time, each adjacent to a clique of the current graph."""
    edges = []
    adj = [set() for _ in range(n)]
    for v in range(1, n):
        clique = []
        for u in rng.sample(range(v), v):
            if all(u in adj[c] for c in clique) and rng.random() < 0.6:
                clique.append(u)
        for u in clique:
            edges.append((u, v))
            adj[u].add(v)
            adj[v].add(u)
    return WeightedGraph.from_edges(n, edges)


def spider():
    # K_{1,3} with every edge subdivided once
    return WeightedGraph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(InvalidGraph):
            WeightedGraph.from_edges(2, [(0, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidGraph):
            WeightedGraph.from_edges(2, [(0, 2)])

    def test_rejects_negative_weight(self):
        with pytest.raises(InvalidGraph):
            WeightedGraph.from_edges(2, [], [1, -1])

    def test_weight_overflow(self):
        with pytest.raises(WeightOverflow):
            WeightedGraph.from_edges(2, [], [2**63, 2**63])

    def test_duplicate_edges_collapse(self):
        g = WeightedGraph.from_edges(2, [(0, 1), (1, 0)])
        assert g.m == 1

    def test_induced_and_remove(self):
        g = cycle_graph(5)
        sub, new_to_old = g.induced([0, 1, 2])
        assert sub.n == 3 and sub.m == 2 and list(new_to_old) == [0, 1, 2]
        rest, _ = g.remove([0])
        assert rest.n == 4 and rest.m == 3


class TestChordality:
    def test_c4(self):
        assert not is_chordal(cycle_graph(4))

    def test_k4(self):
        assert is_chordal(complete_graph(4))

    def test_c6(self):
        assert not is_chordal(cycle_graph(6))

    def test_empty(self):
        assert is_chordal(WeightedGraph.from_edges(0, []))

    def test_agrees_with_hole_enumeration(self):
        rng = random.Random(11)
        for _ in range(300):
            g = random_graph(rng, rng.randint(1, 9), rng.random())
            assert is_chordal(g) == (not has_hole_brute(g))
            assert mask_is_chordal(g.masks) == is_chordal(g)


class TestInterval:
    def test_path(self):
        assert is_interval(path_graph(5))

    def test_subdivided_claw(self):
        g = spider()
        assert is_chordal(g) and not is_interval(g)
        assert find_asteroidal_triple(g) is not None

    def test_c4(self):
        assert not is_interval(cycle_graph(4))

    def test_agrees_with_endpoint_search(self):
        rng = random.Random(12)
        for _ in range(300):
            g = random_graph(rng, rng.randint(1, 8), rng.random())
            assert is_interval(g) == is_interval_brute(g)


class TestSimplicial:
    def test_k3(self):
        assert find_simplicial(complete_graph(3)) == 0

    def test_c4(self):
        assert find_simplicial(cycle_graph(4)) is None

    def test_p3(self):
        assert find_simplicial(path_graph(3)) == 0

    def test_chordal_always_has_one(self):
        rng = random.Random(13)
        for _ in range(100):
            g = random_chordal(rng, rng.randint(1, 10))
            assert is_chordal(g)
            assert find_simplicial(g) is not None


class TestSeparators:
    def test_p3(self):
        (rec,) = minimal_separators_chordal(path_graph(3))
        assert rec.separator == to_mask([1])
        assert sorted(rec.full_components) == [to_mask([0]), to_mask([2])]

    def test_k4(self):
        assert minimal_separators_chordal(complete_graph(4)) == []

    def test_two_edges(self):
        (rec,) = minimal_separators_chordal(WeightedGraph.from_edges(4, [(0, 1), (2, 3)]))
        assert rec.separator == 0
        assert sorted(rec.full_components) == [0b0011, 0b1100]

    def test_not_chordal(self):
        with pytest.raises(NotChordal):
            minimal_separators_chordal(cycle_graph(4))

    def test_is_minimal_separator(self):
        assert is_minimal_separator(path_graph(3), [1])
        assert not is_minimal_separator(path_graph(3), [0])
        assert is_minimal_separator(cycle_graph(4), [0, 2])

    def test_exhaustive_against_brute_force(self):
        rng = random.Random(14)
        for _ in range(120):
            g = random_chordal(rng, rng.randint(1, 9))
            recs = minimal_separators_chordal(g)
            got = [r.separator for r in recs]
            assert got == sorted(got)
            assert set(got) == minimal_separators_brute(g)
            for r in recs:
                assert is_minimal_separator(g, r.separator)
                assert len(r.full_components) >= 2
            if len(connected_components(g)) == 1:
                assert len(recs) <= max(g.n - 1, 0)


class TestSubdivision:
    def test_triangle_becomes_c6(self):
        h = subdivide_all_edges(complete_graph(3))
        assert h.n == 6 and h.m == 6 and not is_chordal(h)
        assert all(d == 2 for d in (len(s) for s in h.neighbor_sets))

    def test_edge_becomes_p3(self):
        h = subdivide_all_edges(path_graph(2))
        assert h.n == 3 and h.m == 2 and h.has_edge(0, 2) and h.has_edge(2, 1)

    def test_c4_becomes_c8(self):
        h = subdivide_all_edges(cycle_graph(4))
        assert h.n == 8 and h.m == 8

    def test_heavy_subdivision_weights(self):
        g = WeightedGraph.from_edges(3, [(0, 1), (1, 2)], [2, 3, 4])
        h = subdivide_all_edges(g)
        assert h.weights[:3] == (2, 3, 4)
        assert set(h.weights[3:]) == {1 + 9}


class TestClosure:
    def test_vertex_deletion_and_contraction_keep_chordality(self):
        import networkx as nx

        from helpers import to_nx

        rng = random.Random(15)
        for _ in range(100):
            g = random_chordal(rng, rng.randint(2, 10))
            v = rng.randrange(g.n)
            rest, _ = g.remove([v])
            assert is_chordal(rest)
            if g.m:
                u, w = rng.choice(g.edges())
                h = nx.contracted_nodes(to_nx(g), u, w, self_loops=False)
                h = nx.convert_node_labels_to_integers(h)
                assert is_chordal(WeightedGraph.from_edges(h.number_of_nodes(), list(h.edges())))
