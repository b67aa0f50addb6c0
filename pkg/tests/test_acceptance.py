"""Acceptance suite: one PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are repeated
in the terminal summary.
"""

import random
import time
from itertools import combinations, product

import numpy as np
import pytest

from chvd.boundary import base_index, chordal_by_aux, glue, glue_is_chordal_via_signatures
from chvd.errors import InvariantViolation
from chvd.gadgets import (
    attach_sets,
    canonical_choice_solution,
    choice_gadget,
    forward_solution,
    lower_bound_audit,
    random_permutation_clique,
    realize_chain,
    reduce_permutation_clique,
)
from chvd.graph import is_interval, mask_is_chordal, subdivide_all_edges
from chvd.matroid import (
    FamilyEntry,
    GraphicMatroid,
    build_graphic_matroid,
    independent_sets,
    max_representative,
    representative_oracle_check,
)
from chvd.oracle import (
    RandomSpec,
    Xoshiro256,
    brute_force_chvd,
    brute_force_fvs,
    chain_decomposition,
    chained_instance,
    random_chordal_graph,
    random_chordal_side,
    random_instance,
)
from chvd.solver import SolveStats, solve
from chvd.treedecomp import elimination_decomposition, make_nice, min_fill_decomposition

from pairs_kernel import EXTRA, boundary_cases, enumerate_sides, flatten_tables, side_data
from pairs_scan import scan_pairs, verdicts


# ---------------------------------------------------------------------------
# criteria 1 and 5 share the same runs


@pytest.fixture(scope="module")
def oracle_runs():
    densities = (0.2, 0.4, 0.6)
    runs = []
    start = time.perf_counter()
    for i in range(504):
        n = 4 + i % 9
        p = densities[(i // 9) % 3]
        g = random_instance(RandomSpec(n, p, (1, 9), 10_000 + i))
        if i % 2 == 0:
            td = min_fill_decomposition(g)
        else:
            rng = random.Random(i)
            order = list(range(n))
            rng.shuffle(order)
            td = elimination_decomposition(g, order)
        stats = SolveStats()
        try:
            got = solve(g, make_nice(td), stats).deletion_weight
            violation = None
        except InvariantViolation as exc:
            got, violation = None, str(exc)
        want, _ = brute_force_chvd(g)
        runs.append((n, p, got, want, stats, violation))
    return runs, time.perf_counter() - start


def test_criterion_01_oracle_equivalence(criterion, oracle_runs):
    runs, elapsed = oracle_runs
    mismatches = sum(got != want for _, _, got, want, _, _ in runs)
    ok = len(runs) >= 500 and mismatches == 0 and elapsed < 300
    criterion(1, "solve equals brute force", ok,
              f"{len(runs)} graphs n<=12 p in .2/.4/.6 w 1-9, {mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_05_condense_bounds(criterion, oracle_runs):
    runs, _ = oracle_runs
    violations = [v for *_, v in runs if v is not None]
    checked = sum(s.entries_checked for *_, s, _ in runs)
    slack = max(s.max_entry_vertices_slack for *_, s, _ in runs)
    ok = not violations and checked > 0 and slack <= 0
    criterion(5, "condensed size and family size invariants", ok,
              f"{checked} entries checked inline, max |V|-(2|X|-1) = {slack}, {len(violations)} violations")


# ---------------------------------------------------------------------------
# criterion 2


def test_criterion_02_gluing_criteria(criterion):
    start = time.perf_counter()
    total = np.zeros(4, dtype=np.int64)
    spot_bad = spot = 0
    rng = Xoshiro256(2)
    for k, badj in boundary_cases(3):
        adj, alive = enumerate_sides(badj)
        signs, acyc, ids, tables = side_data(badj, adj, alive)
        sizes, flat = flatten_tables(tables)
        total += scan_pairs(k, EXTRA, adj, alive, signs, acyc, ids, flat, sizes)
        # the compiled verdicts agree with the library on sampled pairs
        g = np.zeros(k + 2 * EXTRA, dtype=np.int64)
        for _ in range(300):
            i, j = rng.below(len(adj)), rng.below(len(adj))
            got = verdicts(k, EXTRA, adj, alive, signs, acyc, ids, flat, sizes, i, j, g)
            a = _side(adj[i], alive[i], k)
            b = _side(adj[j], alive[j], k)
            glued = glue(a, b)
            want = (mask_is_chordal(glued.adj, glued.vertices),
                    glue_is_chordal_via_signatures(a, b)[0], chordal_by_aux(glued))
            spot += 1
            spot_bad += tuple(bool(x) for x in got) != want
    pairs, chordal, sign_bad, aux_bad = (int(x) for x in total)

    # random larger pairs: sides with 5-7 extras, grouped by labelled boundary graph
    buckets: dict = {}
    for _ in range(30_000):
        k = 3 + rng.below(3)
        side = random_chordal_side(rng, k, 5 + rng.below(3), 0.2 + 0.6 * rng.random())
        buckets.setdefault((k, side.boundary_graph()), []).append(side)
    keys = sorted(key for key, sides in buckets.items() if len(sides) >= 2)
    rand_bad = rand_chordal = 0
    for _ in range(10_000):
        sides = buckets[keys[rng.below(len(keys))]]
        a, b = sides[rng.below(len(sides))], sides[rng.below(len(sides))]
        glued = glue(a, b)
        direct = mask_is_chordal(glued.adj, glued.vertices)
        rand_chordal += direct
        rand_bad += not (glue_is_chordal_via_signatures(a, b)[0] == direct == chordal_by_aux(glued))
    elapsed = time.perf_counter() - start
    ok = sign_bad == aux_bad == spot_bad == rand_bad == 0
    criterion(2, "signature verdict = aux verdict = direct chordality", ok,
              f"exhaustive |X|<=3, <=4 extras: {pairs} unordered pairs ({chordal} chordal), "
              f"{sign_bad}+{aux_bad} mismatches; kernel spot check {spot_bad}/{spot}; "
              f"random 5-7 extras: 10000 pairs ({rand_chordal} chordal), {rand_bad} mismatches; {elapsed:.0f}s")


def _side(row, alive, k):
    from chvd.boundary import BoundariedGraph

    return BoundariedGraph(tuple(int(v) for v in row), int(alive), (1 << k) - 1)


# ---------------------------------------------------------------------------
# criterion 3


def _forest_size(idx) -> int:
    parent = list(range(idx.n_base))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    size = 0
    for p, q in idx.base_edges:
        rp, rq = find(p), find(q)
        if rp != rq:
            parent[rp] = rq
            size += 1
    return size


def test_criterion_03_rank_bound(criterion):
    start = time.perf_counter()
    checked = violations = disagreements = 0
    worst = -10

    def check(adj, n):
        nonlocal checked, violations, disagreements, worst
        idx = base_index(adj, (1 << n) - 1)
        rank = build_graphic_matroid(idx).rank
        disagreements += rank != _forest_size(idx)
        violations += rank > n - 1
        worst = max(worst, rank - (n - 1))
        checked += 1

    exhaustive = 0
    for n in range(1, 7):
        pairs = list(combinations(range(n), 2))
        for m in range(1 << len(pairs)):
            adj = [0] * n
            for i, (u, v) in enumerate(pairs):
                if m >> i & 1:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
            if mask_is_chordal(adj):
                check(adj, n)
                exhaustive += 1
    rng = Xoshiro256(3)
    for _ in range(100_000):
        n = 1 + rng.below(10)
        check(random_chordal_graph(rng, n, rng.random()), n)
    elapsed = time.perf_counter() - start
    ok = violations == 0 and disagreements == 0
    criterion(3, "rank of the Base matroid <= |V(B)| - 1", ok,
              f"{exhaustive} labelled chordal graphs n<=6 exhaustively + 100000 random n<=10; "
              f"{violations} violations, max rank-(n-1) = {worst}, {elapsed:.0f}s")


# ---------------------------------------------------------------------------
# criterion 4


def test_criterion_04_representative_families(criterion):
    rng = random.Random(4)
    matroids = []
    while len(matroids) < 50:
        n = rng.randint(2, 7)
        if rng.random() < 0.3:
            # disjoint cliques, the shape of Base graphs
            edges, start = [], 0
            while start < n:
                size = rng.randint(1, n - start)
                edges += list(combinations(range(start, start + size), 2))
                start += size
            m = GraphicMatroid(n, tuple(edges))
        else:
            dens = rng.uniform(0.3, 1.0)
            m = GraphicMatroid(n, tuple(e for e in combinations(range(n), 2) if rng.random() < dens))
        if m.size and m.rank <= 6:
            matroids.append((m, independent_sets(m)))
    failures = oversize = 0
    max_rank = 0
    trials = 0
    for m, ind in matroids:
        max_rank = max(max_rank, m.rank)
        for _ in range(20):
            fam = [FamilyEntry(rng.choice(ind), rng.randint(0, 30), i) for i in range(rng.randint(1, 60))]
            out = max_representative(m, fam)
            trials += 1
            oversize += len(out) > 2 ** m.rank
            failures += not representative_oracle_check(m, fam, out, ind)
    ok = trials >= 1000 and failures == 0 and oversize == 0
    criterion(4, "max_representative passes the exhaustive oracle", ok,
              f"{trials} families over {len(matroids)} graphic matroids, max rank {max_rank}; "
              f"{failures} oracle failures, {oversize} over 2^rank")


# ---------------------------------------------------------------------------
# criterion 6


def test_criterion_06_fvs_reduction(criterion):
    mismatches = 0
    for i in range(100):
        n = 5 + i % 6
        g = random_instance(RandomSpec(n, (0.3, 0.45, 0.6)[(i // 6) % 3], (1, 1), 60_000 + i))
        if solve(subdivide_all_edges(g)).deletion_weight != brute_force_fvs(g):
            mismatches += 1
    criterion(6, "chordal deletion of the subdivision = minimum FVS", mismatches == 0,
              f"100 graphs n 5-10, {mismatches} mismatches")


# ---------------------------------------------------------------------------
# criterion 7


def test_criterion_07_choice_gadget_optimum(criterion):
    start = time.perf_counter()
    problems = []
    for s in (1, 2, 3):
        g, _ = choice_gadget(s)
        for i in range(1, s + 1):
            sol = canonical_choice_solution(s, i)
            rest, _ = g.remove(sol)
            if len(sol) != 10 * s or not is_interval(rest):
                problems.append(f"s={s} i={i}")
        audit = lower_bound_audit(s)
        if not audit.ok or audit.bound < 10 * s:
            problems.append(f"audit s={s}: {audit.message}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 60
    criterion(7, "choice gadget optimum is 10 s", ok,
              f"s=1..3: canonical sets verified, obstruction bound 10/20/30; "
              f"{len(problems)} problems, {elapsed:.1f}s")


# ---------------------------------------------------------------------------
# criterion 8


def test_criterion_08_permutation_gadget(criterion):
    cases = mismatches = 0
    for k in (1, 2, 3):
        subsets = [frozenset(c) for r in range(k + 1) for c in combinations(range(1, k + 1), r)]
        for ell in range(4):
            for sets in product(subsets, repeat=ell):
                pi = realize_chain(sets, k)
                interval = is_interval(attach_sets(k, sets))
                realized = pi is not None and all(set(pi[: len(s)]) == s for s in sets)
                mismatches += interval != realized or (pi is None) == realized
                cases += 1
    criterion(8, "Y_k plus sets is interval iff the sets form a chain", mismatches == 0,
              f"exhaustive k<=3, l<=3: {cases} families, {mismatches} mismatches")


# ---------------------------------------------------------------------------
# criterion 9


def test_criterion_09_reduction_forward(criterion):
    checked = bad = 0
    sizes = []
    for k in (2, 3):
        for seed in range(20):
            inst, pi = random_permutation_clique(k, 900 + seed)
            red = reduce_permutation_clique(inst)
            sol = forward_solution(inst, pi, red)
            checked += 1
            if not isinstance(sol, list) or len(sol) != red.budget or red.budget != 10 * sum(red.orders.values()):
                bad += 1
                continue
            rest, _ = red.graph.remove(sol)
            bad += not is_interval(rest)
            sizes.append(red.graph.n)
    criterion(9, "forward solution has size p and leaves an interval graph", bad == 0,
              f"k=2,3 x 20 planted instances, |V(H)| {min(sizes)}-{max(sizes)}; {bad} failures")


# ---------------------------------------------------------------------------
# criterion 10


def test_criterion_10_scaling(criterion):
    width = 3

    def timed(n, repeats):
        g = chained_instance(n, width, seed=n)
        nd = make_nice(chain_decomposition(n, width))
        best = None
        for _ in range(repeats):
            t = time.perf_counter()
            solve(g, nd)
            dt = time.perf_counter() - t
            best = dt if best is None else min(best, dt)
        return best

    timed(1000, 1)  # warm the transition caches
    ns = [1_000, 10_000, 100_000]
    times = [timed(1_000, 5), timed(10_000, 3), timed(100_000, 1)]
    slope = float(np.polyfit(np.log10(ns), np.log10(times), 1)[0])
    ok = 0.8 <= slope <= 1.2 and max(times) < 60
    criterion(10, "runtime linear in n at fixed width", ok,
              f"width {width}: " + ", ".join(f"n={n}: {t:.2f}s" for n, t in zip(ns, times))
              + f"; log-log slope {slope:.2f}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
