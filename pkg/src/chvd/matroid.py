"""Graphic matroids over GF(2) and max representative families.

Edge sets are bitsets over the ground set. Columns of the representation
are bitsets over its rows, so Gaussian elimination is xor on ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, NamedTuple, Sequence

import numpy as np

from .errors import DependentInput
from .graph import bits


class FamilyEntry(NamedTuple):
    edges: int
    weight: int
    payload: Any = None


@dataclass
class GraphicMatroid:
    """Graphic matroid of a graph given by ``n_vertices`` and its edge list.

    Rows are the vertices minus the largest vertex of every connected
    component, so the rank equals the number of rows.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    columns: tuple[int, ...] = field(init=False)
    rank: int = field(init=False)
    _wedge: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        parent = list(range(self.n_vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for p, q in self.edges:
            rp, rq = find(p), find(q)
            if rp != rq:
                parent[rp] = rq
        top = {}
        for v in range(self.n_vertices):
            top[find(v)] = v  # ascending loop, so this ends at the max id
        dropped = set(top.values())
        row_of = {}
        for v in range(self.n_vertices):
            if v not in dropped:
                row_of[v] = len(row_of)
        cols = []
        for p, q in self.edges:
            c = 0
            if p in row_of:
                c |= 1 << row_of[p]
            if q in row_of:
                c |= 1 << row_of[q]
            cols.append(c)
        self.columns = tuple(cols)
        self.rank = len(row_of)

    @property
    def size(self) -> int:
        return len(self.edges)

    def matrix(self) -> list[list[int]]:
        """Dense 0/1 matrix, rows by columns."""
        return [[(c >> r) & 1 for c in self.columns] for r in range(self.rank)]

    def wedge(self, s: int) -> int:
        """Bitset of the p x p minors of the columns in ``s`` (p = |s|), one bit per row p-subset."""
        hit = self._wedge.get(s)
        if hit is not None:
            return hit
        cols = [self.columns[e] for e in bits(s)]
        p = len(cols)
        out = 0
        for i, rows in enumerate(combinations(range(self.rank), p)):
            if _det_gf2([_restrict(c, rows) for c in cols]):
                out |= 1 << i
        self._wedge[s] = out
        return out


def _restrict(col: int, rows: Sequence[int]) -> int:
    out = 0
    for i, r in enumerate(rows):
        if (col >> r) & 1:
            out |= 1 << i
    return out


def _det_gf2(vectors: list[int]) -> bool:
    return gf2_rank(vectors) == len(vectors)


def gf2_rank(vectors: Sequence[int]) -> int:
    basis = {}
    for v in vectors:
        while v:
            h = v.bit_length() - 1
            if h in basis:
                v ^= basis[h]
            else:
                basis[h] = v
                break
    return len(basis)


def build_graphic_matroid(idx) -> GraphicMatroid:
    """Graphic matroid of Base(B) for a boundary index."""
    return GraphicMatroid(idx.n_base, tuple(idx.base_edges))


def is_independent(m: GraphicMatroid, s: int) -> bool:
    return gf2_rank([m.columns[e] for e in bits(s)]) == s.bit_count()


def is_acyclic(m: GraphicMatroid, s: int) -> bool:
    parent = list(range(m.n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in bits(s):
        p, q = m.edges[e]
        rp, rq = find(p), find(q)
        if rp == rq:
            return False
        parent[rp] = rq
    return True


def max_representative(m: GraphicMatroid, fam: Sequence) -> list[FamilyEntry]:
    """Max rank-representative subfamily with at most 2^rank members.

    Entries are ``(edges, weight, payload)``. Per set size p, each set maps to
    the vector of its p x p minors; a row basis is picked greedily by weight
    (heavier first, then smaller edge bitset, then input position). Output
    keeps the input order.
    """
    best: dict[int, tuple] = {}
    for pos, entry in enumerate(fam):
        e = FamilyEntry(*entry)
        if e.edges.bit_count() > m.rank or not is_independent(m, e.edges):
            raise DependentInput(f"edge set {e.edges:#x} is not independent")
        key = (-e.weight, e.edges, pos)
        cur = best.get(e.edges)
        if cur is None or key < cur[0]:
            best[e.edges] = (key, e)
    by_size: dict[int, list] = {}
    for key, e in best.values():
        by_size.setdefault(e.edges.bit_count(), []).append((key, e))
    kept = []
    for p, group in by_size.items():
        group.sort(key=lambda item: item[0])
        if p == 0:
            kept.append(group[0])
            continue
        basis = {}
        limit = comb(m.rank, p)
        count = 0
        for key, e in group:
            v = m.wedge(e.edges)
            while v:
                h = v.bit_length() - 1
                if h in basis:
                    v ^= basis[h]
                else:
                    basis[h] = v
                    break
            if v:
                kept.append((key, e))
                count += 1
                if count == limit:
                    break
    kept.sort(key=lambda item: item[0][2])
    return [e for _, e in kept]


def independent_sets(m: GraphicMatroid) -> list[int]:
    """All independent edge sets, by extension of smaller ones (small matroids only)."""
    out = [0]
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            top = s.bit_length()
            for e in range(top, m.size):
                t = s | (1 << e)
                if is_acyclic(m, t):
                    nxt.append(t)
        out.extend(nxt)
        frontier = nxt
    return out


def representative_oracle_check(m: GraphicMatroid, fam: Sequence, sub: Sequence,
                                independent: Sequence[int] | None = None) -> bool:
    """Exhaustive check that ``sub`` max-represents ``fam`` against every independent Y."""
    if independent is None:
        independent = independent_sets(m)
    ind = np.array(sorted(independent), dtype=np.int64)

    def best(family):
        out = np.full(len(ind), -1, dtype=np.int64)
        for entry in family:
            e = FamilyEntry(*entry)
            union = ind | e.edges
            pos = np.searchsorted(ind, union)
            pos[pos >= len(ind)] = 0
            ok = ((ind & e.edges) == 0) & (ind[pos] == union)
            out = np.where(ok & (e.weight > out), e.weight, out)
        return out

    return bool(np.all(best(sub) >= best(fam)))
