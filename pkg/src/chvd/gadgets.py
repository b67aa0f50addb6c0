"""Interval Vertex Deletion hardness gadgets and the reduction from k x k Permutation Clique.

Indices follow the construction: permutation values, block indices and
grid coordinates are 1-based, vertex ids are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Sequence

from .errors import InstanceTooLarge
from .graph import WeightedGraph, bits, is_interval, to_mask

DEFAULT_K_CAP = 6

# vertices of one copy of P: path u1..u9, two subdivided edges hanging at u2
# (u2-s1-t1, u2-s2-t2), one at u7 (u7-s3-t3), plus the chord u4u8
P_NAMES = tuple(f"u{i}" for i in range(1, 10)) + ("s1", "t1", "s2", "t2", "s3", "t3")
P_EDGES = tuple((f"u{i}", f"u{i + 1}") for i in range(1, 9)) + (
    ("u2", "s1"), ("s1", "t1"), ("u2", "s2"), ("s2", "t2"),
    ("u7", "s3"), ("s3", "t3"), ("u4", "u8"),
)
# two vertex-disjoint non-interval pieces of P (each is a spider with three legs of length two)
P_OBSTRUCTIONS = (
    ("u2", "u3", "u4", "s1", "t1", "s2", "t2"),
    ("u5", "u6", "u7", "u8", "u9", "s3", "t3"),
)


class GadgetLabels(dict):
    """Vertex name -> vertex id, one name per vertex."""

    def ids(self, names) -> list[int]:
        return [self[n] for n in names]

    def g(self, alpha: int, i: int, prefix: str = "") -> int:
        return self[f"{prefix}P{alpha}_{i}:u9"]

    def h(self, alpha: int, i: int, prefix: str = "") -> int:
        return self[f"{prefix}P{alpha}_{i}:u8"]

    def sidecar_lines(self) -> list[str]:
        """``label <name> <vertex>`` lines with 1-based vertex ids, plus g/h aliases."""
        out = [f"label {name} {v + 1}" for name, v in sorted(self.items(), key=lambda kv: kv[1])]
        for name, v in sorted(self.items(), key=lambda kv: kv[1]):
            head, _, tail = name.rpartition("P")
            if tail.endswith(":u9") or tail.endswith(":u8"):
                letter = "g" if tail.endswith("u9") else "h"
                out.append(f"label {head}{letter}{tail[:-3]} {v + 1}")
        return out


class _Builder:
    def __init__(self):
        self.labels = GadgetLabels()
        self.edges: list[tuple[int, int]] = []

    def vertex(self, name: str) -> int:
        if name in self.labels:
            raise ValueError(f"duplicate vertex name {name}")
        self.labels[name] = len(self.labels)
        return self.labels[name]

    def edge(self, a: str, b: str):
        self.edges.append((self.labels[a], self.labels[b]))

    def double_subdivided(self, a: str, b: str, prefix: str = ""):
        """Two parallel paths a-m-b with fresh middle vertices."""
        for tag in ("a", "b"):
            m = self.vertex(f"{prefix}<{a[len(prefix):]},{b[len(prefix):]}>{tag}")
            self.edges.append((self.labels[a], m))
            self.edges.append((m, self.labels[b]))

    def graph(self) -> WeightedGraph:
        return WeightedGraph.from_edges(len(self.labels), self.edges)


# ---------------------------------------------------------------------------
# permutation gadget


def permutation_gadget(k: int) -> tuple[WeightedGraph, GadgetLabels]:
    """Clique on y1..y_{k+1} with a pendant y_{k+2} on y_{k+1}."""
    if k < 1:
        raise ValueError("k must be at least 1")
    b = _Builder()
    for i in range(1, k + 3):
        b.vertex(f"y{i}")
    for i, j in combinations(range(1, k + 2), 2):
        b.edge(f"y{i}", f"y{j}")
    b.edge(f"y{k + 1}", f"y{k + 2}")
    return b.graph(), b.labels


def attach_sets(k: int, sets: Sequence) -> WeightedGraph:
    """Y_k plus an independent vertex x_i adjacent to {y_j : j in N_i} per given set."""
    g, labels = permutation_gadget(k)
    edges = g.edges()
    n = g.n
    for i, s in enumerate(sets):
        for j in s:
            if not 1 <= j <= k:
                raise ValueError(f"set element {j} outside [1, {k}]")
            edges.append((labels[f"y{j}"], n + i))
    return WeightedGraph.from_edges(n + len(sets), edges)


def realize_chain(sets: Sequence, k: int | None = None) -> tuple[int, ...] | None:
    """Permutation pi with N_i = pi([|N_i|]) for every set, or None if the sets are not a chain.

    Elements are appended set by set in order of size (new ones ascending),
    then the unused ones ascending.
    """
    fam = sorted({frozenset(s) for s in sets}, key=len)
    for a, b in zip(fam, fam[1:]):
        if not a <= b:
            return None
    if k is None:
        k = max((max(s) for s in fam if s), default=0)
    pi: list[int] = []
    for s in fam:
        pi.extend(sorted(s - set(pi)))
    pi.extend(x for x in range(1, k + 1) if x not in pi)
    return tuple(pi)


# ---------------------------------------------------------------------------
# choice gadget


def _add_p_copy(b: _Builder, prefix: str):
    for name in P_NAMES:
        b.vertex(prefix + name)
    for x, y in P_EDGES:
        b.edge(prefix + x, prefix + y)


def _build_choice(b: _Builder, s: int, prefix: str = ""):
    if s < 1:
        raise ValueError("order must be at least 1")
    b.vertex(prefix + "v_left")
    for i in range(1, s + 1):
        for r in (1, 2, 3):
            b.vertex(f"{prefix}v{r}_{i}")
    b.vertex(prefix + "v_right")
    v = lambda r, i: f"{prefix}v{r}_{i}"  # noqa: E731
    b.double_subdivided(prefix + "v_left", v(1, 1), prefix)
    for i in range(1, s + 1):
        b.double_subdivided(v(1, i), v(2, i), prefix)
        b.double_subdivided(v(2, i), v(3, i), prefix)
        b.double_subdivided(v(3, i), v(1, i), prefix)
        if i < s:
            b.double_subdivided(v(3, i), v(1, i + 1), prefix)
    b.double_subdivided(v(3, s), prefix + "v_right", prefix)
    for i in range(1, s + 1):
        for alpha in range(1, 5):
            pp = f"{prefix}P{alpha}_{i}:"
            _add_p_copy(b, pp)
            b.edge(v(2, i), pp + "u1")


def choice_gadget(s: int) -> tuple[WeightedGraph, GadgetLabels]:
    """Choice gadget H_s of order s; it has 71 s + 4 vertices."""
    b = _Builder()
    _build_choice(b, s)
    return b.graph(), b.labels


def choice_gadget_size(s: int) -> int:
    # per block: 3 backbone + 6 in Q_i + 4 * 15 in P-copies, 2 per bridge, 2 ends + 4 end subdivisions
    return 69 * s + 2 * (s - 1) + 6


def p_graph() -> tuple[WeightedGraph, GadgetLabels]:
    b = _Builder()
    _add_p_copy(b, "")
    return b.graph(), b.labels


def q_vertices(labels: GadgetLabels, i: int, prefix: str = "") -> list[int]:
    names = [f"{prefix}v{r}_{i}" for r in (1, 2, 3)]
    for a, c in ((1, 2), (2, 3), (3, 1)):
        for tag in ("a", "b"):
            names.append(f"{prefix}<v{a}_{i},v{c}_{i}>{tag}")
    return labels.ids(names)


def p_vertices(labels: GadgetLabels, alpha: int, i: int, prefix: str = "") -> list[int]:
    return labels.ids(f"{prefix}P{alpha}_{i}:{n}" for n in P_NAMES)


def canonical_choice_names(s: int, i: int, prefix: str = "") -> list[str]:
    """Names of the 10 s vertices of the minimum deletion set that selects block ``i``."""
    if not 1 <= i <= s:
        raise ValueError(f"block {i} outside [1, {s}]")
    names = []
    for j in range(1, s + 1):
        if j < i:
            names += [f"{prefix}v1_{j}", f"{prefix}v2_{j}"]
        elif j == i:
            names += [f"{prefix}v1_{j}", f"{prefix}v3_{j}"]
        else:
            names += [f"{prefix}v2_{j}", f"{prefix}v3_{j}"]
        pair = ("u2", "u8") if j == i else ("u4", "u9")
        for alpha in range(1, 5):
            names += [f"{prefix}P{alpha}_{j}:{u}" for u in pair]
    return names


def canonical_choice_solution(s: int, i: int) -> list[int]:
    _, labels = choice_gadget(s)
    return sorted(labels.ids(canonical_choice_names(s, i)))


class ObstructionAudit(NamedTuple):
    ok: bool
    bound: int
    pieces: list
    message: str


def lower_bound_audit(s: int) -> ObstructionAudit:
    """Certify that every interval deletion set of H_s has at least 10 s vertices.

    Pieces are vertex sets paired with a demand: each P-copy piece is a
    non-interval induced subgraph (demand 1, two per copy); each Q_i stays
    non-interval after deleting any one of its vertices (demand 2). The
    pieces are pairwise disjoint, so the demands add up.
    """
    g, labels = choice_gadget(s)
    pieces = []
    for i in range(1, s + 1):
        for alpha in range(1, 5):
            for obs in P_OBSTRUCTIONS:
                pieces.append((labels.ids(f"P{alpha}_{i}:{n}" for n in obs), 1))
        pieces.append((q_vertices(labels, i), 2))
    used = 0
    for verts, _ in pieces:
        m = to_mask(verts)
        if m & used:
            return ObstructionAudit(False, 0, pieces, "pieces overlap")
        used |= m
    for verts, demand in pieces:
        sub, _ = g.induced(verts)
        if is_interval(sub):
            return ObstructionAudit(False, 0, pieces, f"piece {verts} is interval")
        if demand == 2:
            for v in range(sub.n):
                rest, _ = sub.remove([v])
                if is_interval(rest):
                    return ObstructionAudit(False, 0, pieces, f"one deletion fixes piece {verts}")
    bound = sum(d for _, d in pieces)
    return ObstructionAudit(bound >= 10 * s, bound, pieces, "ok")


def p_selection_check() -> bool:
    """Scaled form of the selection property on one P-copy hanging from v2.

    With the copy's budget of two vertices, deleting g (= u9) and any other
    vertex of the copy leaves a non-interval graph unless v2 is deleted.
    """
    b = _Builder()
    b.vertex("v2")
    _add_p_copy(b, "P:")
    b.edge("v2", "P:u1")
    g = b.graph()
    labels = b.labels
    gv = labels["P:u9"]
    copy = [labels["P:" + n] for n in P_NAMES]
    for other in copy:
        if other == gv:
            continue
        rest, _ = g.remove([gv, other])
        if is_interval(rest):
            return False
    # with v2 gone the canonical pair (u4, u9) does work
    rest, _ = g.remove([labels["v2"], gv, labels["P:u4"]])
    return is_interval(rest)


# ---------------------------------------------------------------------------
# reduction


@dataclass(frozen=True)
class PermutationCliqueInstance:
    """Graph on the grid [k] x [k]; edges are pairs of (row, column) cells."""

    k: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            a, c = tuple(e)
            for i, x in (a, c):
                if not (1 <= i <= self.k and 1 <= x <= self.k):
                    raise ValueError(f"cell ({i},{x}) outside the grid")
            if a == c:
                raise ValueError("self loop")
            norm.add(frozenset((tuple(a), tuple(c))))
        object.__setattr__(self, "edges", frozenset(norm))

    def has_edge(self, a, c) -> bool:
        return frozenset((tuple(a), tuple(c))) in self.edges

    def violated_pair(self, pi: Sequence[int]):
        """First (i, pi(i)), (j, pi(j)) with i < j that is not an edge, or None."""
        for i in range(1, self.k + 1):
            for j in range(i + 1, self.k + 1):
                if not self.has_edge((i, pi[i - 1]), (j, pi[j - 1])):
                    return ((i, pi[i - 1]), (j, pi[j - 1]))
        return None


def random_permutation_clique(k: int, seed: int, p: float = 0.5,
                              planted: bool = True) -> tuple[PermutationCliqueInstance, tuple | None]:
    """Random instance; when ``planted``, a random permutation's cells form a clique."""
    from .oracle import Xoshiro256

    rng = Xoshiro256(seed)
    cells = [(i, x) for i in range(1, k + 1) for x in range(1, k + 1)]
    edges = set()
    for a, c in combinations(cells, 2):
        if a[0] != c[0] and rng.random() < p:
            edges.add(frozenset((a, c)))
    pi = None
    if planted:
        perm = list(range(1, k + 1))
        rng.shuffle(perm)
        pi = tuple(perm)
        for i, j in combinations(range(1, k + 1), 2):
            edges.add(frozenset(((i, pi[i - 1]), (j, pi[j - 1]))))
    return PermutationCliqueInstance(k, frozenset(edges)), pi


def _set_mask(s) -> int:
    return sum(1 << (x - 1) for x in s)


def tuple_family(inst: PermutationCliqueInstance, i: int, j: int) -> list[tuple[frozenset, ...]]:
    """All (S1, S2, S3, S4) for the pair i < j, sorted by their bitsets."""
    k = inst.k
    universe = range(1, k + 1)
    out = []
    for x in universe:
        for y in universe:
            if x == y or not inst.has_edge((i, x), (j, y)):
                continue
            for s1 in combinations([z for z in universe if z not in (x, y)], i - 1):
                s2 = frozenset(s1) | {x}
                free = [z for z in universe if z not in s2 and z != y]
                for extra in combinations(free, j - 1 - len(s2)):
                    s3 = s2 | set(extra)
                    out.append((frozenset(s1), s2, frozenset(s3), frozenset(s3) | {y}))
    out = sorted(set(out), key=lambda t: tuple(_set_mask(s) for s in t))
    return out


@dataclass
class Reduction:
    graph: WeightedGraph
    budget: int
    labels: GadgetLabels
    orders: dict  # (i, j) -> s_ij
    rho: dict  # (i, j) -> list of tuples; block l is rho[(i, j)][l - 1]
    trivially_no: bool


def reduction_size(inst: PermutationCliqueInstance) -> int:
    total = inst.k + 2
    for i, j in combinations(range(1, inst.k + 1), 2):
        s = len(tuple_family(inst, i, j))
        if s:
            total += choice_gadget_size(s)
    return total


def reduce_permutation_clique(inst: PermutationCliqueInstance, k_cap: int = DEFAULT_K_CAP) -> Reduction:
    """Interval Vertex Deletion instance (H, p) equivalent to the Permutation Clique instance."""
    k = inst.k
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > k_cap:
        raise InstanceTooLarge(f"k = {k} exceeds the cap {k_cap}")
    b = _Builder()
    for i in range(1, k + 3):
        b.vertex(f"y{i}")
    for a, c in combinations(range(1, k + 2), 2):
        b.edge(f"y{a}", f"y{c}")
    b.edge(f"y{k + 1}", f"y{k + 2}")
    orders, rho = {}, {}
    trivially_no = False
    for i, j in combinations(range(1, k + 1), 2):
        fam = tuple_family(inst, i, j)
        orders[(i, j)] = len(fam)
        rho[(i, j)] = fam
        if not fam:
            trivially_no = True
            continue
        prefix = f"C{i},{j}/"
        _build_choice(b, len(fam), prefix)
        for ell, sets in enumerate(fam, start=1):
            for alpha, s in enumerate(sets, start=1):
                for x in sorted(s):
                    b.edge(f"{prefix}P{alpha}_{ell}:u9", f"y{x}")
    budget = 10 * sum(orders.values())
    return Reduction(b.graph(), budget, b.labels, orders, rho, trivially_no)


class Refusal(NamedTuple):
    """The permutation misses an edge: ``violated`` = ((i, pi(i)), (j, pi(j)))."""

    violated: tuple


def forward_solution(inst: PermutationCliqueInstance, pi: Sequence[int],
                     red: Reduction | None = None) -> list[int] | Refusal:
    """Interval deletion set of size p built from a permutation clique."""
    k = inst.k
    if sorted(pi) != list(range(1, k + 1)):
        raise ValueError("pi must be a permutation of 1..k")
    bad = inst.violated_pair(pi)
    if bad is not None:
        return Refusal(bad)
    if red is None:
        red = reduce_permutation_clique(inst)
    out = []
    for (i, j), fam in red.rho.items():
        target = (frozenset(pi[: i - 1]), frozenset(pi[:i]), frozenset(pi[: j - 1]), frozenset(pi[:j]))
        ell = fam.index(target) + 1
        out += red.labels.ids(canonical_choice_names(len(fam), ell, f"C{i},{j}/"))
    return sorted(out)
