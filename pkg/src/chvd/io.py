"""Text formats for graphs, tree decompositions and gadget labels.

Graph files::

    c comment
    p chvd <n> <m>
    e <u> <v>          (1-based, m lines)
    n <v> <w>          (optional weight, default 1)

Decomposition files (PACE ``.td``)::

    s td <#bags> <width+1> <n>
    b <id> <v> ...     (1-based ids and vertices)
    <id> <id>          (tree edges)
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .errors import FormatError, InvalidGraph
from .graph import WeightedGraph
from .treedecomp import TreeDecomposition


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        yield lineno, parts


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: expected an integer, got {tok!r}") from None


def parse_graph(text: str) -> WeightedGraph:
    n = m = None
    edges = []
    weights = None
    for lineno, parts in _lines(text):
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: second header")
            if len(parts) != 4 or parts[1] != "chvd":
                raise FormatError(f"line {lineno}: header must be 'p chvd <n> <m>'")
            n, m = _int(parts[2], lineno), _int(parts[3], lineno)
            if n < 0 or m < 0:
                raise FormatError(f"line {lineno}: negative counts")
            weights = [1] * n
            continue
        if n is None:
            raise FormatError(f"line {lineno}: data before the header")
        if tag == "e":
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: edge lines are 'e <u> <v>'")
            u, v = _int(parts[1], lineno), _int(parts[2], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"line {lineno}: vertex out of range")
            edges.append((u - 1, v - 1))
        elif tag == "n":
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: weight lines are 'n <v> <w>'")
            v, w = _int(parts[1], lineno), _int(parts[2], lineno)
            if not 1 <= v <= n:
                raise FormatError(f"line {lineno}: vertex out of range")
            if w < 0:
                raise FormatError(f"line {lineno}: negative weight")
            weights[v - 1] = w
        else:
            raise FormatError(f"line {lineno}: unknown line type {tag!r}")
    if n is None:
        raise FormatError("missing header")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return WeightedGraph.from_edges(n, edges, weights)
    except InvalidGraph as exc:
        raise FormatError(str(exc)) from exc


def format_graph(g: WeightedGraph, comments: Iterable[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p chvd {g.n} {g.m}")
    out += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    out += [f"n {v + 1} {w}" for v, w in enumerate(g.weights) if w != 1]
    return "\n".join(out) + "\n"


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Decomposition and the vertex count announced by its header."""
    header = None
    bags: dict[int, tuple[int, ...]] = {}
    edges = []
    for lineno, parts in _lines(text):
        if parts[0] == "s":
            if header is not None or len(parts) != 5 or parts[1] != "td":
                raise FormatError(f"line {lineno}: header must be 's td <bags> <width+1> <n>'")
            header = tuple(_int(p, lineno) for p in parts[2:])
            continue
        if header is None:
            raise FormatError(f"line {lineno}: data before the header")
        if parts[0] == "b":
            if len(parts) < 2:
                raise FormatError(f"line {lineno}: bag line needs an id")
            bid = _int(parts[1], lineno)
            if not 1 <= bid <= header[0] or bid in bags:
                raise FormatError(f"line {lineno}: bad or repeated bag id {bid}")
            verts = [_int(p, lineno) - 1 for p in parts[2:]]
            if any(not 0 <= v < header[2] for v in verts):
                raise FormatError(f"line {lineno}: vertex out of range")
            bags[bid] = tuple(verts)
        else:
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: tree edge lines are '<id> <id>'")
            a, b = _int(parts[0], lineno), _int(parts[1], lineno)
            edges.append((a - 1, b - 1))
    if header is None:
        raise FormatError("missing header")
    nbags, size, n = header
    if len(bags) != nbags:
        raise FormatError(f"header announces {nbags} bags, found {len(bags)}")
    td = TreeDecomposition(tuple(bags[i] for i in range(1, nbags + 1)), tuple(edges))
    if nbags and td.width + 1 != size:
        raise FormatError(f"header announces bag size {size}, largest bag has {td.width + 1}")
    return td, n


def format_td(td: TreeDecomposition, n: int) -> str:
    out = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        out.append(" ".join(["b", str(i)] + [str(v + 1) for v in bag]))
    out += [f"{a + 1} {b + 1}" for a, b in td.edges]
    return "\n".join(out) + "\n"


def read_graph(path) -> WeightedGraph:
    return parse_graph(Path(path).read_text())


def write_graph(g: WeightedGraph, path, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_graph(g, comments))


def read_td(path) -> tuple[TreeDecomposition, int]:
    return parse_td(Path(path).read_text())


def write_td(td: TreeDecomposition, n: int, path) -> None:
    Path(path).write_text(format_td(td, n))
