"""Command-line front end.

Exit codes: 0 success, 1 parse or I/O error, 2 validation failure,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import ChvdError, FormatError, InvalidGraph, InvariantViolation, TooLarge
from .gadgets import (
    Refusal,
    choice_gadget,
    forward_solution,
    random_permutation_clique,
    reduce_permutation_clique,
)
from .graph import WeightedGraph, is_chordal, subdivide_all_edges
from .io import format_graph, format_td, parse_graph, parse_td
from .oracle import RandomSpec, brute_force_chvd, random_instance
from .solver import solve
from .treedecomp import make_nice, min_fill_decomposition, validate

log = logging.getLogger("chvd")

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_INVARIANT = 0, 1, 2, 3


class ValidationFailed(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _report(out, weight: int, deletion: list[int], g: WeightedGraph):
    keep, _ = g.remove(deletion)
    print(f"deletion_weight {weight}", file=out)
    for v in deletion:
        print(v + 1, file=out)
    if g.weight_of(deletion) != weight or not is_chordal(keep):
        raise ValidationFailed("deletion set does not leave a chordal graph of the reported weight")
    print("VERIFIED", file=out)


def _load_decomposition(g: WeightedGraph, td_path: str | None):
    if td_path is None:
        td = min_fill_decomposition(g)
        log.warning("no decomposition given; min-fill heuristic has width %d", td.width)
        return td
    td, n = parse_td(_read(td_path))
    if n != g.n:
        raise ValidationFailed(f"decomposition is for {n} vertices, graph has {g.n}")
    problem = validate(td, g)
    if problem is not None:
        raise ValidationFailed(f"invalid decomposition: {problem}")
    return td


def cmd_solve(args) -> int:
    g = parse_graph(_read(args.graph))
    td = _load_decomposition(g, args.td)
    sol = solve(g, make_nice(td))
    _report(sys.stdout, sol.deletion_weight, sol.deletion_set, g)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = parse_graph(_read(args.graph))
    weight, deletion = brute_force_chvd(g)
    _report(sys.stdout, weight, deletion, g)
    return EXIT_OK


def cmd_cross(args) -> int:
    graphs = [(p, parse_graph(_read(p))) for p in args.graphs]
    lo, hi = args.weights
    for i in range(args.random):
        spec = RandomSpec(args.n, args.p, (lo, hi), args.seed + i)
        graphs.append((f"random seed={spec.seed}", random_instance(spec)))
    bad = 0
    for name, g in graphs:
        dp = solve(g).deletion_weight
        bf, _ = brute_force_chvd(g)
        status = "ok" if dp == bf else "MISMATCH"
        bad += dp != bf
        print(f"{name}: solve {dp} oracle {bf} {status}")
    print(f"{len(graphs) - bad}/{len(graphs)} agree")
    return EXIT_OK if bad == 0 else EXIT_INVALID


def cmd_gen(args) -> int:
    if args.kind == "perm-clique":
        inst, pi = random_permutation_clique(args.k, args.seed, args.p, planted=not args.no_plant)
        red = reduce_permutation_clique(inst, k_cap=args.k_cap)
        comments = [f"interval deletion instance from a {args.k}x{args.k} permutation clique instance",
                    f"budget {red.budget}"]
        if red.trivially_no:
            comments.append("trivially NO: some pair has no admissible tuple")
        if pi is not None:
            comments.append("planted permutation " + " ".join(map(str, pi)))
            sol = forward_solution(inst, pi, red)
            if not isinstance(sol, Refusal):
                comments.append(f"planted solution size {len(sol)}")
        _emit(format_graph(red.graph, comments), args.out)
        labels = red.labels
    elif args.kind == "choice":
        g, labels = choice_gadget(args.s)
        _emit(format_graph(g, [f"choice gadget of order {args.s}"]), args.out)
    else:
        g = parse_graph(_read(args.graph))
        _emit(format_graph(subdivide_all_edges(g), ["every edge subdivided"]), args.out)
        labels = None
    if labels is not None and args.labels:
        Path(args.labels).write_text("\n".join(labels.sidecar_lines()) + "\n")
    return EXIT_OK


def cmd_check_td(args) -> int:
    g = parse_graph(_read(args.graph))
    td, n = parse_td(_read(args.td))
    if n != g.n:
        print(f"violation: decomposition is for {n} vertices, graph has {g.n}")
        return EXIT_INVALID
    problem = validate(td, g)
    if problem is not None:
        print(f"violation {problem.clause}: {problem.message}")
        return EXIT_INVALID
    print(f"ok width {td.width}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = parse_graph(_read(args.graph))
    _emit(format_td(min_fill_decomposition(g), g.n), args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    return EXIT_OK if run_selftest(args.seed, args.count) else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chvd", description="Weighted chordal vertex deletion by treewidth DP.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a graph with the decomposition DP")
    p.add_argument("graph")
    p.add_argument("--td", help="PACE .td decomposition; min-fill if omitted")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="solve a small graph by brute force")
    p.add_argument("graph")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("cross", help="compare DP and brute force")
    p.add_argument("graphs", nargs="*")
    p.add_argument("--random", type=int, default=0, help="number of seeded random graphs")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--p", type=float, default=0.4)
    p.add_argument("--weights", type=int, nargs=2, default=(1, 9), metavar=("LO", "HI"))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_cross)

    p = sub.add_parser("gen", help="generate instances")
    gsub = p.add_subparsers(dest="kind", required=True)
    q = gsub.add_parser("perm-clique", help="reduction from a random permutation clique instance")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--p", type=float, default=0.5, help="edge probability between rows")
    q.add_argument("--no-plant", action="store_true", help="do not plant a permutation clique")
    q.add_argument("--k-cap", type=int, default=6)
    q.add_argument("--out")
    q.add_argument("--labels")
    q = gsub.add_parser("choice", help="choice gadget of order s")
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--out")
    q.add_argument("--labels")
    q = gsub.add_parser("fvs-subdivision", help="subdivide every edge of a graph")
    q.add_argument("graph")
    q.add_argument("--out")
    q.set_defaults(labels=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check-td", help="validate a decomposition")
    p.add_argument("graph")
    p.add_argument("td")
    p.set_defaults(func=cmd_check_td)

    p = sub.add_parser("decompose", help="write a min-fill decomposition")
    p.add_argument("graph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("selftest", help="run the quick invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.set_defaults(func=cmd_selftest)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (FormatError, InvalidGraph, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValidationFailed, TooLarge, ChvdError) as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main():
    sys.exit(run())
