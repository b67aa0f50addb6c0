"""Quick invariant suites behind ``chvd selftest``."""

from __future__ import annotations

from .boundary import chordal_by_aux, glue, glue_is_chordal_via_signatures
from .gadgets import canonical_choice_solution, choice_gadget, lower_bound_audit
from .graph import is_interval
from .matroid import GraphicMatroid, max_representative, representative_oracle_check
from .oracle import (
    RandomSpec,
    Xoshiro256,
    brute_force_chvd,
    random_boundaried_side,
    random_chordal_boundary,
    random_instance,
)
from .solver import solve


def _line(name: str, ok: bool, detail: str = ""):
    print(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}")
    return ok


def run_selftest(seed: int = 0, count: int = 50) -> bool:
    rng = Xoshiro256(seed)
    results = []

    bad = 0
    for i in range(count):
        g = random_instance(RandomSpec(9, (0.2, 0.4, 0.6)[i % 3], (1, 9), seed * 100003 + i))
        bad += solve(g).deletion_weight != brute_force_chvd(g)[0]
    results.append(_line("solver vs brute force", bad == 0, f"{count - bad}/{count}"))

    bad = 0
    for _ in range(count):
        k = 1 + rng.below(4)
        badj = random_chordal_boundary(rng, k, 0.5)
        x = (1 << k) - 1
        a = random_boundaried_side(rng, badj, x, rng.below(4), 0.5)
        b = random_boundaried_side(rng, badj, x, rng.below(4), 0.5)
        direct = glue(a, b).is_chordal()
        by_sign, _ = glue_is_chordal_via_signatures(a, b)
        bad += by_sign != direct or chordal_by_aux(glue(a, b)) != direct
    results.append(_line("gluing criteria", bad == 0, f"{count - bad}/{count}"))

    bad = 0
    for _ in range(count):
        nv = 2 + rng.below(4)
        edges = tuple((u, v) for u in range(nv) for v in range(u + 1, nv) if rng.random() < 0.6)
        m = GraphicMatroid(nv, edges)
        fam = []
        for _ in range(1 + rng.below(12)):
            s = 0
            for e in range(len(edges)):
                if rng.random() < 0.3:
                    s |= 1 << e
            from .matroid import is_independent
            if is_independent(m, s):
                fam.append((s, rng.below(10), len(fam)))
        sub = max_representative(m, fam)
        bad += not representative_oracle_check(m, fam, sub) or len(sub) > 1 << m.rank
    results.append(_line("representative families", bad == 0, f"{count - bad}/{count}"))

    g, _ = choice_gadget(1)
    rest, _ = g.remove(canonical_choice_solution(1, 1))
    results.append(_line("choice gadget H_1", is_interval(rest) and lower_bound_audit(1).ok))
    return all(results)
