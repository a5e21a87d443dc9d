#!/usr/bin/env python3
"""Side-by-side matcher benchmark: numba kernel vs pure numpy/Python fallback.

Generates synthetic form pairs of growing size, times match_forms under both
backends and checks they return identical results.  The first numba call
compiles the kernel; that warm-up is excluded from the timings.

Usage: python benchmarks/bench_matcher.py [--restarts 20] [--pairs 20] [--seed 7]
"""

import argparse
import time

import numpy as np

from drsmatch import MatchConfig, build_form, classify_clause, match_forms
from drsmatch._kernel import numba_available

LEMMAS = ["cat", "dog", "smile", "flee", "table", "time", "person", "play", "walk", "book",
          "city", "win", "rain", "song", "tree", "house"]
ROLES = ["Agent", "Theme", "Patient", "Time", "Source", "Destination"]


def synth_form(rng, n_clauses, n_boxes, n_refs):
    boxes = [f"b{i}" for i in range(n_boxes)]
    refs = [f"x{i}" for i in range(n_refs)]
    lines = []
    for _ in range(n_clauses):
        box = boxes[rng.integers(n_boxes)]
        shape = rng.random()
        if shape < 0.3:
            lines.append(f"{box} REF {refs[rng.integers(n_refs)]}")
        elif shape < 0.65:
            lemma = LEMMAS[rng.integers(len(LEMMAS))]
            sense = f"n.0{rng.integers(1, 5)}"
            lines.append(f"{box} {lemma} {sense} {refs[rng.integers(n_refs)]}")
        elif shape < 0.9:
            role = ROLES[rng.integers(len(ROLES))]
            lines.append(f"{box} {role} {refs[rng.integers(n_refs)]} {refs[rng.integers(n_refs)]}")
        else:
            lines.append(f'{box} TPR {refs[rng.integers(n_refs)]} "now"')
    return build_form(classify_clause(line.split()) for line in lines)


def bench(pairs, config):
    start = time.perf_counter()
    results = [match_forms(a, b, config) for a, b in pairs]
    return time.perf_counter() - start, results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--restarts", type=int, default=20)
    parser.add_argument("--pairs", type=int, default=20, help="pairs per size bucket")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    if not numba_available():
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(args.seed)
    sizes = [(10, 3, 4), (20, 4, 8), (40, 6, 14), (80, 8, 24)]

    print("Warming up the jit kernel...")
    tiny = synth_form(rng, 4, 2, 2)
    t0 = time.perf_counter()
    match_forms(tiny, tiny, MatchConfig(restarts=1, backend="numba"))
    print(f"compile: {time.perf_counter() - t0:.1f}s\n")

    print(f"restarts={args.restarts}, {args.pairs} pairs per row")
    print(f"{'clauses':>8}  {'vars':>5}  {'numpy (s)':>10}  {'numba (s)':>10}  {'speedup':>8}  {'equal':>6}")
    print("-" * 58)
    for n_clauses, n_boxes, n_refs in sizes:
        pairs = [
            (
                synth_form(rng, n_clauses, n_boxes, n_refs),
                synth_form(rng, n_clauses, n_boxes, n_refs),
            )
            for _ in range(args.pairs)
        ]
        t_np, res_np = bench(pairs, MatchConfig(restarts=args.restarts, backend="numpy"))
        t_nb, res_nb = bench(pairs, MatchConfig(restarts=args.restarts, backend="numba"))
        equal = all(a == b for a, b in zip(res_np, res_nb))
        print(
            f"{n_clauses:>8}  {n_boxes + n_refs:>5}  {t_np:>10.3f}  {t_nb:>10.3f}  "
            f"{t_np / t_nb:>7.1f}x  {'ok' if equal else 'FAIL':>6}"
        )


if __name__ == "__main__":
    main()
