"""Compiled kernel vs pure-Python fallback on the three hot loops.

Run as a script:  python benchmarks/bench_kernels.py [--repeat N]

Workloads are sized so the pure backend finishes in seconds; results are
identical across backends by construction (the timing is the only thing
being compared), and the script re-checks that on every row.
"""

from __future__ import annotations

import argparse
import time

from psts import kernels
from psts.graphs import join, make_complete, make_edgeless, petersen
from psts.solver import TrianglePackingProblem


def _rows_for(problem: TrianglePackingProblem):
    host = problem.host
    idx = {e: i for i, e in enumerate(host.edges)}
    rows = []
    for a, b, c in problem.triangles():
        rows.append(
            tuple(
                sorted(
                    (
                        idx[(a, b)],
                        idx[(a, c)],
                        idx[(b, c)],
                    )
                )
            )
        )
    return host.m, rows


def bench(repeat: int) -> None:
    k13 = make_complete(13)
    n_cols, rows = _rows_for(TrianglePackingProblem(k13))
    pet_join = join(make_edgeless(range(10, 13)), petersen())
    nj_cols, nj_rows = _rows_for(TrianglePackingProblem(pet_join))
    k31_edges = list(make_complete(31).edges)
    pet = petersen()

    tasks = [
        (
            "exact_cover sts13 (sat)",
            lambda mod: mod.exact_cover_first(n_cols, rows, 10**7),
        ),
        (
            "exact_cover petersen-join (unsat)",
            lambda mod: mod.exact_cover_first(nj_cols, nj_rows, 10**7),
        ),
        (
            "hill_climb sts31",
            lambda mod: mod.hill_climb_full(31, k31_edges, 12345, 10**6),
        ),
        (
            "coloring count petersen c=4",
            lambda mod: mod.coloring_search(
                pet.n, list(pet.edges), 4, kernels.MODE_COUNT, 10**7
            ),
        ),
    ]

    mods = kernels.backends()
    print(f"backends: {', '.join(m.BACKEND for m in mods)}")
    header = f"{'task':38} " + " ".join(f"{m.BACKEND:>12}" for m in mods) + "   speedup"
    print(header)
    print("-" * len(header))
    for label, fn in tasks:
        times = []
        outs = []
        for mod in mods:
            best = float("inf")
            out = None
            for _ in range(repeat):
                t0 = time.perf_counter()
                out = fn(mod)
                best = min(best, time.perf_counter() - t0)
            times.append(best)
            outs.append(out)
        digests = {(o[0], o[-1]) for o in outs}
        agree = "" if len(digests) == 1 else "  <-- MISMATCH"
        cols = " ".join(f"{t:>11.4f}s" for t in times)
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "       -"
        print(f"{label:38} {cols} {speed}{agree}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    bench(args.repeat)


if __name__ == "__main__":
    main()
