"""Compare the compiled and pure-Python probe kernels.

    python3 benchmarks/bench_kernel.py [--repeat 3]

Two timings per instance: raw successor generation over the first explored
territories (kernel only) and a complete cop_win search (kernel plus the
Python bookkeeping around it).
"""

import argparse
import time

from locgame.designs import affine_plane, incidence_graph, projective_plane
from locgame.graph import generate
from locgame.solver import Arena, available_backends, cop_win

INSTANCES = [
    ("Q4", lambda: generate("hypercube", [4]), 2),
    ("Petersen", lambda: generate("kneser", [2, 5]), 2),
    ("G(PG(2,2))", lambda: incidence_graph(projective_plane(2)), 2),
    ("G(AG(2,3))", lambda: incidence_graph(affine_plane(3)), 2),
]


def kernel_time(g, k, backend, states=200):
    arena = Arena(g, k, backend=backend)
    if g.n < 16:
        arena.explore_full()
    else:
        arena.search()
    masks = arena.masks[:states]
    start = time.perf_counter()
    for m in masks:
        arena.kernel.successors(m)
    return time.perf_counter() - start, len(masks)


def search_time(g, k, backend):
    start = time.perf_counter()
    v = cop_win(g, k, evidence=False, backend=backend)
    return time.perf_counter() - start, v.cop_win


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python kernel is timed")
    print(f"{'instance':<12} {'k':>2} {'backend':<8} {'kernel s':>9} {'search s':>9} {'speedup':>8}")
    for name, make, k in INSTANCES:
        g = make()
        base = None
        for backend in sorted(backends, reverse=True):
            kt = min(kernel_time(g, k, backend)[0] for _ in range(args.repeat))
            st = min(search_time(g, k, backend)[0] for _ in range(args.repeat))
            base = base or kt
            print(f"{name:<12} {k:>2} {backend:<8} {kt:>9.4f} {st:>9.3f} {base / kt:>7.1f}x")


if __name__ == "__main__":
    main()
