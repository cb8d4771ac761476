"""Times the compiled and pure-Python DPLL kernels on the same windows.

    python3 benchmarks/bench_solver.py [--repeat N]

Each row solves one window under one clamp with every available backend and
checks that status and step counts agree before reporting timings.
"""
import argparse
import statistics
import time

from paradox_lab import kernel
from paradox_lab.constructions import make_construction
from paradox_lab.graph import REMAINDER, RESTRICTED, truncate
from paradox_lab.solver import Clamp, solve

CASES = [
    ("yablo", 12, REMAINDER, ("x:0", True)),
    ("yablo", 12, RESTRICTED, ("x:0", True)),
    ("yablo", 24, REMAINDER, ("x:0", False)),
    ("gapped-yablo:2", 12, RESTRICTED, ("x:0", True)),
    ("sawblade:dec-yc", 6, RESTRICTED, ("x:s0:0", True)),
    ("oa:enumeration:inf:2", 6, REMAINDER, ("x:0:0", True)),
    ("oa:ranked-vertical:inf:inf", 3, REMAINDER, ("x:0:0", True)),
]


def bench(graph, clamp, backend, repeat):
    times, out = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        out = solve(graph, [Clamp(*clamp)], budget=200_000, backend=backend)
        times.append(time.perf_counter() - t)
    return out, statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    names = sorted(kernel.BACKENDS)
    head = " ".join(f"{n:>10s}" for n in names) + (" speedup" if "cython" in names else "")
    print(f"{'case':50s} {'nodes':>6s} {'status':>8s} {'steps':>8s} {head}")
    for name, depth, mode, clamp in CASES:
        g, _ = truncate(make_construction(name), depth, mode)
        res = {b: bench(g, clamp, b, args.repeat) for b in names}
        first = next(iter(res.values()))[0]
        for out, _ in res.values():
            assert (out.status, out.steps) == (first.status, first.steps), "backends disagree"
        label = f"{name} d={depth} {mode} {clamp[0]}={'T' if clamp[1] else 'F'}"
        cols = " ".join(f"{res[b][1] * 1e3:8.2f}ms" for b in names)
        if "cython" in res:
            cols += f" {res['python'][1] / res['cython'][1]:7.1f}x"
        print(f"{label:50s} {len(g.nodes):6d} {first.status:>8s} {first.steps:8d} {cols}")


if __name__ == "__main__":
    main()
