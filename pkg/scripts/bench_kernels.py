"""Benchmark the pure-Python kernels against the compiled extension.

Runs the four kernels on representative prefixes and prints a timing
table.  Results are asserted equal across backends before timing is
reported.

    python scripts/bench_kernels.py [--repeat 3]
"""

import argparse
import time

from layered_wheels import _kernels_py as kpy
from layered_wheels import build_prefix, parse_f_spec

try:
    from layered_wheels import _kernels_cy as kcy
except ImportError:
    kcy = None


def timed(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return result, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    cases = []
    p = build_prefix(6, parse_f_spec("cap:3"), 4, size_cap=10**6)
    cases.append(("shortest_hole", "ell=6 cap:3 t=4 (n=%d)" % p.n_vertices,
                  lambda k, q=p: k.shortest_hole(q.n_vertices, q.adjacency(), 8)))
    p = build_prefix(4, parse_f_spec("cap:3"), 8, size_cap=10**6)
    cases.append(("max_clique", "ell=4 cap:3 t=8 (n=%d)" % p.n_vertices,
                  lambda k, q=p: k.max_clique(q.n_vertices, q.adjacency())))
    p = build_prefix(4, parse_f_spec("cap:3"), 4)
    cases.append(("max_independent_set", "ell=4 cap:3 t=4 (n=%d)" % p.n_vertices,
                  lambda k, q=p: k.max_independent_set(q.n_vertices,
                                                       q.adjacency())))
    p = build_prefix(4, parse_f_spec("cap:3"), 3)
    cases.append(("treewidth_exact", "ell=4 cap:3 t=3 (n=%d)" % p.n_vertices,
                  lambda k, q=p: k.treewidth_exact(q.n_vertices,
                                                   q.adjacency())))

    print("%-22s %-28s %10s %10s %8s" % ("kernel", "instance", "py [ms]",
                                         "cy [ms]", "speedup"))
    for name, desc, fn in cases:
        r_py, t_py = timed(lambda: fn(kpy), args.repeat)
        if kcy is None:
            print("%-22s %-28s %10.2f %10s %8s"
                  % (name, desc, t_py * 1e3, "n/a", "n/a"))
            continue
        r_cy, t_cy = timed(lambda: fn(kcy), args.repeat)
        assert r_py == r_cy, "backend results differ for %s" % name
        print("%-22s %-28s %10.2f %10.2f %7.1fx"
              % (name, desc, t_py * 1e3, t_cy * 1e3, t_py / t_cy))
    if kcy is None:
        print("\ncompiled extension not built; run "
              "`python setup.py build_ext --inplace`")


if __name__ == "__main__":
    main()
