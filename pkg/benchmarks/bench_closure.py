"""Compare the pure-Python and Cython congruence-closure kernels.

Word tables are flattened once per workload; only the closure passes are timed.

    python benchmarks/bench_closure.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import sys
import time
from array import array

from partgroup import free_sets, product
from partgroup._kernel import get_kernel
from partgroup.colimits import _flatten, closure_words, seed_partition
from partgroup.free import SetSObject
from partgroup.groups import cyclic, dihedral, klein, quaternion


def workloads():
    d4 = dihedral(4).materialize(5)
    yield "D4 h5, kill r2", d4, [(0, d4.id_of("r2"))]
    q8 = quaternion().materialize(5)
    yield "Q8 h5, kill -1", q8, [(0, q8.id_of("-1"))]
    z3z3, _ = product([cyclic(3), cyclic(3)])
    yield "Z3xZ3 h4, kill one factor", z3z3, [(0, 1)]
    m = free_sets(SetSObject.of(cyclic(3)), max_word_len=6).group
    yield f"free on Z3 set ({m.size} elts, h6), total", m, [(0, x) for x in range(m.size)]
    m = free_sets(SetSObject.of(klein()), max_word_len=6).group
    yield f"free on V4 set ({m.size} elts, h6), one pair", m, [(1, 2)]


def run_kernel(impl, flat, offsets, prods, start):
    parent = array("i", start)
    passes = 0
    while impl.closure_pass(flat, offsets, prods, parent):
        passes += 1
    return list(parent), passes


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    try:
        kernels = {"python": get_kernel("python"), "cython": get_kernel("cython")}
    except ImportError:
        sys.exit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    print(f"{'workload':44} {'words':>8} {'python s':>9} {'cython s':>9} {'speedup':>8}")
    for name, pg, seed in workloads():
        words = closure_words(pg)
        flat, offsets, prods = _flatten(words, pg)
        start = seed_partition(pg.size, seed).parent
        best, results = {}, {}
        for k, impl in kernels.items():
            times = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[k] = run_kernel(impl, flat, offsets, prods, start)
                times.append(time.perf_counter() - t0)
            best[k] = min(times)
        assert results["python"] == results["cython"], name
        print(f"{name:44} {len(words):>8} {best['python']:>9.4f} {best['cython']:>9.4f} "
              f"{best['python'] / best['cython']:>7.1f}x")


if __name__ == "__main__":
    main()
