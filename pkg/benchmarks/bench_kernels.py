"""Compare the compiled and pure-Python kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--skip-end-to-end]

Part one times each kernel directly on identical inputs. Part two runs a few
library workloads in subprocesses, once per backend, switching with
MTGROUPS_PURE.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from mtgroups import _pykernels
from mtgroups.catalog import default_catalog, symmetric
from mtgroups.structure import all_subgroups

try:
    from mtgroups import _kernels
except ImportError:
    _kernels = None

WORKLOADS = {
    "census degree 6": "from mtgroups.census import mt_census; mt_census(6)",
    "lattice of S5": "from mtgroups.catalog import symmetric; from mtgroups.structure import all_subgroups; "
                     "all_subgroups(symmetric(5))",
    "mt check, catalog <= 96": "from mtgroups.catalog import default_catalog; "
                               "from mtgroups.structure import all_subgroups; "
                               "from mtgroups.mintrans import is_mt_stabilizer\n"
                               "for e in default_catalog(96):\n"
                               "    [is_mt_stabilizer(e.group, A) for A in all_subgroups(e.group)]",
}


def kernel_cases():
    G = symmetric(5)
    mul = G.mul
    subs = [H for H in all_subgroups(G) if 1 < H.order < G.order][:20]
    gens7 = np.array([[1, 2, 3, 4, 5, 6, 0], [1, 0, 2, 3, 4, 5, 6]], dtype=np.int32)
    rng = np.random.default_rng(0)
    perms = np.array([rng.permutation(8) for _ in range(5000)], dtype=np.int32)
    seed = np.array([0], dtype=np.int32)
    gidx = np.array([G.index_of(g) for g in G.generators], dtype=np.int32)

    def coset_all(k):
        for H in subs:
            k.coset_labels(mul, np.array(H.indices, dtype=np.int32))

    return {
        "table_closure (S5 table)": lambda k: k.table_closure(mul, seed, gidx),
        "coset_labels (20 subgroups of S5)": coset_all,
        "perm_closure (S7)": lambda k: k.perm_closure(gens7, 7, 10 ** 5),
        "lehmer_ranks (5000 perms of 8)": lambda k: k.lehmer_ranks(perms),
    }


def time_end_to_end(stmt: str, pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["MTGROUPS_PURE"] = "1"
    else:
        env.pop("MTGROUPS_PURE", None)
    code = f"import time\nt = time.perf_counter()\n{stmt}\nprint(time.perf_counter() - t)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()

    if _kernels is None:
        print("compiled extension not built; nothing to compare")
        return
    print(f"{'kernel':38s} {'cython ms':>10s} {'python ms':>10s} {'speedup':>8s}")
    for name, fn in kernel_cases().items():
        tc = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat)) * 1e3
        tp = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:38s} {tc:10.2f} {tp:10.2f} {tp / tc:7.1f}x")

    if args.skip_end_to_end:
        return
    print()
    print(f"{'workload':38s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, stmt in WORKLOADS.items():
        tc = time_end_to_end(stmt, pure=False)
        tp = time_end_to_end(stmt, pure=True)
        print(f"{name:38s} {tc:10.2f} {tp:10.2f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
