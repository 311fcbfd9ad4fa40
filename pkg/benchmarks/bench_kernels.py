"""Compare the compiled and pure-Python matching kernels on a graph6 census.

    python benchmarks/bench_kernels.py tests/data/census/cubic_connected_n12.g6
"""

from __future__ import annotations

import argparse
import time

from mcov import _pykernels
from mcov.graph import read_graph6_lines

try:
    from mcov import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def bench(mod, graphs, repeat: int) -> dict[str, float]:
    out = {}
    t = time.perf_counter()
    for _ in range(repeat):
        for g in graphs:
            mod.maximum_matching(list(g.adj), g.all_mask)
    out["maximum_matching"] = time.perf_counter() - t
    t = time.perf_counter()
    for _ in range(repeat):
        for g in graphs:
            mod.allowed_edges(list(g.adj), g.all_mask, g.edge_list)
    out["allowed_edges"] = time.perf_counter() - t
    t = time.perf_counter()
    for _ in range(repeat):
        for g in graphs:
            mod.dependence_rows(list(g.adj), g.edge_list)
    out["dependence_rows"] = time.perf_counter() - t
    return out


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("census", help="graph6 file")
    p.add_argument("--repeat", type=int, default=1)
    args = p.parse_args()
    with open(args.census) as fh:
        graphs = [g for _, _, g in read_graph6_lines(fh)]
    print(f"{len(graphs)} graphs, repeat={args.repeat}")
    py = bench(_pykernels, graphs, args.repeat)
    cy = bench(_ckernels, graphs, args.repeat) if _ckernels else None
    for k, v in py.items():
        if cy:
            print(f"{k:18s} python {v:8.3f}s  cython {cy[k]:8.3f}s  speedup {v / max(cy[k], 1e-9):6.1f}x")
        else:
            print(f"{k:18s} python {v:8.3f}s  (compiled kernels not built)")


if __name__ == "__main__":
    main()
