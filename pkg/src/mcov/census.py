"""Census input helpers.

Censuses are produced by external generators (for example nauty's ``geng -c -d3 -D3 n``)
and read as graph6 streams. The small brute-force generator below exists only to
cross-check ingested censuses in tests; it is exponential and limited to n <= 12.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from mcov.graph import Graph, GraphError, read_graph6_lines
from mcov.iso import canonical_form


def read_census(paths: Iterable[str]) -> Iterator[tuple[str, int, str, Graph]]:
    """Yield ``(path, line_number, graph6, graph)`` over several graph6 files."""
    for path in paths:
        with open(path, encoding="ascii") as fh:
            for lineno, text, g in read_graph6_lines(fh):
                yield path, lineno, text, g


def connected_cubic_graphs(n: int) -> list[Graph]:
    """All connected cubic graphs of order ``n`` up to isomorphism, sorted by canonical form.

    Vertices are labelled in breadth-first order from vertex 0, which keeps every
    partial graph connected; isomorphic leaves are merged by canonical form.
    """
    if n > 12:
        raise GraphError("the brute-force generator is limited to n <= 12")
    if n < 4 or n % 2:
        return []
    adj = [set() for _ in range(n)]
    found: dict[str, Graph] = {}

    def fill(v: int, used: int) -> None:
        # ``used`` = number of labels handed out so far (labels are discovered in BFS order)
        while v < n and len(adj[v]) == 3:
            v += 1
        if v == n:
            if used == n:
                g = Graph(n, [(a, b) for a in range(n) for b in adj[a] if a < b])
                found.setdefault(canonical_form(g), g)
            return
        if v >= used:
            return  # disconnected: v was never discovered
        lo = max(adj[v]) if adj[v] else v
        # existing later vertices with spare degree, taken in increasing order
        for u in range(max(lo, v) + 1, used):
            if len(adj[u]) < 3 and u not in adj[v]:
                adj[v].add(u)
                adj[u].add(v)
                fill(v, used)
                adj[v].discard(u)
                adj[u].discard(v)
        # or a brand-new vertex
        if used < n:
            adj[v].add(used)
            adj[used].add(v)
            fill(v, used + 1)
            adj[v].discard(used)
            adj[used].discard(v)

    adj[0] = {1, 2, 3}
    for u in (1, 2, 3):
        adj[u].add(0)
    fill(1, 4)
    return [found[k] for k in sorted(found)]
