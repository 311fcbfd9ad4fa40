"""Canonical labelling for small graphs.

Colour refinement to an equitable partition, then individualization of the
first smallest non-singleton cell, branching over its vertices. Children whose
refinement trace is not minimal are pruned (the trace is isomorphism
invariant), and so are children in the same orbit as an explored sibling under
the automorphisms found so far (two leaves with equal certificates differ by an
automorphism). The canonical form is the smallest graph6 string over the
surviving leaves. Intended for graphs of up to ~40 vertices.
"""

from __future__ import annotations

from mcov.graph import Graph, to_graph6


def _refine(nbrs: list[list[int]], colors: list[int]) -> tuple[list[int], tuple]:
    trace = []
    ncells = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in nbrs[v]))) for v in range(len(colors))]
        keys = sorted(set(sigs))
        rank = {k: i for i, k in enumerate(keys)}
        colors = [rank[s] for s in sigs]
        trace.append(len(keys))
        if len(keys) == ncells:
            trace.append(tuple(keys))
            return colors, tuple(trace)
        ncells = len(keys)


def _individualize(colors: list[int], v: int) -> list[int]:
    c = colors[v]
    return [x + 1 if (x > c or (x == c and w != v)) else x for w, x in enumerate(colors)]


def _target_cell(colors: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _orbit_roots(n: int, gens: list[list[int]], fixed: list[int]) -> list[int]:
    """Union-find roots of the orbits of the group generated by those ``gens`` that fix
    every vertex of ``fixed``."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in gens:
        if any(gamma[v] != v for v in fixed):
            continue
        for v in range(n):
            a, b = find(v), find(gamma[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def canonical_form(g: Graph) -> str:
    """Label-invariant certificate: equal exactly for isomorphic graphs."""
    n = g.order
    if n == 0:
        return to_graph6(g)
    nbrs = [g.neighbors(v) for v in range(n)]
    edges = g.edge_list
    colors, _ = _refine(nbrs, [len(nb) for nb in nbrs])
    best: str | None = None
    leaves: dict[str, tuple[list[int], list[int]]] = {}
    automorphisms: list[list[int]] = []

    def search(colors: list[int], path: list[int]) -> int:
        """Explore below ``path``; returns the depth to backjump to (``n + 1`` for none)."""
        nonlocal best
        depth = len(path)
        cell = _target_cell(colors)
        if cell is None:
            cert = to_graph6(Graph(n, ((colors[u], colors[v]) for u, v in edges)))
            if best is None or cert < best:
                best = cert
            seen = leaves.get(cert)
            if seen is None:
                leaves[cert] = (colors, path)
                return n + 1
            # two labellings give the same graph: their quotient is an automorphism, and
            # the rest of the subtree where the two paths diverge is an image of explored work
            inv = [0] * n
            for v, c in enumerate(seen[0]):
                inv[c] = v
            automorphisms.append([inv[colors[v]] for v in range(n)])
            common = 0
            for a, b in zip(path, seen[1]):
                if a != b:
                    break
                common += 1
            return common
        children = []
        for v in cell:
            refined, trace = _refine(nbrs, _individualize(colors, v))
            children.append((trace, v, refined))
        low = min(t for t, _, _ in children)
        done: list[int] = []
        for trace, v, refined in children:
            if trace != low:
                continue
            if done:
                roots = _orbit_roots(n, automorphisms, path)
                if any(roots[v] == roots[u] for u in done):
                    continue
            done.append(v)
            jump = search(refined, path + [v])
            if jump < depth:
                return jump
        return n + 1

    search(colors, [])
    assert best is not None
    return best


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.order != h.order or g.size != h.size:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
