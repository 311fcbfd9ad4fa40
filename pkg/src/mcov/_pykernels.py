"""Pure-Python matching kernels (fallback for the compiled ``_ckernels``).

Graphs are passed as a list of adjacency bitmasks plus an ``alive`` bitmask of
vertices that take part. Both backends run the same algorithm with the same
visiting order, so they return identical matchings.
"""

from __future__ import annotations

from collections import deque


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


class _Blossom:
    """Edmonds' blossom-shrinking search (one BFS per exposed root)."""

    def __init__(self, adj: list[int], alive: int):
        n = len(adj)
        self.n = n
        self.adj = [a & alive for a in adj]
        self.alive = alive
        self.match = [-1] * n
        self.p = [-1] * n
        self.base = list(range(n))

    def greedy(self) -> None:
        match = self.match
        for v in _bits(self.alive):
            if match[v] != -1:
                continue
            for u in _bits(self.adj[v]):
                if match[u] == -1:
                    match[v] = u
                    match[u] = v
                    break

    def _lca(self, a: int, b: int) -> int:
        base, match, p = self.base, self.match, self.p
        seen = [False] * self.n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = p[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = p[match[b]]

    def _mark(self, v: int, b: int, child: int, blossom: list[bool]) -> None:
        base, match, p = self.base, self.match, self.p
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def find_path(self, root: int) -> int:
        n = self.n
        base, match, p, adj = self.base, self.match, self.p, self.adj
        used = [False] * n
        for i in range(n):
            p[i] = -1
            base[i] = i
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in _bits(adj[v]):
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    cur = self._lca(v, to)
                    blossom = [False] * n
                    self._mark(v, cur, to, blossom)
                    self._mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    q.append(match[to])
        return -1

    def augment(self, v: int) -> None:
        match, p = self.match, self.p
        while v != -1:
            pv = p[v]
            ppv = match[pv]
            match[v] = pv
            match[pv] = v
            v = ppv

    def run(self, stop_on_exposed: bool) -> bool:
        """Grow the matching to maximum; with ``stop_on_exposed`` give up at the first
        vertex that can never be matched. Returns True iff no vertex was left exposed."""
        self.greedy()
        for v in _bits(self.alive):
            if self.match[v] != -1:
                continue
            end = self.find_path(v)
            if end == -1:
                if stop_on_exposed:
                    return False
                continue
            self.augment(end)
        return all(self.match[v] != -1 for v in _bits(self.alive))


def maximum_matching(adj: list[int], alive: int) -> list[int]:
    b = _Blossom(adj, alive)
    b.run(stop_on_exposed=False)
    return b.match


def has_perfect_matching(adj: list[int], alive: int) -> bool:
    if alive.bit_count() % 2:
        return False
    return _Blossom(adj, alive).run(stop_on_exposed=True)


def _without_edge(adj: list[int], u: int, v: int) -> list[int]:
    out = list(adj)
    out[u] &= ~(1 << v)
    out[v] &= ~(1 << u)
    return out


def allowed_edges(adj: list[int], alive: int, edges: list[tuple[int, int]]) -> list[bool]:
    """For each edge, whether some perfect matching of the alive subgraph contains it."""
    out = []
    for u, v in edges:
        if not (alive >> u & 1 and alive >> v & 1):
            out.append(False)
            continue
        out.append(has_perfect_matching(adj, alive & ~(1 << u) & ~(1 << v)))
    return out


def dependence_rows(adj: list[int], edges: list[tuple[int, int]]) -> list[list[int]]:
    """Row ``i`` lists every ``j != i`` such that edge ``i`` depends on edge ``j``.

    Edge ``i`` depends on ``j`` when every perfect matching containing ``i`` also
    contains ``j``. Only edges of one perfect matching of ``G - V(e_i)`` can qualify,
    so each row costs one maximum matching plus ``n/2 - 1`` existence tests.
    """
    n = len(adj)
    full = (1 << n) - 1
    index = {e: k for k, e in enumerate(edges)}
    rows = []
    for i, (a, b) in enumerate(edges):
        alive = full & ~(1 << a) & ~(1 << b)
        mate = maximum_matching(adj, alive)
        if any(mate[v] == -1 for v in _bits(alive)):
            rows.append([j for j in range(len(edges)) if j != i])
            continue
        row = []
        for c in _bits(alive):
            d = mate[c]
            if d < c:
                continue
            if not has_perfect_matching(_without_edge(adj, c, d), alive):
                row.append(index[(c, d)])
        rows.append(sorted(row))
    return rows


def disconnecting_triples(adj: list[int], edges: list[tuple[int, int]]) -> list[tuple[int, int, int]]:
    """Index triples of edges whose joint removal disconnects the graph."""
    n = len(adj)
    full = (1 << n) - 1
    m = len(edges)
    out = []
    for i in range(m):
        a1 = _without_edge(adj, *edges[i])
        for j in range(i + 1, m):
            a2 = _without_edge(a1, *edges[j])
            for k in range(j + 1, m):
                a3 = _without_edge(a2, *edges[k])
                comp = 1
                frontier = 1
                while frontier:
                    v = frontier.bit_length() - 1
                    frontier &= ~(1 << v)
                    new = a3[v] & ~comp
                    comp |= new
                    frontier |= new
                if comp != full:
                    out.append((i, j, k))
    return out
