"""Simple undirected graphs, graph6 I/O, edge cuts, contraction and connectivity.

Vertices are the integers ``0..order-1``. Edges are normalized tuples
``(u, v)`` with ``u < v``. Graph values never change after construction.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from mcov import kernels

Edge = tuple[int, int]

GRAPH6_HEADER = ">>graph6<<"
MAX_GRAPH6_ORDER = 62


class GraphError(ValueError):
    """Raised when an operation's domain precondition is violated."""


class Graph6Error(GraphError):
    """Malformed graph6 input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.reason = message
        self.offset = offset


class MultigraphError(GraphError):
    """A contraction would create parallel edges."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph with optional vertex role labels."""

    def __init__(
        self,
        order: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Mapping[int, str] | None = None,
    ):
        if order < 0:
            raise GraphError(f"negative order {order}")
        es = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise GraphError(f"edge {(u, v)} out of range for order {order}")
            e = norm_edge(u, v)
            if e in es:
                raise GraphError(f"parallel edge {e}")
            es.add(e)
        self._order = order
        self._edges = frozenset(es)
        labs = dict(labels or {})
        for v in labs:
            if not 0 <= v < order:
                raise GraphError(f"label on missing vertex {v}")
        if len(set(labs.values())) != len(labs):
            raise GraphError("duplicate vertex labels")
        self._labels = labs

    @property
    def order(self) -> int:
        return self._order

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    @property
    def size(self) -> int:
        return len(self._edges)

    @cached_property
    def edge_list(self) -> list[Edge]:
        """Edges in lexicographic order."""
        return sorted(self._edges)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Adjacency bitmasks, one per vertex."""
        masks = [0] * self._order
        for u, v in self._edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @property
    def all_mask(self) -> int:
        return (1 << self._order) - 1

    def neighbors(self, v: int) -> list[int]:
        return [u for u in range(self._order) if self.adj[v] >> u & 1]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self._edges

    def is_cubic(self) -> bool:
        return all(d == 3 for d in self.degrees())

    def vertex(self, label: str) -> int:
        for v, lab in self._labels.items():
            if lab == label:
                return v
        raise KeyError(label)

    def label_of(self, v: int) -> str | None:
        return self._labels.get(v)

    def edge(self, a: str, b: str) -> Edge:
        """Edge between two labeled vertices."""
        e = norm_edge(self.vertex(a), self.vertex(b))
        if e not in self._edges:
            raise KeyError(f"{a}{b} is not an edge")
        return e

    def remove_edges(self, removed: Iterable[tuple[int, int]]) -> Graph:
        drop = {norm_edge(*e) for e in removed}
        if not drop <= self._edges:
            raise GraphError(f"not edges of the graph: {sorted(drop - self._edges)}")
        return Graph(self._order, self._edges - drop, self._labels)

    def add_edges(self, added: Iterable[tuple[int, int]]) -> Graph:
        return Graph(self._order, itertools.chain(self._edges, added), self._labels)

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``; labels follow their vertices."""
        return Graph(
            self._order,
            ((perm[u], perm[v]) for u, v in self._edges),
            {perm[v]: lab for v, lab in self._labels.items()},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._order == other._order and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._order, self._edges))

    def __repr__(self) -> str:
        return f"Graph(order={self._order}, size={self.size})"


@dataclass(frozen=True)
class EdgeCut:
    shore: frozenset[int]
    boundary: tuple[Edge, ...]
    nontrivial: bool

    def __len__(self) -> int:
        return len(self.boundary)


# --- graph6 ---------------------------------------------------------------


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 line (short form, order <= 62)."""
    s = line.rstrip("\r\n")
    offset = 0
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
        offset = len(GRAPH6_HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", offset)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid graph6 byte {ch!r}", offset + i)
    n = ord(s[0]) - 63
    if n == 63:
        raise Graph6Error("long-form order header is not supported", offset)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[1:]
    if len(body) < nbytes:
        raise Graph6Error("truncated adjacency bit field", offset + len(s))
    if len(body) > nbytes:
        raise Graph6Error("trailing data after adjacency bits", offset + 1 + nbytes)
    bits = 0
    for ch in body:
        bits = (bits << 6) | (ord(ch) - 63)
    pad = 6 * nbytes - nbits
    if pad and bits & ((1 << pad) - 1):
        raise Graph6Error("non-zero padding bits", offset + len(s) - 1)
    bits >>= pad
    edges = []
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                edges.append((i, j))
            k -= 1
    return Graph(n, edges)


def to_graph6(g: Graph) -> str:
    n = g.order
    if n > MAX_GRAPH6_ORDER:
        raise GraphError(f"graph6 short form supports order <= {MAX_GRAPH6_ORDER}, got {n}")
    out = [chr(63 + n)]
    acc = 0
    nacc = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(63 + acc))
                acc = nacc = 0
    if nacc:
        out.append(chr(63 + (acc << (6 - nacc))))
    return "".join(out)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, str, Graph]]:
    """Yield ``(line_number, text, graph)`` for each graph line; header and blank lines skipped.

    Parse errors are re-raised with the 1-based line number attached.
    """
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        if text.startswith(GRAPH6_HEADER):
            text = text[len(GRAPH6_HEADER):]
            if not text:
                continue
        try:
            g = parse_graph6(text)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc.reason}", exc.offset) from exc
        yield lineno, text, g


# --- subgraphs, cuts, contraction -----------------------------------------


def _check_subset(g: Graph, X: Iterable[int]) -> list[int]:
    xs = sorted(set(X))
    if xs and (xs[0] < 0 or xs[-1] >= g.order):
        raise GraphError(f"vertex set not contained in V(G): {xs}")
    return xs


def _check_shore(g: Graph, X: Iterable[int]) -> frozenset[int]:
    xs = _check_subset(g, X)
    if not xs or len(xs) == g.order:
        raise GraphError("shore must be a proper non-empty vertex subset")
    return frozenset(xs)


def induced_subgraph(g: Graph, X: Iterable[int]) -> Graph:
    xs = _check_subset(g, X)
    pos = {v: i for i, v in enumerate(xs)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    labels = {pos[v]: lab for v, lab in g.labels.items() if v in pos}
    return Graph(len(xs), edges, labels)


def boundary(g: Graph, X: Iterable[int]) -> list[Edge]:
    xs = set(X)
    return sorted(e for e in g.edges if (e[0] in xs) != (e[1] in xs))


def edge_cut(g: Graph, X: Iterable[int]) -> EdgeCut:
    shore = _check_shore(g, X)
    rest = g.order - len(shore)
    return EdgeCut(shore, tuple(boundary(g, shore)), len(shore) >= 2 and rest >= 2)


def contract(g: Graph, X: Iterable[int], name: str = "x") -> Graph:
    """Contract ``X`` to a single vertex appended last, labeled ``contracted:<name>``."""
    xs = _check_subset(g, X)
    if not xs:
        raise GraphError("cannot contract an empty set")
    if len(xs) == g.order:
        raise GraphError("contracting every vertex leaves nothing outside the shore")
    inside = set(xs)
    outside = [v for v in range(g.order) if v not in inside]
    pos = {v: i for i, v in enumerate(outside)}
    c = len(outside)
    edges = []
    hit: set[int] = set()
    for u, v in g.edges:
        if u in inside and v in inside:
            continue
        if u in inside or v in inside:
            w = v if u in inside else u
            if w in hit:
                raise MultigraphError(
                    f"vertex {w} has two neighbours in the contracted set; result is not simple"
                )
            hit.add(w)
            edges.append((pos[w], c))
        else:
            edges.append((pos[u], pos[v]))
    labels = {pos[v]: lab for v, lab in g.labels.items() if v in pos}
    labels[c] = f"contracted:{name}"
    return Graph(c + 1, edges, labels)


def cuts_cross(g: Graph, X: Iterable[int], Y: Iterable[int]) -> bool:
    xs = _check_shore(g, X)
    ys = _check_shore(g, Y)
    full = frozenset(range(g.order))
    xb, yb = full - xs, full - ys
    return all((xs & ys, xb & ys, xs & yb, xb & yb))


# --- connectivity ---------------------------------------------------------


def components(g: Graph, alive: int | None = None) -> list[int]:
    """Connected components of the subgraph induced by ``alive``, as bitmasks."""
    rest = g.all_mask if alive is None else alive
    adj = g.adj
    comps = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            v = frontier.bit_length() - 1
            frontier &= ~(1 << v)
            new = adj[v] & rest & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    return g.order > 0 and len(components(g)) == 1


def _max_flow_unit(n: int, arcs: dict[int, dict[int, int]], s: int, t: int, cap: int) -> int:
    """Unit-capacity augmenting-path max flow, stopping once ``cap`` is reached."""
    flow = 0
    while flow < cap:
        prev = {s: s}
        q = deque([s])
        while q and t not in prev:
            x = q.popleft()
            for y, c in arcs[x].items():
                if c > 0 and y not in prev:
                    prev[y] = x
                    q.append(y)
        if t not in prev:
            break
        y = t
        while y != s:
            x = prev[y]
            arcs[x][y] -= 1
            arcs[y][x] = arcs[y].get(x, 0) + 1
            y = x
        flow += 1
    return flow


def _edge_flow(g: Graph, s: int, t: int, cap: int) -> int:
    arcs = {v: {} for v in range(g.order)}
    for u, v in g.edges:
        arcs[u][v] = 1
        arcs[v][u] = 1
    return _max_flow_unit(g.order, arcs, s, t, cap)


def _vertex_flow(g: Graph, s: int, t: int, cap: int) -> int:
    # vertex v splits into v_in = 2v, v_out = 2v + 1
    arcs: dict[int, dict[int, int]] = {x: {} for x in range(2 * g.order)}
    for v in range(g.order):
        arcs[2 * v][2 * v + 1] = g.order if v in (s, t) else 1
    for u, v in g.edges:
        arcs[2 * u + 1][2 * v] = 1
        arcs[2 * v + 1][2 * u] = 1
    return _max_flow_unit(2 * g.order, arcs, 2 * s + 1, 2 * t, cap)


def edge_connectivity(g: Graph) -> int:
    best = min(g.degrees())
    for t in range(1, g.order):
        best = min(best, _edge_flow(g, 0, t, best))
    return best


def vertex_connectivity(g: Graph) -> int:
    n = g.order
    best = min(g.degrees())
    if g.size == n * (n - 1) // 2:
        return n - 1
    # Even's scheme: some vertex among the first best+1 lies outside a minimum separator.
    i = 0
    while i <= best and i < n:
        for j in range(i + 1, n):
            if not g.adj[i] >> j & 1:
                best = min(best, _vertex_flow(g, i, j, best))
        i += 1
    return best


def connectivity(g: Graph) -> tuple[int, int]:
    """Exact ``(vertex_connectivity, edge_connectivity)`` of a connected graph."""
    if g.order < 2 or not is_connected(g):
        raise GraphError("connectivity needs a connected graph with at least two vertices")
    return vertex_connectivity(g), edge_connectivity(g)


def bipartition(g: Graph, alive: int | None = None) -> tuple[frozenset[int], frozenset[int]] | None:
    """2-colouring with the smallest vertex of each component on side A, or None."""
    live = g.all_mask if alive is None else alive
    color: dict[int, int] = {}
    for s in range(g.order):
        if not live >> s & 1 or s in color:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            m = g.adj[x] & live
            while m:
                low = m & -m
                y = low.bit_length() - 1
                m ^= low
                if y not in color:
                    color[y] = color[x] ^ 1
                    q.append(y)
                elif color[y] == color[x]:
                    return None
    a = frozenset(v for v, c in color.items() if c == 0)
    b = frozenset(v for v, c in color.items() if c == 1)
    return a, b


def is_bipartite(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    return bipartition(g)


# --- 3-cuts ---------------------------------------------------------------


def _normalize_shore(n: int, shore: Iterable[int]) -> tuple[int, ...]:
    xs = tuple(sorted(shore))
    comp = tuple(v for v in range(n) if v not in set(xs))
    return min(xs, comp)


def enumerate_nontrivial_3cuts(g: Graph) -> list[EdgeCut]:
    """All non-trivial 3-cuts of a connected cubic graph.

    Each shore is reported once, as the lexicographically smaller of the two sides.
    """
    if not g.is_cubic():
        raise GraphError("3-cut enumeration requires a cubic graph")
    if not is_connected(g):
        raise GraphError("3-cut enumeration requires a connected graph")
    edges = g.edge_list
    shores: set[tuple[int, ...]] = set()
    for triple in kernels.disconnecting_triples(list(g.adj), edges):
        cut = [edges[i] for i in triple]
        h = g.remove_edges(cut)
        comps = components(h)
        cutset = set(cut)
        for r in range(1, len(comps)):
            for pick in itertools.combinations(comps, r):
                mask = 0
                for c in pick:
                    mask |= c
                xs = [v for v in range(g.order) if mask >> v & 1]
                if len(xs) < 2 or g.order - len(xs) < 2:
                    continue
                if set(boundary(g, xs)) == cutset:
                    shores.add(_normalize_shore(g.order, xs))
    return [edge_cut(g, s) for s in sorted(shores)]
