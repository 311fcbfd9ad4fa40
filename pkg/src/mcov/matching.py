"""Maximum matchings and constrained perfect-matching queries on general graphs."""

from __future__ import annotations

from collections.abc import Iterable

from mcov import kernels
from mcov.graph import Edge, Graph, GraphError, components, norm_edge


class Matching(frozenset):
    """A set of pairwise disjoint edges."""

    def __new__(cls, edges: Iterable[tuple[int, int]] = ()):
        es = [norm_edge(u, v) for u, v in edges]
        seen: set[int] = set()
        for u, v in es:
            if u in seen or v in seen:
                raise GraphError(f"edges share an endpoint at {(u, v)}")
            seen.update((u, v))
        return super().__new__(cls, es)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self for v in e)

    def is_matching_of(self, g: Graph) -> bool:
        return all(e in g.edges for e in self)

    def __repr__(self) -> str:
        return f"Matching({sorted(self)})"


def _mate_to_matching(mate: list[int]) -> Matching:
    return Matching((v, u) for v, u in enumerate(mate) if u > v)


def maximum_matching(g: Graph) -> Matching:
    """Maximum-cardinality matching; deterministic for a given graph."""
    return _mate_to_matching(kernels.maximum_matching(list(g.adj), g.all_mask))


def maximum_matching_in(g: Graph, edges: Iterable[tuple[int, int]]) -> Matching:
    """Maximum matching using only the given edges of ``g``."""
    masks = [0] * g.order
    for u, v in edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return _mate_to_matching(kernels.maximum_matching(masks, g.all_mask))


def has_perfect_matching(g: Graph, alive: int | None = None) -> bool:
    return kernels.has_perfect_matching(list(g.adj), g.all_mask if alive is None else alive)


def _check_edges(g: Graph, es: Iterable[tuple[int, int]], what: str) -> set[Edge]:
    out = {norm_edge(*e) for e in es}
    missing = out - g.edges
    if missing:
        raise GraphError(f"{what} edges not in graph: {sorted(missing)}")
    return out


def perfect_matching_with(
    g: Graph,
    forced: Iterable[tuple[int, int]] = (),
    forbidden: Iterable[tuple[int, int]] = (),
) -> Matching | None:
    """A perfect matching containing every forced edge and no forbidden one, or None."""
    fo = _check_edges(g, forced, "forced")
    fb = _check_edges(g, forbidden, "forbidden")
    if fo & fb:
        raise GraphError(f"edges both forced and forbidden: {sorted(fo & fb)}")
    covered = 0
    for u, v in fo:
        b = (1 << u) | (1 << v)
        if covered & b:
            raise GraphError("forced edges must be pairwise disjoint")
        covered |= b
    adj = list(g.adj)
    for u, v in fb:
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    alive = g.all_mask & ~covered
    if alive.bit_count() % 2:
        return None
    mate = kernels.maximum_matching(adj, alive)
    if any(mate[v] == -1 for v in range(g.order) if alive >> v & 1):
        return None
    return Matching(list(_mate_to_matching(mate)) + sorted(fo))


def allowed_edges(g: Graph) -> frozenset[Edge]:
    """Edges lying in at least one perfect matching."""
    if g.order % 2:
        raise GraphError("allowed_edges needs a graph of even order")
    es = g.edge_list
    flags = kernels.allowed_edges(list(g.adj), g.all_mask, es)
    return frozenset(e for e, ok in zip(es, flags) if ok)


def odd_components(g: Graph, S: Iterable[int]) -> int:
    """Number of odd components of ``g - S``."""
    alive = g.all_mask
    for v in S:
        if not 0 <= v < g.order:
            raise GraphError(f"vertex {v} not in graph")
        alive &= ~(1 << v)
    return sum(1 for c in components(g, alive) if c.bit_count() % 2)


def is_barrier(g: Graph, S: Iterable[int]) -> bool:
    ss = set(S)
    if not ss:
        raise GraphError("a barrier is non-empty")
    if not has_perfect_matching(g):
        raise GraphError("barriers are defined for graphs with a perfect matching")
    return odd_components(g, ss) == len(ss)


def is_bicritical(g: Graph) -> bool:
    n = g.order
    if n % 2 or n < 4:
        raise GraphError("bicriticality needs even order >= 4")
    adj = list(g.adj)
    full = g.all_mask
    for u in range(n):
        for v in range(u + 1, n):
            if not kernels.has_perfect_matching(adj, full & ~(1 << u) & ~(1 << v)):
                return False
    return True
