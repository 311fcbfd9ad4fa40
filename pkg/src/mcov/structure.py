"""Classification predicates for matching covered graphs.

Removable edges and doubletons are computed from the dependence relation:
``e`` depends on ``f`` when every perfect matching containing ``e`` also
contains ``f``. In a matching covered graph, ``e`` is removable iff no other
edge depends on it, and both edges of a removable doubleton depend on each
other. The brute-force definitions are kept alongside for cross-checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from mcov import kernels
from mcov.graph import (
    Edge,
    Graph,
    GraphError,
    _check_shore,
    bipartition,
    boundary,
    components,
    edge_connectivity,
    enumerate_nontrivial_3cuts,
    is_connected,
    norm_edge,
    vertex_connectivity,
)
from mcov.matching import (
    allowed_edges,
    is_bicritical,
    maximum_matching,
    perfect_matching_with,
)


class WitnessNotApplicable(GraphError):
    """The edge lies in a perfect matching, so no Dulmage-Mendelsohn witness exists."""


@dataclass(frozen=True)
class RemovableClassification:
    removable: frozenset[Edge]
    doubletons: frozenset[frozenset[Edge]]
    neither: frozenset[Edge]

    @property
    def class_count(self) -> int:
        return len(self.removable) + len(self.doubletons)

    @property
    def doubleton_edges(self) -> frozenset[Edge]:
        return frozenset(e for d in self.doubletons for e in d)

    def doubletons_overlap(self) -> bool:
        """True if some edge belongs to two different doubletons."""
        return sum(len(d) for d in self.doubletons) != len(self.doubleton_edges)


@dataclass(frozen=True)
class DMPartition:
    A1: frozenset[int]
    A2: frozenset[int]
    B1: frozenset[int]
    B2: frozenset[int]


@dataclass(frozen=True)
class CutClassification:
    separating: bool
    tight: bool
    good: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "good", self.separating and not self.tight)


# --- matching covered, dependence -----------------------------------------


@lru_cache(maxsize=512)
def is_matching_covered(g: Graph) -> bool:
    if g.order < 2 or g.order % 2 or not is_connected(g):
        return False
    return len(allowed_edges(g)) == g.size


def _require_mc(g: Graph) -> None:
    if not is_matching_covered(g):
        raise GraphError("graph is not matching covered")


def _require_edge(g: Graph, e: tuple[int, int]) -> Edge:
    ne = norm_edge(*e)
    if ne not in g.edges:
        raise GraphError(f"{e} is not an edge")
    return ne


@lru_cache(maxsize=512)
def dependence(g: Graph) -> dict[Edge, frozenset[Edge]]:
    """Map each edge to the set of other edges it depends on."""
    es = g.edge_list
    rows = kernels.dependence_rows(list(g.adj), es)
    return {e: frozenset(es[j] for j in row) for e, row in zip(es, rows)}


def depends_on(g: Graph, e: tuple[int, int], f: tuple[int, int]) -> bool:
    """Whether every perfect matching containing ``e`` also contains ``f``."""
    e, f = _require_edge(g, e), _require_edge(g, f)
    if e == f:
        raise GraphError("dependence is between distinct edges")
    _require_mc(g)
    return perfect_matching_with(g, [e], [f]) is None


def mutually_dependent_pairs(g: Graph) -> list[tuple[Edge, Edge]]:
    dep = dependence(g)
    return sorted(
        (e, f) for e in g.edge_list for f in dep[e] if e < f and e in dep[f]
    )


@lru_cache(maxsize=512)
def classify_edges(g: Graph) -> RemovableClassification:
    _require_mc(g)
    dep = dependence(g)
    depended: set[Edge] = set()
    for e, targets in dep.items():
        depended |= targets
    removable = set()
    for e in g.edge_list:
        if e in depended:
            continue
        # a lone edge whose deletion disconnects the graph is never removable
        if is_connected(g.remove_edges([e])):
            removable.add(e)
    doubletons = set()
    for e, f in mutually_dependent_pairs(g):
        if e in removable or f in removable:
            continue
        if is_matching_covered(g.remove_edges([e, f])):
            doubletons.add(frozenset((e, f)))
    in_pairs = {x for d in doubletons for x in d}
    neither = g.edges - removable - in_pairs
    return RemovableClassification(frozenset(removable), frozenset(doubletons), frozenset(neither))


def removable_edges(g: Graph) -> frozenset[Edge]:
    return classify_edges(g).removable


def removable_doubletons(g: Graph) -> frozenset[frozenset[Edge]]:
    return classify_edges(g).doubletons


def removable_edges_bruteforce(g: Graph) -> frozenset[Edge]:
    """Definition-level route: ``e`` is removable iff ``g - e`` is matching covered."""
    _require_mc(g)
    return frozenset(e for e in g.edge_list if is_matching_covered(g.remove_edges([e])))


def removable_doubletons_bruteforce(g: Graph) -> frozenset[frozenset[Edge]]:
    rem = removable_edges_bruteforce(g)
    rest = [e for e in g.edge_list if e not in rem]
    return frozenset(
        frozenset((e, f))
        for e, f in itertools.combinations(rest, 2)
        if is_matching_covered(g.remove_edges([e, f]))
    )


# --- cuts -----------------------------------------------------------------


def is_tight_cut(g: Graph, X) -> bool:
    """Every perfect matching meets the cut exactly once (``g`` has a perfect matching)."""
    shore = _check_shore(g, X)
    if len(shore) % 2 == 0:
        # every perfect matching meets an even shore's cut an even number of times
        return False
    cut = boundary(g, shore)
    for c1, c2 in itertools.combinations(cut, 2):
        if set(c1) & set(c2):
            continue
        if perfect_matching_with(g, [c1, c2]) is not None:
            return False
    return True


def is_separating_cut(g: Graph, X) -> bool:
    """Every edge lies in a perfect matching meeting the cut exactly once."""
    shore = _check_shore(g, X)
    if len(shore) % 2 == 0:
        return False
    cut = boundary(g, shore)
    cutset = set(cut)
    for e in g.edge_list:
        if e in cutset:
            if perfect_matching_with(g, [e], cutset - {e}) is None:
                return False
            continue
        if not any(
            not set(c) & set(e) and perfect_matching_with(g, [e, c], cutset - {c}) is not None
            for c in cut
        ):
            return False
    return True


def classify_cut(g: Graph, X) -> CutClassification:
    _require_mc(g)
    _check_shore(g, X)
    return CutClassification(separating=is_separating_cut(g, X), tight=is_tight_cut(g, X))


def nontrivial_tight_cuts(g: Graph) -> list[frozenset[int]]:
    """Brute force over all odd shores; exponential in the order (small graphs only)."""
    n = g.order
    out = []
    for size in range(3, n - 2, 2):
        for xs in itertools.combinations(range(n), size):
            if is_tight_cut(g, xs):
                shore = frozenset(xs)
                comp = frozenset(range(n)) - shore
                out.append(min(shore, comp, key=sorted))
    return sorted(set(out), key=sorted)


# --- bricks and braces ----------------------------------------------------


def is_brick(g: Graph) -> bool:
    """3-connected and bicritical."""
    if g.order < 4 or g.order % 2 or not is_connected(g):
        return False
    if min(g.degrees()) < 3 or vertex_connectivity(g) < 3:
        return False
    return is_bicritical(g)


def is_brick_definitional(g: Graph) -> bool:
    """Matching covered, non-bipartite, and no non-trivial tight cut (brute force)."""
    if not is_matching_covered(g) or bipartition(g) is not None:
        return False
    return not _has_nontrivial_tight_cut(g)


def _has_nontrivial_tight_cut(g: Graph) -> bool:
    n = g.order
    for size in range(3, n - 2, 2):
        for xs in itertools.combinations(range(n), size):
            if is_tight_cut(g, xs):
                return True
    return False


def is_brace(g: Graph) -> bool:
    """Bipartite, matching covered, and every removal of two vertices from each side
    leaves a perfect matching (for order >= 6)."""
    sides = bipartition(g)
    if sides is None or not is_matching_covered(g):
        return False
    if g.order <= 4:
        return True
    A, B = sorted(sides[0]), sorted(sides[1])
    adj = list(g.adj)
    full = g.all_mask
    for a1, a2 in itertools.combinations(A, 2):
        for b1, b2 in itertools.combinations(B, 2):
            alive = full & ~((1 << a1) | (1 << a2) | (1 << b1) | (1 << b2))
            if not kernels.has_perfect_matching(adj, alive):
                return False
    return True


def is_brace_definitional(g: Graph) -> bool:
    if bipartition(g) is None or not is_matching_covered(g):
        return False
    return not _has_nontrivial_tight_cut(g)


# --- near-bipartite, essential 4-edge-connectivity ------------------------


def _odd_cycle_edges(g: Graph) -> set[Edge] | None:
    """Edges of one odd cycle, or None if the graph is bipartite."""
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for s in range(g.order):
        if s in depth:
            continue
        depth[s] = 0
        parent[s] = -1
        queue = [s]
        for x in queue:
            for y in g.neighbors(x):
                if y not in depth:
                    depth[y] = depth[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif depth[y] == depth[x]:
                    cyc = {norm_edge(x, y)}
                    a, b = x, y
                    while a != b:
                        cyc.add(norm_edge(a, parent[a]))
                        cyc.add(norm_edge(b, parent[b]))
                        a, b = parent[a], parent[b]
                    return cyc
    return None


def is_3_edge_connected(g: Graph) -> bool:
    return is_connected(g) and g.order >= 2 and edge_connectivity(g) >= 3


def is_near_bipartite(g: Graph) -> tuple[Edge, Edge] | None:
    """First pair ``(e, f)`` in lexicographic edge order with ``g - {e, f}`` bipartite and
    matching covered, or None."""
    _require_mc(g)
    odd = _odd_cycle_edges(g)
    if odd is None:
        raise GraphError("near-bipartiteness is defined for non-bipartite graphs")
    # a bipartite remainder of a 3-edge-connected cubic graph is automatically matching covered
    fast = g.is_cubic() and is_3_edge_connected(g)
    es = g.edge_list
    full = g.all_mask
    for i, e in enumerate(es):
        for f in es[i + 1:]:
            if e not in odd and f not in odd:
                continue
            h = g.remove_edges([e, f])
            if bipartition(h, full) is None:
                continue
            if fast or is_matching_covered(h):
                return e, f
    return None


def is_essentially_4ec(g: Graph) -> bool:
    if not g.is_cubic():
        raise GraphError("essential 4-edge-connectivity is defined here for cubic graphs")
    if not is_connected(g) or edge_connectivity(g) < 2:
        return False
    return not enumerate_nontrivial_3cuts(g)


# --- Dulmage-Mendelsohn witness --------------------------------------------


def dm_witness(g: Graph, e: tuple[int, int]) -> DMPartition:
    """Partition certifying that ``e`` lies in no perfect matching of a bipartite ``g``.

    Fix a perfect matching ``M``; ``B1`` is the set of vertices of ``B`` reachable from the
    ``B``-end of ``e`` along paths that alternate between ``M``-edges (B to A) and other
    edges (A to B); ``A1 = M(B1)``.
    """
    e = _require_edge(g, e)
    sides = bipartition(g)
    if sides is None:
        raise GraphError("Dulmage-Mendelsohn witnesses need a bipartite graph")
    A, B = sides
    M = maximum_matching(g)
    if 2 * len(M) != g.order:
        raise GraphError("graph has no perfect matching")
    if perfect_matching_with(g, [e]) is not None:
        raise WitnessNotApplicable(f"edge {e} lies in a perfect matching")
    mate = {}
    for u, v in M:
        mate[u] = v
        mate[v] = u
    b = e[0] if e[0] in B else e[1]
    B1 = {b}
    stack = [b]
    while stack:
        y = stack.pop()
        x = mate[y]
        for y2 in g.neighbors(x):
            if y2 not in B1:
                B1.add(y2)
                stack.append(y2)
    A1 = {mate[y] for y in B1}
    return DMPartition(frozenset(A1), frozenset(A - A1), frozenset(B1), frozenset(B - B1))


def check_dm_partition(g: Graph, e: tuple[int, int], p: DMPartition) -> list[str]:
    """Violated witness constraints (empty when the partition is valid)."""
    sides = bipartition(g)
    assert sides is not None
    A, B = sides
    problems = []
    if p.A1 | p.A2 != A or p.A1 & p.A2:
        problems.append("(A1, A2) does not partition A")
    if p.B1 | p.B2 != B or p.B1 & p.B2:
        problems.append("(B1, B2) does not partition B")
    if len(p.A1) != len(p.B1):
        problems.append("|A1| != |B1|")
    u, v = norm_edge(*e)
    if not ((u in p.A2 and v in p.B1) or (v in p.A2 and u in p.B1)):
        problems.append("edge does not join A2 to B1")
    if any((x in p.A1 and y in p.B2) or (y in p.A1 and x in p.B2) for x, y in g.edges):
        problems.append("an edge joins A1 to B2")
    return problems


# --- doubleton decomposition ----------------------------------------------


def doubleton_decomposition(g: Graph) -> list[list[int]]:
    """Vertex sets of the components of ``g`` minus all doubleton edges, in cyclic order.

    Requires an essentially 4-edge-connected cubic brick other than K4 with at least
    two removable doubletons.
    """
    if not g.is_cubic() or g.order == 4 or not is_essentially_4ec(g) or not is_brick(g):
        raise GraphError("needs an essentially 4-edge-connected cubic brick other than K4")
    cls = classify_edges(g)
    if len(cls.doubletons) < 2:
        raise GraphError("needs at least two removable doubletons")
    h = g.remove_edges(cls.doubleton_edges)
    comps = sorted(
        ([v for v in range(g.order) if c >> v & 1] for c in components(h)), key=lambda c: c[0]
    )
    where = {v: i for i, c in enumerate(comps) for v in c}
    links: dict[int, set[int]] = {i: set() for i in range(len(comps))}
    for d in cls.doubletons:
        pair = {frozenset((where[u], where[v])) for u, v in d}
        if len(pair) != 1:
            raise GraphError("a doubleton does not join a single pair of parts")
        (ends,) = pair
        if len(ends) != 2:
            raise GraphError("a doubleton lies inside one part")
        i, j = sorted(ends)
        links[i].add(j)
        links[j].add(i)
    if len(comps) != len(cls.doubletons) or any(len(s) != (1 if len(comps) == 2 else 2) for s in links.values()):
        raise GraphError("doubleton cuts do not form a cycle of parts")
    order = [0]
    while len(order) < len(comps):
        nxt = min(j for j in links[order[-1]] if j not in order)
        order.append(nxt)
    return [comps[i] for i in order]
