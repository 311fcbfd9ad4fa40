"""Graph constructions: splicing, triangle insertion, Delta-replacement, staircases,
the triangle-insertion family grown from K4, and the named-graph catalog."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from mcov.graph import (
    Graph,
    GraphError,
    MultigraphError,
    boundary,
    contract,
    is_connected,
    parse_graph6,
)
from mcov.iso import canonical_form

K4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


class CatalogError(LookupError):
    pass


@dataclass(frozen=True)
class SplicePairing:
    """Ordered pairs ``(u_i, v_i)``: neighbour ``u_i`` of the splicing vertex in the first
    graph is joined to neighbour ``v_i`` of the splicing vertex in the second."""

    correspondence: tuple[tuple[int, int], ...]

    @classmethod
    def canonical(cls, g: Graph, u: int, h: Graph, v: int) -> SplicePairing:
        return cls(tuple(zip(g.neighbors(u), h.neighbors(v))))

    def inverse(self) -> SplicePairing:
        return SplicePairing(tuple((b, a) for a, b in self.correspondence))

    def validate(self, g: Graph, u: int, h: Graph, v: int) -> None:
        left = [a for a, _ in self.correspondence]
        right = [b for _, b in self.correspondence]
        if sorted(left) != g.neighbors(u) or sorted(right) != h.neighbors(v):
            raise GraphError("pairing must cover each edge at both splicing vertices exactly once")


def splice(
    g: Graph, u: int, h: Graph, v: int, pairing: SplicePairing | None = None
) -> Graph:
    """Join ``g - u`` and ``h - v`` by one edge per pair of the pairing.

    Vertices of ``g - u`` come first, then those of ``h - v``, each side in ascending
    original order. Labels of ``h`` that collide with labels of ``g`` get an ``h:`` prefix.
    """
    if g.degree(u) != h.degree(v):
        raise GraphError(f"degree mismatch: {g.degree(u)} vs {h.degree(v)}")
    if pairing is None:
        pairing = SplicePairing.canonical(g, u, h, v)
    pairing.validate(g, u, h, v)
    gpos = {x: i for i, x in enumerate(x for x in range(g.order) if x != u)}
    off = g.order - 1
    hpos = {y: off + i for i, y in enumerate(y for y in range(h.order) if y != v)}
    edges = [(gpos[a], gpos[b]) for a, b in g.edges if u not in (a, b)]
    edges += [(hpos[a], hpos[b]) for a, b in h.edges if v not in (a, b)]
    edges += [(gpos[a], hpos[b]) for a, b in pairing.correspondence]
    labels = {gpos[x]: lab for x, lab in g.labels.items() if x != u}
    taken = set(labels.values())
    for y, lab in h.labels.items():
        if y != v:
            labels[hpos[y]] = f"h:{lab}" if lab in taken else lab
    return Graph(g.order + h.order - 2, edges, labels)


def insert_triangle(g: Graph, v: int, names: Sequence[str] | None = None) -> Graph:
    """Splice ``K4`` at the degree-3 vertex ``v``; the three new vertices are appended last."""
    if g.degree(v) != 3:
        raise GraphError(f"triangle insertion needs a degree-3 vertex, {v} has degree {g.degree(v)}")
    if names is None:
        base = g.label_of(v) or f"v{v}"
        names = [f"{base}/t{i}" for i in (1, 2, 3)]
    k4 = Graph(4, K4.edges, {1: names[0], 2: names[1], 3: names[2]})
    return splice(g, v, k4, 0, SplicePairing.canonical(g, v, k4, 0))


def insert_triangles(g: Graph, vertices: Iterable[int]) -> Graph:
    """Triangle insertion at several original vertices of ``g``."""
    targets = sorted(set(vertices), reverse=True)
    for v in targets:
        if g.degree(v) != 3:
            raise GraphError(f"vertex {v} does not have degree 3")
    out = g
    # highest index first: removing vertex v only shifts indices above v
    for v in targets:
        out = insert_triangle(out, v, [f"{out.label_of(v) or f'v{v}'}/t{i}" for i in (1, 2, 3)])
    return out


def delta_replacement(g: Graph, X: Iterable[int]) -> Graph:
    """Contract the complement of ``X`` and insert a triangle at the contracted vertex."""
    xs = set(X)
    rest = [v for v in range(g.order) if v not in xs]
    if len(rest) < 5:
        raise GraphError("Delta-replacement needs at least five vertices outside the shore")
    if not xs or len(boundary(g, xs)) != 3:
        raise GraphError("Delta-replacement needs a 3-cut")
    h = contract(g, rest, name="delta")
    return insert_triangle(h, h.order - 1, ["delta:1", "delta:2", "delta:3"])


def staircase(k: int) -> Graph:
    """The staircase on ``2k + 6`` vertices, ordered u, v, w, z, x, y, u1..uk, v1..vk."""
    if k < 1:
        raise GraphError("staircase needs k >= 1")
    u, v, w, z, x, y = range(6)
    us = [6 + i for i in range(k)]
    vs = [6 + k + i for i in range(k)]
    edges = [(u, v), (u, w), (v, w), (x, y), (x, z), (y, z), (w, z)]
    pu = [u, *us, x]
    pv = [v, *vs, y]
    edges += list(zip(pu, pu[1:])) + list(zip(pv, pv[1:]))
    edges += list(zip(us, vs))
    labels = dict(enumerate("uvwzxy"))
    labels.update({a: f"u{i + 1}" for i, a in enumerate(us)})
    labels.update({b: f"v{i + 1}" for i, b in enumerate(vs)})
    return Graph(2 * k + 6, edges, labels)


def complement(g: Graph) -> Graph:
    n = g.order
    return Graph(n, ((a, b) for a in range(n) for b in range(a + 1, n) if not g.has_edge(a, b)))


def cycle(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def prism(n: int = 3) -> Graph:
    """Two n-cycles joined by a perfect matching."""
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return Graph(2 * n, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


# --- family grown from K4 by triangle insertions ---------------------------


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for a, b in g.edge_list:
        common = g.adj[a] & g.adj[b]
        while common:
            low = common & -common
            c = low.bit_length() - 1
            common ^= low
            if c > b:
                out.append((a, b, c))
    return out


def is_in_family_G(g: Graph) -> bool:
    """Whether ``g`` arises from K4 by successive triangle insertions.

    Decided by contracting triangles, backtracking over the choice of triangle.
    """
    if not g.is_cubic():
        raise GraphError("family membership is decided for cubic graphs")
    memo: dict[str, bool] = {}

    def member(h: Graph) -> bool:
        if h.order == 4:
            return True
        if not is_connected(h):
            return False
        key = canonical_form(h)
        if key in memo:
            return memo[key]
        found = False
        for tri in triangles(h):
            try:
                smaller = contract(h, tri)
            except MultigraphError:
                continue
            smaller = Graph(smaller.order, smaller.edges)
            if member(smaller):
                found = True
                break
        memo[key] = found
        return found

    return member(Graph(g.order, g.edges))


def enumerate_family_G(max_n: int) -> list[Graph]:
    """Isomorphism-distinct members of order <= ``max_n``, by order then canonical form."""
    if max_n > 40:
        raise GraphError("enumeration is limited to order 40")
    if max_n < 4:
        return []
    level = {canonical_form(K4): K4}
    out = [K4]
    n = 4
    while n + 2 <= max_n:
        nxt: dict[str, Graph] = {}
        for g in level.values():
            for v in range(g.order):
                h = insert_triangle(g, v)
                h = Graph(h.order, h.edges)
                nxt.setdefault(canonical_form(h), h)
        level = dict(sorted(nxt.items()))
        out.extend(level.values())
        n += 2
    return out


# --- catalog --------------------------------------------------------------


@lru_cache(maxsize=1)
def _manifest() -> dict[str, dict]:
    text = resources.files("mcov").joinpath("catalog/manifest.json").read_text()
    return {entry["name"]: entry for entry in json.loads(text)["entries"]}


def catalog_names(include_pending: bool = False) -> list[str]:
    return [n for n, e in _manifest().items() if include_pending or e.get("file")]


def catalog_entry(name: str) -> dict:
    try:
        return dict(_manifest()[name])
    except KeyError:
        raise CatalogError(f"unknown catalog graph {name!r}") from None


def _validate(name: str, entry: dict, g: Graph) -> None:
    problems = []
    if g.order != entry["order"]:
        problems.append(f"order {g.order} != {entry['order']}")
    profile: dict[str, int] = {}
    for d in g.degrees():
        profile[str(d)] = profile.get(str(d), 0) + 1
    if profile != entry["degrees"]:
        problems.append(f"degree profile {profile} != {entry['degrees']}")
    if "removable_edges" in entry or "removable_classes" in entry:
        from mcov.structure import classify_edges

        cls = classify_edges(g)
        if "removable_edges" in entry and len(cls.removable) != entry["removable_edges"]:
            problems.append(f"{len(cls.removable)} removable edges != {entry['removable_edges']}")
        if "removable_classes" in entry and cls.class_count != entry["removable_classes"]:
            problems.append(f"{cls.class_count} removable classes != {entry['removable_classes']}")
    if problems:
        raise CatalogError(f"catalog entry {name!r} failed validation: " + "; ".join(problems))


@lru_cache(maxsize=None)
def _load(name: str) -> Graph:
    entry = catalog_entry(name)
    if not entry.get("file"):
        raise CatalogError(f"catalog entry {name!r} has no transcribed adjacency yet")
    text = resources.files("mcov").joinpath(f"catalog/{entry['file']}").read_text()
    g = parse_graph6(text.strip())
    _validate(name, entry, g)
    return g


def named_graph(name: str) -> Graph:
    return _load(name)
