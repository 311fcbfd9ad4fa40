"""Per-graph analysis and the registry of census checks.

Each check has a scope filter and an assertion. ``run_checks`` evaluates the
requested checks on every graph of a graph6 stream (optionally in a process
pool) and aggregates the results in input order, so reports are identical for
serial and parallel runs.
"""

from __future__ import annotations

import datetime as _dt
import itertools
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator

from mcov import kernels
from mcov.constructors import insert_triangle, named_graph, staircase
from mcov.graph import (
    Edge,
    Graph,
    GraphError,
    bipartition,
    boundary,
    edge_connectivity,
    enumerate_nontrivial_3cuts,
    induced_subgraph,
    is_connected,
    norm_edge,
    read_graph6_lines,
    to_graph6,
)
from mcov.iso import canonical_form
from mcov.matching import maximum_matching_in, perfect_matching_with
from mcov.structure import (
    RemovableClassification,
    classify_edges,
    dependence,
    is_brace,
    is_brick,
    is_essentially_4ec,
    is_matching_covered,
    is_near_bipartite,
    is_separating_cut,
    is_tight_cut,
    mutually_dependent_pairs,
)


class UnknownCheckError(KeyError):
    pass


# --- analysis -------------------------------------------------------------


@dataclass(frozen=True)
class AnalysisReport:
    order: int
    cubic: bool
    matching_covered: bool
    brick: bool
    brace: bool
    near_bipartite: bool
    essentially_4ec: bool | None
    removable_edge_count: int | None
    doubleton_count: int | None
    removable_class_count: int | None
    max_removable_matching: int | None
    neither_count: int | None

    def as_dict(self) -> dict:
        return asdict(self)


def max_removable_matching(g: Graph) -> int:
    """Size of a maximum matching using only removable edges."""
    return len(maximum_matching_in(g, classify_edges(g).removable))


def analyze(g: Graph) -> AnalysisReport:
    cubic = g.is_cubic()
    e4ec = is_essentially_4ec(g) if cubic else None
    if not is_matching_covered(g):
        return AnalysisReport(g.order, cubic, False, False, False, False, e4ec, None, None, None, None, None)
    cls = classify_edges(g)
    bip = bipartition(g) is not None
    return AnalysisReport(
        order=g.order,
        cubic=cubic,
        matching_covered=True,
        brick=is_brick(g),
        brace=is_brace(g),
        near_bipartite=(not bip) and is_near_bipartite(g) is not None,
        essentially_4ec=e4ec,
        removable_edge_count=len(cls.removable),
        doubleton_count=len(cls.doubletons),
        removable_class_count=cls.class_count,
        max_removable_matching=max_removable_matching(g),
        neither_count=len(cls.neither),
    )


# --- per-graph facts shared between checks --------------------------------


class Facts:
    """Lazily computed properties of one input graph."""

    def __init__(self, g: Graph):
        self.g = g

    @cached_property
    def cubic(self) -> bool:
        return self.g.is_cubic()

    @cached_property
    def connected(self) -> bool:
        return is_connected(self.g)

    @cached_property
    def edge_conn(self) -> int:
        if not self.connected or self.g.order < 2:
            return 0
        return edge_connectivity(self.g)

    @cached_property
    def mc(self) -> bool:
        return is_matching_covered(self.g)

    @cached_property
    def bipartite(self) -> bool:
        return bipartition(self.g) is not None

    @cached_property
    def brick(self) -> bool:
        return is_brick(self.g)

    @cached_property
    def cls(self) -> RemovableClassification:
        return classify_edges(self.g)

    @cached_property
    def mrm(self) -> int:
        return max_removable_matching(self.g)

    @cached_property
    def near_bipartite(self) -> bool:
        return self.mc and not self.bipartite and is_near_bipartite(self.g) is not None

    @cached_property
    def e4ec(self) -> bool:
        return self.cubic and is_essentially_4ec(self.g)

    @cached_property
    def cuts3(self) -> list[frozenset[int]]:
        return [c.shore for c in enumerate_nontrivial_3cuts(self.g)]

    @cached_property
    def canon(self) -> str:
        return canonical_form(self.g)


_EXCEPTIONS = ("k4", "c6bar", "r8")


def _exception_forms() -> dict[str, str]:
    return {canonical_form(named_graph(n)): n for n in _EXCEPTIONS}


def _exception_name(f: Facts) -> str | None:
    if f.g.order > 8:
        return None
    return _exception_forms().get(f.canon)


# --- checks ---------------------------------------------------------------


@dataclass
class Outcome:
    in_scope: bool
    violations: list[str] = field(default_factory=list)
    tally: Counter = field(default_factory=Counter)
    members: list[str] = field(default_factory=list)


def _out_of_scope() -> Outcome:
    return Outcome(False)


def _cubic_brick(f: Facts) -> bool:
    return f.cubic and f.connected and f.brick


def _ec3_near_bipartite_cubic(f: Facts) -> bool:
    return f.cubic and f.edge_conn >= 3 and f.mc and f.near_bipartite


def chk_thm_main(f: Facts) -> Outcome:
    if not _cubic_brick(f):
        return _out_of_scope()
    out = Outcome(True)
    name = _exception_name(f)
    if name is not None:
        out.tally["excluded_exceptions"] += 1
        return out
    n, m = f.g.order, f.mrm
    out.tally["checked"] += 1
    if 7 * m < n:
        out.violations.append(f"max removable matching {m} < {n}/7")
    elif 7 * m == n:
        out.tally["attains_n_over_7"] += 1
    elif m == (n + 6) // 7:
        out.tally["attains_ceiling"] += 1
    return out


def chk_thm_con(f: Facts) -> Outcome:
    if not _ec3_near_bipartite_cubic(f) or f.g.order == 4:
        return _out_of_scope()
    out = Outcome(True)
    pop = "bricks" if f.brick else "non_bricks"
    out.tally[pop] += 1
    n, m = f.g.order, f.mrm
    if 2 * m < n - 6:
        out.violations.append(f"[{pop}] max removable matching {m} < {n}/2 - 3")
        out.tally[f"{pop}_violations"] += 1
    elif 2 * m == n - 6:
        out.tally[f"{pop}_sharp"] += 1
    return out


def chk_three_classes(f: Facts) -> Outcome:
    if not _cubic_brick(f):
        return _out_of_scope()
    out = Outcome(True)
    out.tally["bricks"] += 1
    if f.cls.class_count == 3:
        out.tally["three_class_bricks"] += 1
        out.members.append(to_graph6(f.g))
        if f.g.order > 16:
            out.violations.append(f"three removable classes on {f.g.order} > 16 vertices")
    return out


def _finish_three_classes(summary: dict, violations: list[dict]) -> None:
    if summary.get("three_class_bricks", 0) > 9:
        violations.append({"graph6": "", "detail": f"{summary['three_class_bricks']} three-class bricks found, at most nine exist"})


def chk_lem_2e(f: Facts) -> Outcome:
    if not (f.cubic and f.connected and f.edge_conn >= 2):
        return _out_of_scope()
    out = Outcome(True)
    if not f.mc:
        out.violations.append("2-edge-connected cubic graph is not matching covered")
    return out


def chk_3cut_sep(f: Facts) -> Outcome:
    if not (f.cubic and f.connected and f.edge_conn >= 2):
        return _out_of_scope()
    out = Outcome(True)
    if not f.mc:
        out.violations.append("not matching covered; 3-cuts cannot be tested")
        return out
    for X in f.cuts3:
        out.tally["nontrivial_3cuts"] += 1
        if not is_separating_cut(f.g, X):
            out.violations.append(f"3-cut with shore {sorted(X)} is not separating")
    return out


def chk_cor_bip(f: Facts) -> Outcome:
    if not (f.cubic and f.bipartite and f.edge_conn >= 3):
        return _out_of_scope()
    out = Outcome(True)
    missing = f.g.edges - f.cls.removable
    if missing:
        out.violations.append(f"non-removable edges {sorted(missing)}")
    return out


def _e4ec_brick(f: Facts) -> bool:
    return f.cubic and f.connected and f.brick and f.e4ec


def chk_thm_4ecr(f: Facts) -> Outcome:
    if not _e4ec_brick(f):
        return _out_of_scope()
    out = Outcome(True)
    if f.cls.neither:
        out.violations.append(f"edges neither removable nor in a doubleton: {sorted(f.cls.neither)}")
    if f.cls.doubletons_overlap():
        out.tally["overlapping_doubletons"] += 1
    return out


def chk_cor_4ecr(f: Facts) -> Outcome:
    if not _e4ec_brick(f) or f.g.order == 4:
        return _out_of_scope()
    out = Outcome(True)
    if 2 * f.mrm != f.g.order:
        out.violations.append(f"removable edges span a matching of size {f.mrm} only")
    return out


def chk_4econ_ii(f: Facts) -> Outcome:
    if not _e4ec_brick(f) or f.g.order == 4 or not f.cls.doubletons:
        return _out_of_scope()
    out = Outcome(True)
    if perfect_matching_with(f.g, [], f.cls.doubleton_edges) is None:
        out.violations.append("every perfect matching meets a doubleton")
    return out


def chk_thm_lo(f: Facts) -> Outcome:
    if not _cubic_brick(f):
        return _out_of_scope()
    out = Outcome(True)
    for e, h in mutually_dependent_pairs(f.g):
        out.tally["mutually_dependent_pairs"] += 1
        if bipartition(f.g.remove_edges([e, h])) is None:
            out.violations.append(f"removing {e} and {h} leaves a non-bipartite graph")
    return out


def _contraction_bipartite(g: Graph, X: frozenset[int]) -> bool:
    """Whether ``g / X`` is bipartite (parallel edges do not affect bipartiteness)."""
    rest = [v for v in range(g.order) if v not in X]
    ends = sorted({v for e in boundary(g, X) for v in e if v not in X})
    h = induced_subgraph(g, rest)
    pos = {v: i for i, v in enumerate(rest)}
    h = Graph(h.order + 1, list(h.edges) + [(pos[v], h.order) for v in ends])
    return bipartition(h) is not None


def chk_cor_tc(f: Facts) -> Outcome:
    if not _ec3_near_bipartite_cubic(f):
        return _out_of_scope()
    out = Outcome(True)
    full = frozenset(range(f.g.order))
    for X in f.cuts3:
        out.tally["nontrivial_3cuts"] += 1
        tight = is_tight_cut(f.g, X)
        bip = _contraction_bipartite(f.g, X) or _contraction_bipartite(f.g, full - X)
        out.tally["tight" if tight else "not_tight"] += 1
        if tight != bip:
            out.violations.append(
                f"shore {sorted(X)}: tight={tight} but bipartite contraction={bip}"
            )
    return out


def chk_nocross(f: Facts) -> Outcome:
    if not _cubic_brick(f):
        return _out_of_scope()
    out = Outcome(True)
    full = frozenset(range(f.g.order))
    for X, Y in itertools.combinations(f.cuts3, 2):
        if all((X & Y, X - Y, Y - X, full - X - Y)):
            out.violations.append(f"3-cuts with shores {sorted(X)} and {sorted(Y)} cross")
    return out


def _insertions(f: Facts) -> Iterator[tuple[int, Graph]]:
    for v in range(f.g.order):
        yield v, insert_triangle(Graph(f.g.order, f.g.edges), v)


def _shift(e: Edge, v: int) -> Edge:
    return norm_edge(*(x - (x > v) for x in e))


def chk_e3(f: Facts) -> Outcome:
    if not (f.cubic and f.mc):
        return _out_of_scope()
    out = Outcome(True)
    n = f.g.order
    new = {n - 1, n, n + 1}
    for v, h in _insertions(f):
        rem = classify_edges(h).removable
        for e in h.edge_list:
            if (e[0] in new) != (e[1] in new):
                out.tally["splicing_edges"] += 1
                if e in rem:
                    out.violations.append(f"splicing edge {e} of the insertion at {v} is removable")
    return out


def chk_spl_i(f: Facts) -> Outcome:
    if not (f.cubic and f.mc):
        return _out_of_scope()
    out = Outcome(True)
    for v, h in _insertions(f):
        rem = classify_edges(h).removable
        for e in sorted(f.cls.removable):
            if v in e:
                continue
            out.tally["edges_checked"] += 1
            if _shift(e, v) not in rem:
                out.violations.append(f"removable edge {e} is not removable after insertion at {v}")
    return out


def _not_depended_from(g: Graph, cut: list[Edge], other_side: frozenset[int]) -> list[Edge]:
    """Edges of ``cut`` on which no edge inside ``other_side`` depends."""
    dep = dependence(g)
    inner = [e for e in g.edge_list if e[0] in other_side and e[1] in other_side]
    return [c for c in cut if not any(c in dep[e] for e in inner)]


def _covering_matching(
    g: Graph, X: frozenset[int], e0: Edge, e: Edge, cut: list[Edge], allowed_cut: list[Edge]
) -> bool:
    """Whether ``g - e0`` has a matching containing ``e`` that covers ``X`` and meets the cut
    only in edges of ``allowed_cut`` (an odd number of them)."""
    xmask = sum(1 << v for v in X)
    adj = [(a & xmask) if (xmask >> v & 1) else 0 for v, a in enumerate(g.adj)]
    a0, b0 = e0
    adj[a0] &= ~(1 << b0)
    adj[b0] &= ~(1 << a0)
    for size in (1, 3):
        for S in itertools.combinations(allowed_cut, size):
            if e in cut and e not in S:
                continue
            ends = [v for c in S for v in c]
            if len(set(ends)) != 2 * size:
                continue
            alive = xmask
            for v in ends:
                alive &= ~(1 << v)
            if e not in cut:
                if not (alive >> e[0] & 1 and alive >> e[1] & 1):
                    continue
                alive &= ~((1 << e[0]) | (1 << e[1]))
            if kernels.has_perfect_matching(adj, alive):
                return True
    return False


def easy_hypothesis(g: Graph, X: frozenset[int], e0: Edge, e1: Edge) -> bool:
    """The matching-extension hypothesis for ``e0`` inside ``X`` with exceptional cut edge ``e1``."""
    cut = boundary(g, X)
    inner = [e for e in g.edge_list if e[0] in X and e[1] in X]
    for e in cut + inner:
        if e == e0:
            continue
        allowed = [e] if (e in cut and e != e1) else cut
        if not _covering_matching(g, X, e0, e, cut, allowed):
            return False
    return True


def chk_easy(f: Facts) -> Outcome:
    if not (f.cubic and f.mc):
        return _out_of_scope()
    out = Outcome(True)
    g = f.g
    full = frozenset(range(g.order))
    for shore in f.cuts3:
        if is_tight_cut(g, shore) or not is_separating_cut(g, shore):
            continue
        out.tally["good_3cuts"] += 1
        for X in (shore, full - shore):
            cut = boundary(g, X)
            for e1 in _not_depended_from(g, cut, full - X):
                for e0 in (e for e in g.edge_list if e[0] in X and e[1] in X):
                    if not easy_hypothesis(g, X, e0, e1):
                        continue
                    out.tally["applications"] += 1
                    if e0 not in f.cls.removable:
                        out.violations.append(
                            f"shore {sorted(X)}, e0={e0}, e1={e1}: hypothesis holds but e0 is not removable"
                        )
    return out


def chk_ne(f: Facts) -> Outcome:
    if not _cubic_brick(f):
        return _out_of_scope()
    out = Outcome(True)
    g = f.g
    full = frozenset(range(g.order))
    target = canonical_form(named_graph("g2star"))
    for shore in f.cuts3:
        for X in (shore, full - shore):
            if len(X) != 5 or canonical_form(induced_subgraph(g, sorted(X))) != target:
                continue
            out.tally["g2star_shores"] += 1
            e1 = _not_depended_from(g, boundary(g, X), full - X)
            inside = [e for e in f.cls.removable if e[0] in X and e[1] in X]
            m = len(maximum_matching_in(g, inside))
            need = 2 if len(e1) >= 2 else 1
            if m < need:
                out.violations.append(
                    f"shore {sorted(X)}: removable matching {m} inside, expected >= {need} (|E1|={len(e1)})"
                )
    return out


def gen_3con() -> Iterator[tuple[int, Graph]]:
    for k in range(1, 9):
        yield k, staircase(k)


def chk_3con(f: Facts) -> Outcome:
    g = f.g
    out = Outcome(True)
    k = (g.order - 6) // 2
    rungs = {norm_edge(g.vertex(f"u{i}"), g.vertex(f"v{i}")) for i in range(1, k + 1)}
    if f.cls.removable != rungs:
        out.violations.append(f"removable edges {sorted(f.cls.removable)} differ from the rungs {sorted(rungs)}")
    return out


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    evaluate: Callable[[Facts], Outcome]
    generator: Callable[[], Iterable[tuple[int, Graph]]] | None = None
    finish: Callable[[dict, list], None] | None = None
    notice: str | None = None


REGISTRY: dict[str, Check] = {
    c.id: c
    for c in [
        Check("thm-main", "cubic bricks other than K4, the prism and R8 have a removable matching of size >= n/7", chk_thm_main),
        Check("thm-con", "3-edge-connected near-bipartite cubic graphs other than K4 have a removable matching of size >= n/2 - 3", chk_thm_con),
        Check("prop-three-classes", "at most nine cubic bricks have exactly three removable classes, all on <= 16 vertices", chk_three_classes, finish=_finish_three_classes),
        Check("lem-2e", "2-edge-connected cubic graphs are matching covered", chk_lem_2e),
        Check("prop-3cut-sep", "every 3-cut of a 2-edge-connected cubic graph is separating", chk_3cut_sep),
        Check("cor-bip", "every edge of a 3-edge-connected cubic bipartite graph is removable", chk_cor_bip),
        Check("thm-4ecr", "in essentially 4-edge-connected cubic bricks every edge is removable or in a removable doubleton", chk_thm_4ecr),
        Check("cor-4ecr", "essentially 4-edge-connected cubic bricks other than K4 have a perfect matching of removable edges", chk_cor_4ecr),
        Check("prop-4econ-ii", "essentially 4-edge-connected cubic bricks with doubletons have a perfect matching avoiding all doubleton edges", chk_4econ_ii),
        Check("thm-lo", "removing two mutually dependent edges from a cubic brick leaves a bipartite graph", chk_thm_lo),
        Check("cor-tc", "a nontrivial 3-cut of a 3-edge-connected near-bipartite cubic graph is tight iff a contraction is bipartite", chk_cor_tc),
        Check("prop-nocross", "no two 3-cuts of a cubic brick cross", chk_nocross),
        Check("prop-e3", "no splicing edge of a triangle insertion is removable", chk_e3),
        Check("prop-spl-i", "removable edges away from the insertion vertex stay removable after triangle insertion", chk_spl_i),
        Check("prop-easy", "an edge inside a good 3-cut shore satisfying the matching-extension hypothesis is removable", chk_easy),
        Check(
            "prop-ne",
            "5-vertex triangle-extension shores of cubic bricks carry removable matchings of size >= 1, and >= 2 when two cut edges are undepended",
            chk_ne,
            notice="only the 5-vertex shore case is checked; the 11-vertex shore graph is not transcribed in the catalog",
        ),
        Check("prop-3con", "removable edges of staircase(k) are exactly its rungs, k = 1..8 (ignores the input stream)", chk_3con, generator=gen_3con),
    ]
}


def resolve_checks(ids: Iterable[str]) -> list[Check]:
    out = []
    for cid in ids:
        if cid not in REGISTRY:
            raise UnknownCheckError(cid)
        if REGISTRY[cid] not in out:
            out.append(REGISTRY[cid])
    return out


# --- running --------------------------------------------------------------


@dataclass
class VerificationReport:
    check_id: str
    inputs_processed: int
    violations: list[dict]
    summary: dict
    timestamp: str = ""

    def as_dict(self, timestamp: bool = True) -> dict:
        d = {
            "check_id": self.check_id,
            "inputs_processed": self.inputs_processed,
            "violations": self.violations,
            "summary": self.summary,
        }
        if timestamp:
            d["timestamp"] = self.timestamp
        return d


def _evaluate(args: tuple[int, str, tuple[str, ...]]) -> tuple[int, str, list[tuple[str, Outcome]]]:
    lineno, text, ids = args
    from mcov.graph import parse_graph6

    f = Facts(parse_graph6(text))
    return lineno, text, [(cid, REGISTRY[cid].evaluate(f)) for cid in ids]


def effective_jobs(jobs: int | None) -> int:
    env = os.environ.get("MCOV_JOBS")
    if env:
        try:
            jobs = int(env)
        except ValueError:
            raise GraphError(f"MCOV_JOBS must be an integer, got {env!r}") from None
    return max(1, jobs or 1)


def run_checks(
    lines: Iterable[str], check_ids: Iterable[str], jobs: int | None = None
) -> list[VerificationReport]:
    """Evaluate checks over a graph6 stream; raises ``Graph6Error`` (with line number) on bad input."""
    checks = resolve_checks(check_ids)
    stream_ids = tuple(c.id for c in checks if c.generator is None)
    # parse everything first so malformed input fails before any work is done
    items = [(lineno, text.strip(), stream_ids) for lineno, text, _ in read_graph6_lines(lines)]
    results: dict[str, list[tuple[int, str, Outcome]]] = {c.id: [] for c in checks}
    if stream_ids:
        n = effective_jobs(jobs)
        if n > 1 and len(items) > 1:
            with ProcessPoolExecutor(max_workers=n) as pool:
                evaluated = list(pool.map(_evaluate, items, chunksize=max(1, len(items) // (4 * n))))
        else:
            evaluated = [_evaluate(it) for it in items]
        evaluated.sort(key=lambda r: r[0])
        for lineno, text, outs in evaluated:
            for cid, o in outs:
                results[cid].append((lineno, text, o))
    for c in checks:
        if c.generator is not None:
            for key, g in c.generator():
                results[c.id].append((key, to_graph6(g), c.evaluate(Facts(g))))
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    reports = []
    for c in checks:
        rows = results[c.id]
        violations = []
        tally: Counter = Counter()
        members = []
        in_scope = 0
        for key, text, o in rows:
            if not o.in_scope:
                continue
            in_scope += 1
            tally.update(o.tally)
            members.extend(o.members)
            violations.extend({"graph6": text, "detail": d} for d in o.violations)
        summary = {k: v for k, v in sorted(tally.items()) if v}
        summary["in_scope"] = in_scope
        if c.generator is not None:
            summary["source"] = "generated"
        if members:
            summary["members"] = members
        if c.notice:
            summary["notice"] = c.notice
        if c.finish is not None:
            c.finish(summary, violations)
        summary["violation_count"] = len(violations)
        reports.append(
            VerificationReport(c.id, len(rows), violations, dict(sorted(summary.items())), stamp)
        )
    return reports


def reports_to_json(reports: list[VerificationReport], timestamp: bool = True) -> str:
    return json.dumps([r.as_dict(timestamp) for r in reports], indent=2, sort_keys=True) + "\n"
