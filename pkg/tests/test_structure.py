import itertools
import random

import pytest
from hypothesis import given, settings

from conftest import census, census_upto, perfect_matchings
from strategies import bipartite_graphs
from mcov.constructors import K4, complement, complete_bipartite, cycle, petersen, prism, staircase
from mcov.graph import Graph, GraphError, bipartition, components, edge_connectivity, vertex_connectivity
from mcov.matching import has_perfect_matching, is_bicritical
from mcov.structure import (
    CutClassification,
    WitnessNotApplicable,
    check_dm_partition,
    classify_cut,
    classify_edges,
    depends_on,
    dm_witness,
    doubleton_decomposition,
    is_brace,
    is_brace_definitional,
    is_brick,
    is_brick_definitional,
    is_essentially_4ec,
    is_matching_covered,
    is_near_bipartite,
    mutually_dependent_pairs,
    removable_doubletons,
    removable_doubletons_bruteforce,
    removable_edges,
    removable_edges_bruteforce,
)


def path4() -> Graph:
    return Graph(4, [(0, 1), (1, 2), (2, 3)])


# --- matching covered, dependence, removability ---------------------------


def test_matching_covered_examples():
    assert is_matching_covered(prism(3))
    assert not is_matching_covered(path4())
    assert not is_matching_covered(cycle(5))
    assert not is_matching_covered(Graph(4, [(0, 1), (2, 3)]))


def test_non_bicritical_3_connected_graph_without_removable_edges_exists():
    """Some 3-connected, non-bicritical cubic graph has no removable edge at all."""
    found = []
    for text, g in census_upto(12):
        if vertex_connectivity(g) < 3 or is_bicritical(g):
            continue
        assert is_matching_covered(g)
        if not removable_edges(g):
            found.append(text)
    assert found, "expected a 3-connected, non-bicritical cubic graph without removable edges"
    g = next(g for t, g in census(12) if t == found[0])
    assert not is_brick(g)
    assert classify_edges(g).removable == frozenset()


def test_depends_on_examples():
    s = staircase(1)
    # the doubleton partner of vw is xz for odd k (yz for even k), not xy
    assert depends_on(s, s.edge("v", "w"), s.edge("x", "z"))
    assert depends_on(s, s.edge("x", "z"), s.edge("v", "w"))
    assert not depends_on(s, s.edge("v", "w"), s.edge("x", "y"))
    assert depends_on(K4, (0, 1), (2, 3))
    p = petersen()
    for e, f in itertools.combinations(p.edge_list, 2):
        if not set(e) & set(f):
            assert not depends_on(p, e, f)
    with pytest.raises(GraphError):
        depends_on(K4, (0, 1), (0, 1))
    with pytest.raises(GraphError):
        depends_on(path4(), (0, 1), (2, 3))


def test_depends_on_matches_perfect_matching_enumeration():
    for _, g in census(8):
        pms = perfect_matchings(g)
        for e, f in itertools.permutations(g.edge_list, 2):
            expected = all(f in {tuple(sorted(x)) for x in pm} for pm in pms if e in {tuple(sorted(x)) for x in pm})
            assert depends_on(g, e, f) == expected


def test_removable_examples():
    assert removable_edges(K4) == frozenset()
    assert removable_doubletons(K4) == {
        frozenset({(0, 1), (2, 3)}),
        frozenset({(0, 2), (1, 3)}),
        frozenset({(0, 3), (1, 2)}),
    }
    for k in (1, 2, 3):
        s = staircase(k)
        assert removable_edges(s) == {s.edge(f"u{i}", f"v{i}") for i in range(1, k + 1)}
    s = staircase(1)
    expected = {
        frozenset({s.edge("v", "w"), s.edge("x", "z")}),
        frozenset({s.edge("u", "w"), s.edge("y", "z")}),
    }
    assert removable_doubletons(s) == expected == removable_doubletons_bruteforce(s)
    assert not is_matching_covered(s.remove_edges([s.edge("v", "w"), s.edge("x", "y")]))
    s2 = staircase(2)
    assert removable_doubletons(s2) == {
        frozenset({s2.edge("v", "w"), s2.edge("y", "z")}),
        frozenset({s2.edge("u", "w"), s2.edge("x", "z")}),
    }
    p = petersen()
    assert removable_edges(p) == p.edges
    assert removable_doubletons(p) == frozenset()
    with pytest.raises(GraphError):
        removable_edges(path4())


def test_classification_partitions_edges():
    for _, g in census_upto(12):
        if not is_matching_covered(g):
            continue
        c = classify_edges(g)
        assert c.removable | c.doubleton_edges | c.neither == g.edges
        assert not (c.removable & c.doubleton_edges)
        assert not (c.neither & (c.removable | c.doubleton_edges))
        assert c.class_count == len(c.removable) + len(c.doubletons)


def test_removable_matches_definition_on_census():
    for _, g in census_upto(12):
        if not is_matching_covered(g):
            continue
        assert removable_edges(g) == removable_edges_bruteforce(g)
        assert removable_doubletons(g) == removable_doubletons_bruteforce(g)


def test_doubletons_are_mutually_dependent():
    for _, g in census_upto(12):
        if not is_matching_covered(g):
            continue
        for d in removable_doubletons(g):
            e, f = sorted(d)
            assert depends_on(g, e, f) and depends_on(g, f, e)


def test_doubleton_overlap_is_reported():
    """Whether one edge can lie in two doubletons is not settled in general; record it."""
    overlaps = 0
    for _, g in census_upto(14):
        if is_matching_covered(g) and classify_edges(g).doubletons_overlap():
            overlaps += 1
    print(f"matching covered cubic graphs (n <= 14) with overlapping doubletons: {overlaps}")
    assert overlaps >= 0


def test_mutually_dependent_pairs_in_bricks_leave_bipartite_graphs():
    for _, g in census_upto(12):
        if is_brick(g):
            for e, f in mutually_dependent_pairs(g):
                assert bipartition(g.remove_edges([e, f])) is not None


def test_cubic_bipartite_edges_removable_or_in_2cut():
    for _, g in census_upto(14):
        if bipartition(g) is None:
            continue
        rem = removable_edges(g)
        for e in g.edge_list:
            if e in rem:
                continue
            h = g.remove_edges([e])
            assert any(len(components(h.remove_edges([f]))) > 1 for f in h.edge_list)


# --- cuts -----------------------------------------------------------------


def test_classify_cut_examples():
    s = staircase(1)
    assert classify_cut(s, {0}) == CutClassification(separating=True, tight=True)
    c = classify_cut(s, [s.vertex(x) for x in "uvw"])
    assert c.separating and not c.tight and c.good
    with pytest.raises(GraphError):
        classify_cut(s, set())
    with pytest.raises(GraphError):
        classify_cut(path4(), {0})


def test_cut_classification_invariants():
    for _, g in census(8):
        for k in (1, 3):
            for X in itertools.combinations(range(g.order), k):
                c = classify_cut(g, X)
                assert (not c.tight) or c.separating
                assert c.good == (c.separating and not c.tight)


def test_tight_cut_against_perfect_matchings():
    for _, g in census(8):
        pms = perfect_matchings(g)
        for X in itertools.combinations(range(g.order), 3):
            Xs = set(X)
            tight = all(sum((u in Xs) != (v in Xs) for u, v in pm) == 1 for pm in pms)
            assert classify_cut(g, X).tight == tight


# --- bricks and braces ----------------------------------------------------


def test_brick_examples():
    assert is_brick(K4)
    assert not is_brick(complete_bipartite(3, 3))
    for k in range(1, 6):
        assert is_brick(staircase(k))
    assert is_brick(petersen())
    assert not is_brick(cycle(6))


def test_brick_routes_agree_small():
    for _, g in census_upto(10):
        if is_matching_covered(g):
            assert is_brick(g) == is_brick_definitional(g)


def test_brace_examples():
    assert is_brace(complete_bipartite(3, 3))
    assert is_brace_definitional(complete_bipartite(3, 3))
    assert not is_brace(complement(cycle(6)))
    assert not is_brace(cycle(6))
    assert not is_brace_definitional(cycle(6))
    assert is_brace(cycle(4))


def test_brace_routes_agree_on_cubic_bipartite():
    for _, g in census_upto(12):
        if bipartition(g) is not None:
            assert is_brace(g) == is_brace_definitional(g)


@settings(max_examples=120, deadline=None)
@given(bipartite_graphs(max_side=5))
def test_brace_routes_agree_random(g):
    assert is_brace(g) == is_brace_definitional(g)


@settings(max_examples=120, deadline=None)
@given(bipartite_graphs(max_side=6))
def test_bipartite_matching_covered_vertex_pairs(g):
    """In a matching covered bipartite graph, deleting one vertex per side leaves a perfect matching."""
    if not is_matching_covered(g):
        return
    A, B = bipartition(g)
    for a in A:
        for b in B:
            assert has_perfect_matching(g, g.all_mask & ~(1 << a) & ~(1 << b))


# --- near-bipartite, essential 4-edge-connectivity ------------------------


def test_near_bipartite_examples():
    e, f = is_near_bipartite(K4)
    assert not set(e) & set(f)
    s = staircase(1)
    pair = is_near_bipartite(s)
    assert pair is not None
    h = s.remove_edges(pair)
    assert bipartition(h) is not None and is_matching_covered(h)
    assert is_near_bipartite(petersen()) is None
    with pytest.raises(GraphError):
        is_near_bipartite(cycle(6))
    with pytest.raises(GraphError):
        is_near_bipartite(path4())


def test_near_bipartite_fast_path_matches_full_search():
    for _, g in census_upto(12):
        if not is_matching_covered(g) or bipartition(g) is not None:
            continue
        full = None
        for e, f in itertools.combinations(g.edge_list, 2):
            h = g.remove_edges([e, f])
            if bipartition(h) is not None and is_matching_covered(h):
                full = (e, f)
                break
        assert is_near_bipartite(g) == full


def test_essentially_4ec_examples():
    assert is_essentially_4ec(K4)
    assert not is_essentially_4ec(staircase(2))
    assert is_essentially_4ec(petersen())
    with pytest.raises(GraphError):
        is_essentially_4ec(cycle(6))
    # two copies of K4 with one edge subdivided, joined at the subdivision vertices by a bridge
    half = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)]
    bridged = Graph(10, half + [(a + 5, b + 5) for a, b in half] + [(4, 9)])
    assert bridged.is_cubic() and edge_connectivity(bridged) == 1
    assert not is_essentially_4ec(bridged)


# --- Dulmage-Mendelsohn witness ---------------------------------------------


def test_dm_witness_path():
    p = dm_witness(path4(), (1, 2))
    assert (p.A1, p.A2, p.B1, p.B2) == ({0}, {2}, {1}, {3})
    assert check_dm_partition(path4(), (1, 2), p) == []


def test_dm_witness_errors():
    with pytest.raises(WitnessNotApplicable):
        dm_witness(path4(), (0, 1))
    with pytest.raises(GraphError):
        dm_witness(K4, (0, 1))
    with pytest.raises(GraphError):
        dm_witness(Graph(4, [(0, 1), (1, 2)]), (1, 2))


def test_dm_witness_hexagon_with_chord():
    g = Graph(6, [*cycle(6).edges, (0, 3)])
    allowed = any((0, 3) in {tuple(sorted(e)) for e in pm} for pm in perfect_matchings(g))
    if allowed:
        with pytest.raises(WitnessNotApplicable):
            dm_witness(g, (0, 3))
    else:
        assert check_dm_partition(g, (0, 3), dm_witness(g, (0, 3))) == []


def test_dm_witness_random_bipartite():
    rng = random.Random(7)
    checked = 0
    while checked < 50:
        k = rng.randint(2, 6)
        es = [(a, k + b) for a in range(k) for b in range(k) if rng.random() < 0.45]
        es += [(i, k + i) for i in range(k)]
        g = Graph(2 * k, set(es))
        if bipartition(g) is None:
            continue
        from mcov.matching import allowed_edges

        ok = allowed_edges(g)
        for e in g.edge_list:
            if e not in ok:
                assert check_dm_partition(g, e, dm_witness(g, e)) == []
                checked += 1


# --- doubleton decomposition ----------------------------------------------


def first_decomposable():
    for _, g in census_upto(16):
        if g.order > 4 and is_brick(g) and is_essentially_4ec(g) and len(removable_doubletons(g)) >= 2:
            return g
    raise AssertionError("no qualifying brick in the census")


def test_doubleton_decomposition_first_qualifying_brick():
    g = first_decomposable()
    parts = doubleton_decomposition(g)
    doubles = removable_doubletons(g)
    assert len(parts) == len(doubles)
    assert sorted(v for p in parts for v in p) == list(range(g.order))
    where = {v: i for i, p in enumerate(parts) for v in p}
    for p in parts:
        sub = Graph(g.order, [e for e in g.edges if e[0] in p and e[1] in p])
        sides = bipartition(sub, sum(1 << v for v in p))
        assert sides is not None and len(sides[0]) == len(sides[1])
    k = len(parts)
    for i in range(k):
        j = (i + 1) % k
        between = {e for e in g.edges if {where[e[0]], where[e[1]]} == {i, j}}
        assert between in doubles
    for i, j in itertools.combinations(range(k), 2):
        if (j - i) % k not in (1, k - 1):
            assert not any({where[e[0]], where[e[1]]} == {i, j} for e in g.edges)


def test_doubleton_decomposition_errors():
    with pytest.raises(GraphError):
        doubleton_decomposition(K4)
    with pytest.raises(GraphError):
        doubleton_decomposition(petersen())  # no doubletons at all
    one = next(g for t, g in census(12) if t == "K?ABEagE`gH_")
    assert is_brick(one) and is_essentially_4ec(one) and len(removable_doubletons(one)) == 1
    with pytest.raises(GraphError):
        doubleton_decomposition(one)
