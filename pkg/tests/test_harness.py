import json

import pytest

from conftest import CENSUS_DIR, census, census_upto
from mcov.constructors import K4, complete_bipartite, petersen, staircase
from mcov.graph import Graph, Graph6Error, GraphError, parse_graph6, to_graph6
from mcov.harness import (
    REGISTRY,
    Facts,
    UnknownCheckError,
    _finish_three_classes,
    analyze,
    effective_jobs,
    max_removable_matching,
    reports_to_json,
    run_checks,
)
from mcov.structure import is_brick

def lines_upto(n: int) -> list[str]:
    return [t + "\n" for t, _ in census_upto(n)]


# --- analyze --------------------------------------------------------------


def test_analyze_k4():
    r = analyze(K4)
    assert r.brick and r.matching_covered and r.cubic and r.essentially_4ec
    assert (r.removable_edge_count, r.doubleton_count, r.removable_class_count) == (0, 3, 3)
    assert r.max_removable_matching == 0 and r.neither_count == 0


def test_analyze_staircase_one():
    r = analyze(staircase(1))
    assert r.brick and r.near_bipartite and not r.essentially_4ec
    assert r.removable_edge_count == 1 and r.doubleton_count == 2
    assert r.removable_class_count == 3 and r.max_removable_matching == 1


def test_analyze_brace_and_non_matching_covered():
    r = analyze(complete_bipartite(3, 3))
    assert r.brace and not r.brick and r.removable_edge_count == 9
    path = analyze(Graph(4, [(0, 1), (1, 2), (2, 3)]))
    assert not path.matching_covered and path.removable_edge_count is None
    assert path.essentially_4ec is None  # only defined for cubic graphs
    assert set(path.as_dict()) == set(r.as_dict())


def test_max_removable_matching_values():
    assert [max_removable_matching(staircase(k)) for k in range(1, 7)] == [1, 2, 3, 4, 5, 6]
    assert max_removable_matching(K4) == 0
    assert max_removable_matching(petersen()) == 5


def test_ceiling_attained_below_order_14():
    g = parse_graph6("ICOef?kF?")
    assert g.order == 10 and is_brick(g)
    assert max_removable_matching(g) == 2 == -(-g.order // 7)


# --- registry and reports -------------------------------------------------


def test_registry_ids():
    assert list(REGISTRY) == [
        "thm-main", "thm-con", "prop-three-classes", "lem-2e", "prop-3cut-sep", "cor-bip",
        "thm-4ecr", "cor-4ecr", "prop-4econ-ii", "thm-lo", "cor-tc", "prop-nocross",
        "prop-e3", "prop-spl-i", "prop-easy", "prop-ne", "prop-3con",
    ]
    assert all(c.description for c in REGISTRY.values())


def test_unknown_check_and_malformed_input():
    with pytest.raises(UnknownCheckError):
        run_checks(["C~\n"], ["thm-main", "nope"])
    with pytest.raises(Graph6Error, match="line 2"):
        run_checks(["C~\n", "C~~\n"], ["thm-main"])


def test_report_shape():
    (r,) = run_checks(lines_upto(8), ["thm-main"])
    d = r.as_dict()
    assert set(d) == {"check_id", "inputs_processed", "violations", "summary", "timestamp"}
    assert d["check_id"] == "thm-main" and d["inputs_processed"] == 1 + 2 + 5
    assert d["violations"] == [] and d["summary"]["violation_count"] == 0
    # four cubic bricks of order <= 8; K4, the prism and R8 are excluded, GCrb`o is checked
    assert d["summary"]["excluded_exceptions"] == 3 and d["summary"]["in_scope"] == 4
    assert d["summary"]["checked"] == 1


def test_all_checks_clean_up_to_order_10():
    reports = run_checks(lines_upto(10), list(REGISTRY))
    assert [r.check_id for r in reports] == list(REGISTRY)
    for r in reports:
        assert r.violations == [], (r.check_id, r.violations[:3])
        assert r.summary["violation_count"] == 0
    by_id = {r.check_id: r for r in reports}
    assert by_id["prop-3con"].inputs_processed == 8
    assert by_id["prop-3con"].summary["source"] == "generated"
    assert "notice" in by_id["prop-ne"].summary


def test_scope_counts_match_direct_filters():
    lines = lines_upto(12)
    graphs = [g for _, g in census_upto(12)]
    r_main, r_bip, r_2e = run_checks(lines, ["thm-main", "cor-bip", "lem-2e"])
    bricks = sum(is_brick(g) for g in graphs)
    assert r_main.summary["in_scope"] == bricks
    assert r_bip.summary["in_scope"] == sum(Facts(g).bipartite and Facts(g).edge_conn >= 3 for g in graphs)
    assert r_2e.summary["in_scope"] == sum(Facts(g).edge_conn >= 2 for g in graphs)


def test_three_classes_finish_flags_excess():
    violations: list = []
    _finish_three_classes({"three_class_bricks": 10}, violations)
    assert len(violations) == 1
    _finish_three_classes({"three_class_bricks": 9}, violations)
    assert len(violations) == 1


def test_detects_violation_in_corrupted_check(monkeypatch):
    # a check with an assertion that is false for K4 must surface a violation record
    from mcov import harness

    def always_fail(f):
        out = harness.Outcome(True)
        out.violations.append("synthetic")
        return out

    monkeypatch.setitem(REGISTRY, "lem-2e", harness.Check("lem-2e", "x", always_fail))
    (r,) = run_checks(["C~\n"], ["lem-2e"])
    assert r.violations == [{"graph6": "C~", "detail": "synthetic"}]


def test_json_is_deterministic_and_parallel_matches_serial(monkeypatch):
    monkeypatch.delenv("MCOV_JOBS", raising=False)
    lines = lines_upto(10)
    ids = ["thm-main", "thm-con", "prop-three-classes", "cor-tc", "prop-3con"]
    a = reports_to_json(run_checks(lines, ids, jobs=1), timestamp=False)
    b = reports_to_json(run_checks(lines, ids, jobs=1), timestamp=False)
    c = reports_to_json(run_checks(lines, ids, jobs=2), timestamp=False)
    assert a == b == c
    parsed = json.loads(reports_to_json(run_checks(lines, ids[:1])))
    assert "timestamp" in parsed[0]


def test_effective_jobs(monkeypatch):
    monkeypatch.delenv("MCOV_JOBS", raising=False)
    assert effective_jobs(None) == 1 and effective_jobs(3) == 3 and effective_jobs(0) == 1
    monkeypatch.setenv("MCOV_JOBS", "4")
    assert effective_jobs(1) == 4
    monkeypatch.setenv("MCOV_JOBS", "four")
    with pytest.raises(GraphError):
        effective_jobs(1)


def test_members_listed_for_three_class_bricks():
    (r,) = run_checks(lines_upto(10), ["prop-three-classes"])
    assert r.summary["three_class_bricks"] == 5
    assert set(r.summary["members"]) >= {to_graph6(K4), "EUxo", "GCZJd_"}


def test_census_files_present():
    assert sorted(p.name for p in CENSUS_DIR.glob("*.g6"))[0].startswith("cubic_connected_n")
    assert [len(census(n)) for n in range(4, 17, 2)] == [1, 2, 5, 19, 85, 509, 4060]
