from __future__ import annotations

import itertools
from functools import lru_cache
from pathlib import Path

import pytest

from mcov.graph import Graph, read_graph6_lines

CENSUS_DIR = Path(__file__).parent / "data" / "census"


@lru_cache(maxsize=None)
def census(n: int) -> tuple[tuple[str, Graph], ...]:
    """Connected cubic graphs of order ``n`` (external census, graph6)."""
    with open(CENSUS_DIR / f"cubic_connected_n{n}.g6") as fh:
        return tuple((text, g) for _, text, g in read_graph6_lines(fh))


def census_upto(n: int):
    for k in range(4, n + 1, 2):
        yield from census(k)


def perfect_matchings(g: Graph) -> list[frozenset]:
    """All perfect matchings by brute force (small graphs only)."""
    out = []

    def rec(free: int, chosen: list):
        if not free:
            out.append(frozenset(chosen))
            return
        v = (free & -free).bit_length() - 1
        nb = g.adj[v] & free
        while nb:
            low = nb & -nb
            u = low.bit_length() - 1
            nb ^= low
            chosen.append((v, u))
            rec(free & ~(1 << v) & ~(1 << u), chosen)
            chosen.pop()

    rec(g.all_mask, [])
    return out


def brute_max_matching_size(g: Graph) -> int:
    es = g.edge_list
    for k in range(g.order // 2, 0, -1):
        for combo in itertools.combinations(es, k):
            vs = [v for e in combo for v in e]
            if len(set(vs)) == len(vs):
                return k
    return 0


@pytest.fixture
def k4():
    from mcov.constructors import K4

    return K4


# --- acceptance criteria: one PASS/FAIL line each in the terminal summary ----

_criteria: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        title = dict(report.user_properties).get("criterion", report.nodeid.rsplit("::", 1)[-1])
        _criteria[report.nodeid] = ("PASS" if report.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_criteria):
        status, title = _criteria[nodeid]
        terminalreporter.write_line(f"{status}  {title}")
