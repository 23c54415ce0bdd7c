import random

import pytest
from hypothesis import strategies as st

from chibound.graph import Graph, complete_graph, cycle_graph, make_graph, path_graph

_criteria: dict[int, dict] = {}


def random_graph(rng: random.Random, max_order: int) -> Graph:
    n = rng.randint(0, max_order)
    p = rng.random()
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_corpus(count: int, max_order: int, seed: int) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng, max_order) for _ in range(count)]


@st.composite
def graphs(draw, max_order: int = 8) -> Graph:
    n = draw(st.integers(min_value=0, max_value=max_order))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [e for e, keep in zip(pairs, chosen) if keep])


@pytest.fixture
def K2():
    return complete_graph(2)


@pytest.fixture
def C5():
    return cycle_graph(5)


@pytest.fixture
def P4():
    return path_graph(4)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if not marker:
        return
    number, title = marker
    entry = _criteria.setdefault(number, {"title": title, "ok": True})
    entry["ok"] &= report.passed


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark:
        item.user_properties.append(("criterion", (mark.args[0], mark.args[1])))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        verdict = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {number:2d}: {entry['title']}")
