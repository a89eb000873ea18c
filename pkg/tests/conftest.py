from __future__ import annotations

import pytest

from gsconnect.graph import Graph


def named(edges: str, vertices: str = "") -> Graph:
    """Graph on single-letter vertices, e.g. ``named("ab bc")``.

    Letters map to ids ``a=0, b=1, ...`` and are kept as labels.
    """
    pairs = [(ord(e[0]) - 97, ord(e[1]) - 97) for e in edges.split()]
    ids = {v for p in pairs for v in p} | {ord(c) - 97 for c in vertices}
    return Graph(sorted(ids), pairs, {v: chr(97 + v) for v in ids})


@pytest.fixture
def path_abc() -> Graph:
    return named("ab bc")


@pytest.fixture
def triangle() -> Graph:
    return named("ab bc ac")


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
