import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from twwchi.graph import OrderedGraph, shift2, shift2_parts
from twwchi.rmp import RMPartition

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

A, B, C, D, E = range(5)


@pytest.fixture
def c5():
    """The 5-cycle on order A..E with edges AB, AC, BE, CD, DE."""
    return OrderedGraph.from_edges(5, [(A, B), (A, C), (B, E), (C, D), (D, E)])


@pytest.fixture
def s52():
    return shift2(5)


@pytest.fixture
def s52_parts():
    return RMPartition.from_intervals(shift2_parts(5))


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.integers(0, (1 << len(pairs)) - 1)) if pairs else 0
    return OrderedGraph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])


