from __future__ import annotations

import itertools

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nsdplanar.graph import Graph

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def small_graphs(draw, max_n: int = 7, max_m: int | None = None):
    n = draw(st.integers(2, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_m or len(pairs)))
    return Graph(range(n), chosen)


def brute_nsd(g: Graph, K: int) -> dict | None:
    """First nsd K-colouring in product order, by plain enumeration."""
    edges = list(g.edges())
    for cols in itertools.product(range(1, K + 1), repeat=len(edges)):
        at = {v: [] for v in g.vertices()}
        for (u, v), c in zip(edges, cols):
            at[u].append(c)
            at[v].append(c)
        if any(len(set(cs)) != len(cs) for cs in at.values()):
            continue
        if all(sum(at[u]) != sum(at[v]) for u, v in edges):
            return dict(zip(edges, cols))
    return None


def brute_chi(g: Graph, cap: int = 8) -> int | None:
    if g.edge_count == 0:
        return 0
    for K in range(g.max_degree, cap + 1):
        if brute_nsd(g, K) is not None:
            return K
    return None


# one line per acceptance criterion, filled in by test_acceptance and
# repeated at the end of the run so it survives output capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
