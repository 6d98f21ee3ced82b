from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nsdplanar.construct import (
    DEFAULT_ORDER,
    NATURAL_ORDER,
    ConstructOptions,
    construct_nsd,
)
from nsdplanar.embedding import random_planar
from nsdplanar.errors import BudgetExhausted, IsolatedEdgeError, ParameterError
from nsdplanar.families import complete_graph, disjoint_union, path_graph, star_graph, wheel_graph
from nsdplanar.graph import Graph, is_nsd, is_proper
from nsdplanar.solver import SolveBudget


def valid(g, col, k):
    return is_proper(g, col)[0] and is_nsd(g, col)[0] and max(c for _, c in col.items()) <= k + 1


def test_wheel_30():
    g = wheel_graph(30)
    col, trace = construct_nsd(g, 30)
    assert valid(g, col, 30)
    assert trace.reductions() and trace.keys_decrease()


def test_star_plus_triangle():
    g = disjoint_union(star_graph(30), complete_graph(3))
    col, trace = construct_nsd(g, 30)
    assert valid(g, col, 30) and trace.keys_decrease()
    assert any(s.kind == "C9" for s in trace.steps)


def test_default_k_and_small_inputs():
    col, trace = construct_nsd(path_graph(5))
    assert valid(path_graph(5), col, 28)
    assert [s.kind for s in trace.steps] == ["search"]
    col, _ = construct_nsd(Graph(range(3)))
    assert len(col) == 0


def test_preconditions():
    with pytest.raises(IsolatedEdgeError):
        construct_nsd(Graph([], [(0, 1), (2, 3), (3, 4)]))
    with pytest.raises(ParameterError):
        construct_nsd(star_graph(30), 29)
    with pytest.raises(ParameterError):
        construct_nsd(path_graph(4), 27)


def test_budget_exhaustion_keeps_the_trace():
    with pytest.raises(BudgetExhausted) as info:
        construct_nsd(wheel_graph(30), 30, SolveBudget(node_limit=3))
    assert info.value.trace is not None


def test_trace_lines_are_readable():
    _, trace = construct_nsd(wheel_graph(30), 30)
    first = trace.lines()[0]
    assert first.startswith("0 C") and ":: m=60" in first and first.endswith("extended")


def test_fallback_when_no_reducer_applies():
    opts = ConstructOptions(order=(), cutoff_edges=0, cutoff_degree=0)
    g = wheel_graph(6)
    col, trace = construct_nsd(g, 28, options=opts)
    assert valid(g, col, 28)
    assert [s.kind for s in trace.steps] == ["fallback"]


@pytest.mark.parametrize("order", [DEFAULT_ORDER, NATURAL_ORDER])
def test_both_orders_agree_on_validity(order):
    g, _ = random_planar(60, "triangulation-minus", 5, hub_bias=0.5)
    col, trace = construct_nsd(g, order=order)
    assert valid(g, col, max(28, g.max_degree)) and trace.keys_decrease()


@given(st.integers(5, 45), st.sampled_from(["sparse", "triangulation-minus"]),
       st.integers(0, 10_000), st.sampled_from([0.0, 0.3, 0.6]))
def test_random_planar_graphs(n, mode, seed, bias):
    g, _ = random_planar(n, mode, seed, hub_bias=bias)
    k = max(28, g.max_degree)
    col, trace = construct_nsd(g, k)
    assert valid(g, col, k)
    assert trace.keys_decrease()
