from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_graphs
from nsdplanar.configurations import (
    KINDS,
    ConfigurationWitness,
    c9_parameters,
    detect_all,
    detect_C1,
    detect_C2,
    detect_C3,
    detect_C4,
    detect_C5,
    detect_C6,
    detect_C7,
    detect_C8,
    detect_C9,
    parse_witness,
    verify_witness,
)
from nsdplanar.embedding import random_planar
from nsdplanar.errors import FormatError, ParameterError
from nsdplanar.families import (
    complete_graph,
    disjoint_union,
    icosahedron_graph,
    path_graph,
    petersen_graph,
    star_graph,
    wheel_graph,
    with_pendants,
)
from nsdplanar.graph import Graph, remove_edges

K = 28


def kinds(ws):
    return sorted({w.kind for w in ws})


def test_icosahedron_fires_c1_with_r5():
    ws = detect_C1(icosahedron_graph(), K)
    assert ws and {w.r for w in ws} == {5}
    assert len(detect_C1(icosahedron_graph(), K, limit=None)) == 12 * 10


def test_p3_hub_fires_c1_with_r1():
    (w,) = detect_C1(path_graph(3), K)
    assert (w.u, w.r) == (1, 1) and w.bound == "58/3"


def test_big_star_hub_is_not_c1_but_c9():
    g = star_graph(30)
    assert all(w.u != 0 for w in detect_C1(g, 30, limit=None))
    (w,) = [w for w in detect_C9(g, 30) if w.u == 0]
    assert (w.r, w.j, w.p) == (1, 2, 30)


def test_p5_patterns():
    assert kinds(detect_all(path_graph(5), K)) == ["C1", "C2", "C3", "C9"]
    ws = detect_C3(path_graph(5), K)
    assert [(w.u, w.vertex("v"), w.vertex("w"), w.vertex("x")) for w in ws] == [
        (0, 1, 2, 3), (1, 2, 3, 4)]


def test_k4_minus_edge_patterns():
    g = remove_edges(complete_graph(4), [(0, 1)])
    assert kinds(detect_all(g, K)) == ["C1", "C4", "C5"]


def test_petersen_only_c1():
    assert kinds(detect_all(petersen_graph(), K)) == ["C1"]


def test_c6_and_c7_gadgets():
    # hub 0 with two disjoint degree-3 pairs (1,2), (3,4) and a pendant 5
    g = Graph([], [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5),
                   (1, 6), (2, 7), (3, 8), (4, 9)])
    c7 = detect_C7(g, K)
    assert len(c7) == 1 and set(c7[0].role("v1") + c7[0].role("w1")) == {1, 2}
    c6 = detect_C6(g, K, limit=None)
    assert {(w.vertex("v"), w.vertex("x")) for w in c6} == {(1, 5), (3, 5)}
    assert all(w.role("y") == () for w in c6)


def test_c8_needs_enough_pendants():
    # hub of degree 12 > bound(28, 2) ~ 8.13, two pendants, one degree-2 neighbour
    g = with_pendants(star_graph(10), {})
    g = Graph(g.vertices(), list(g.edges()) + [(1, 11), (0, 12), (0, 13)])
    ws = detect_C8(g, K)
    assert ws and ws[0].r == 2 and ws[0].vertex("v") == 1 and len(ws[0].role("pendants")) == 2


def test_k_below_28_is_rejected():
    with pytest.raises(ParameterError):
        detect_C1(path_graph(3), 27)
    with pytest.raises(ParameterError):
        detect_all(star_graph(30), 28)


def test_isolated_edge_has_no_configuration():
    assert detect_all(Graph([], [(0, 1)]), K) == []


def test_c9_first_r_then_first_j():
    r, j, low = c9_parameters(star_graph(30), 30, 0)
    assert (r, j, len(low)) == (1, 2, 30)
    # r = 1: j = 8 is the first with ceil((30 - j) / j) <= 3
    assert c9_parameters(star_graph(3), 28, 0)[:2] == (1, 8)
    assert c9_parameters(complete_graph(4), 28, 0) is None


def test_witness_text_round_trip():
    w = detect_C1(icosahedron_graph(), K)[0]
    assert parse_witness(str(w)) == w
    assert str(w).startswith("C1 u=0 roles=w:")
    with pytest.raises(FormatError):
        parse_witness("C1 nonsense")


def test_verify_rejects_tampered_witnesses():
    g = wheel_graph(30)
    w = detect_C1(g, 30)[0]
    bad = ConfigurationWitness("C1", (("u", (0,)),) + w.roles[1:], r=w.r)
    assert verify_witness(g, 30, w) and not verify_witness(g, 30, bad)


# -- brute-force oracles ------------------------------------------------------


def oracle_c1(g, k):
    out = set()
    for u in g.vertices():
        for w, x in itertools.combinations(sorted(g.neighbours(u)), 2):
            for r in range(1, 7):
                t = Fraction(2 * k + 6 - 4 * r, 3)
                if g.degree(w) <= r and g.degree(x) <= r and g.degree(u) <= t and t > 12:
                    out.add((u, w, x, r))
                    break
    return out


def oracle_c3(g):
    return {
        frozenset((v, w)) for v, w in itertools.permutations(g.vertices(), 2)
        if g.has_edge(v, w) and g.degree(v) == g.degree(w) == 2
    }


def oracle_c4(g):
    out = set()
    for v, x in itertools.combinations(g.vertices(), 2):
        if g.degree(v) == g.degree(x) == 2 and g.neighbours(v) == g.neighbours(x):
            out.add(frozenset((v, x)))
    return out


def oracle_c5(g):
    return {
        (u, v, w) for u, v, w in itertools.permutations(g.vertices(), 3)
        if g.has_edge(u, v) and g.has_edge(v, w) and g.has_edge(u, w)
        and g.degree(v) == 2 and g.degree(w) <= 6
    }


def oracle_c2(g):
    return {
        (u, v, w) for u, v, w in itertools.permutations(g.vertices(), 3)
        if g.has_edge(u, v) and g.has_edge(u, w) and g.degree(v) == 1 and g.degree(w) == 2
    }


def oracle_c6(g):
    return {
        (u, frozenset((v, w)), x) for u, v, w, x in itertools.permutations(g.vertices(), 4)
        if all(g.has_edge(u, y) for y in (v, w, x)) and g.has_edge(v, w)
        and g.degree(v) == g.degree(w) == 3 and g.degree(x) <= 2
    }


def oracle_c7(g):
    out = set()
    for u, a, b, c, d in itertools.permutations(g.vertices(), 5):
        if all(g.has_edge(u, y) and g.degree(y) == 3 for y in (a, b, c, d)):
            if g.has_edge(a, b) and g.has_edge(c, d):
                out.add((u, frozenset((frozenset((a, b)), frozenset((c, d))))))
    return out


@given(small_graphs(max_n=8))
def test_detectors_match_brute_force(g):
    assert {(w.u, w.vertex("w"), w.vertex("x"), w.r) for w in detect_C1(g, K, None)} == oracle_c1(g, K)
    assert {(w.u, w.vertex("v"), w.vertex("w")) for w in detect_C2(g, K, None)} == oracle_c2(g)
    assert {frozenset((w.vertex("v"), w.vertex("w"))) for w in detect_C3(g, K, None)} == oracle_c3(g)
    assert {frozenset((w.vertex("v"), w.vertex("x"))) for w in detect_C4(g, K, None)} == oracle_c4(g)
    assert {(w.u, w.vertex("v"), w.vertex("w")) for w in detect_C5(g, K, None)} == oracle_c5(g)
    assert {
        (w.u, frozenset((w.vertex("v"), w.vertex("w"))), w.vertex("x"))
        for w in detect_C6(g, K, None)
    } == oracle_c6(g)
    assert {
        (w.u, frozenset((frozenset(w.role("v1") + w.role("w1")),
                         frozenset(w.role("v2") + w.role("w2")))))
        for w in detect_C7(g, K, None)
    } == oracle_c7(g)


@given(st.integers(5, 50), st.sampled_from(["sparse", "triangulation-minus"]),
       st.integers(0, 5000), st.sampled_from([0.0, 0.5]))
def test_every_witness_verifies_and_round_trips(n, mode, seed, bias):
    g, _ = random_planar(n, mode, seed, hub_bias=bias)
    k = max(K, g.max_degree)
    ws = detect_all(g, k, exhaustive=True, limit=8)
    assert ws
    for w in ws:
        assert w.kind in KINDS
        assert verify_witness(g, k, w)
        assert parse_witness(str(w)) == w


def test_disjoint_union_detects_in_each_part():
    g = disjoint_union(star_graph(30), complete_graph(3))
    found = detect_all(g, 30, exhaustive=True, limit=None)
    assert any(w.kind == "C9" and w.u == 0 for w in found)
    assert any(w.kind == "C1" and w.u >= 31 for w in found)
