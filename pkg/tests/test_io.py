from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_graphs
from nsdplanar import io
from nsdplanar.embedding import embed, random_planar
from nsdplanar.errors import FormatError
from nsdplanar.families import complete_graph, path_graph
from nsdplanar.graph import EdgeColouring


def test_edge_list_with_comments():
    g = io.parse_graph("# a path\n4 3\n\n0 1\n1 2  # middle\n2 3\n")
    assert g == path_graph(4)


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("3 2\n0 1\n", 1),
    ("3 1\n0 x\n", 2),
    ("3 1\n0 3\n", 2),
    ("3 2\n0 1\n1 0\n", 3),
    ("3 1\n1 1\n", 2),
    ("3\n", 1),
])
def test_edge_list_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as info:
        io.parse_graph(text, "g.txt")
    assert info.value.line == line and str(info.value).startswith(f"g.txt:{line}:")


@given(small_graphs())
def test_edge_list_round_trip(g):
    text = io.format_graph(g)
    assert io.format_graph(io.parse_graph(text)) == text
    assert io.parse_graph(text) == g


def test_colouring_round_trip_and_checks():
    g = complete_graph(3)
    text = "0 1 1\n0 2 3\n1 2 2\n"
    col = io.parse_colouring(text, g)
    assert col == EdgeColouring({(0, 1): 1, (1, 2): 2, (0, 2): 3}, 3)
    assert io.format_colouring(col) == text
    with pytest.raises(FormatError):
        io.parse_colouring("0 1 1\n1 0 2\n", g)
    with pytest.raises(FormatError):
        io.parse_colouring("0 1 0\n", g)
    with pytest.raises(FormatError):
        io.parse_colouring("0 5 1\n", g)


@given(st.integers(3, 30), st.integers(0, 1000))
def test_rotation_round_trip(n, seed):
    g, rs = random_planar(n, "sparse", seed)
    text = io.format_rotation(rs)
    back = io.parse_rotation(text, g)
    assert back == rs and io.format_rotation(back) == text


def test_rotation_errors():
    g = path_graph(3)
    with pytest.raises(FormatError):
        io.parse_rotation("0 1\n", g)
    with pytest.raises(FormatError):
        io.parse_rotation("0: 1\n1: 0\n2:\n", g)
    with pytest.raises(FormatError):
        io.parse_rotation("0: 1\n0: 1\n", g)
    assert io.parse_rotation(io.format_rotation(embed(g)), g) == embed(g)


def test_graph6_import(tmp_path):
    nxg = nx.petersen_graph()
    p = tmp_path / "p.g6"
    p.write_bytes(b">>graph6<<" + nx.to_graph6_bytes(nxg, header=False))
    g = io.read_graph(p)
    assert g.edge_count == 15 and g.max_degree == 3
    with pytest.raises(FormatError):
        io.parse_graph6("\n")
    with pytest.raises(FormatError):
        io.parse_graph6("~~~~\n")


def test_missing_file(tmp_path):
    with pytest.raises(FormatError):
        io.read_graph(tmp_path / "nope.txt")


def test_files_round_trip(tmp_path):
    g = complete_graph(4)
    io.write_graph(g, tmp_path / "k4.txt")
    assert io.read_graph(tmp_path / "k4.txt") == g
