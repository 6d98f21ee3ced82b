"""Standard small graphs used as fixtures and CLI examples."""

from __future__ import annotations

from itertools import combinations

from .graph import Graph


def path_graph(n: int) -> Graph:
    """``P_n`` on vertices ``0..n-1``."""
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(range(n), combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with hub 0."""
    return Graph(range(leaves + 1), [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(range(a + b), [(i, a + j) for i in range(a) for j in range(b)])


def wheel_graph(rim: int) -> Graph:
    """``W_rim``: hub 0 joined to a rim cycle on ``1..rim``."""
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return Graph(range(rim + 1), edges)


def icosahedron_graph() -> Graph:
    # top 0, upper ring 1..5, lower ring 6..10, bottom 11
    edges = []
    for i in range(5):
        a, b = 1 + i, 1 + (i + 1) % 5
        c, d = 6 + i, 6 + (i + 1) % 5
        edges += [(0, a), (a, b), (11, c), (c, d), (a, c), (b, c)]
    return Graph(range(12), edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(range(10), outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    """Union with the vertices of each later graph shifted past the earlier ones."""
    vertices, edges, offset = [], [], 0
    for g in graphs:
        vertices += [v + offset for v in g.vertices()]
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        offset += g.next_id()
    return Graph(vertices, edges)


def with_pendants(g: Graph, counts: dict[int, int]) -> Graph:
    """Attach ``counts[v]`` fresh pendant vertices to each listed ``v``."""
    nxt = g.next_id()
    edges = list(g.edges())
    vertices = g.vertices()
    for v, cnt in sorted(counts.items()):
        for _ in range(cnt):
            edges.append((v, nxt))
            vertices.append(nxt)
            nxt += 1
    return Graph(vertices, edges)
