"""Simple graphs, edge colourings, validation predicates and graph surgery.

Vertices are arbitrary non-negative integers so that surgeries can add fresh
vertices and drop old ones while every untouched vertex keeps its id.  Edges
are always keyed canonically as ``(min, max)``.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass

from .errors import (
    GraphError,
    ImproperColouringError,
    PartialColouringError,
    ParameterError,
)

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph.

    Parameters
    ----------
    vertices : iterable of int, optional
        Vertices to include even if they carry no edge.
    edges : iterable of pairs
        Edge list. Self-loops and repeated edges raise :class:`GraphError`.
    """

    __slots__ = ("_adj", "_edges")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            adj.setdefault(int(v), set())
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            nu = adj.setdefault(u, set())
            if v in nu:
                raise GraphError(f"parallel edge {u}-{v}")
            nu.add(v)
            adj.setdefault(v, set()).add(u)
        for v in adj:
            if v < 0:
                raise GraphError(f"negative vertex id {v}")
        self._adj = {v: frozenset(ns) for v, ns in sorted(adj.items())}
        self._edges: tuple[Edge, ...] | None = None

    @classmethod
    def from_adjacency(cls, adj: Mapping[int, Iterable[int]]) -> Graph:
        """Build from a (possibly one-sided) adjacency map, symmetrising it."""
        g = cls.__new__(cls)
        full: dict[int, set[int]] = {v: set() for v in adj}
        for v, ns in adj.items():
            for u in ns:
                if u == v:
                    raise GraphError(f"self-loop at vertex {v}")
                full[v].add(u)
                full.setdefault(u, set()).add(v)
        g._adj = {v: frozenset(ns) for v, ns in sorted(full.items())}
        g._edges = None
        return g

    # -- queries -----------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    def vertices(self) -> list[int]:
        return list(self._adj)

    def edges(self) -> tuple[Edge, ...]:
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u, ns in self._adj.items() for v in sorted(ns) if u < v
            )
        return self._edges

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def neighbours(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    @property
    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    def next_id(self) -> int:
        """Smallest id larger than every existing vertex id."""
        return (max(self._adj) + 1) if self._adj else 0

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by least vertex."""
        seen: set[int] = set()
        out = []
        for s in self._adj:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def subgraph(self, keep: Iterable[int]) -> Graph:
        keep = set(keep)
        g = Graph.__new__(Graph)
        g._adj = {v: ns & keep for v, ns in self._adj.items() if v in keep}
        g._edges = None
        return g

    def isolated_edges(self) -> list[Edge]:
        return [
            (u, v) for u, v in self.edges()
            if len(self._adj[u]) == 1 and len(self._adj[v]) == 1
        ]

    def relabel(self) -> tuple[Graph, dict[int, int]]:
        """Relabel vertices to ``0..n-1`` preserving order; returns the map old->new."""
        mapping = {v: i for i, v in enumerate(self._adj)}
        g = Graph.__new__(Graph)
        g._adj = {mapping[v]: frozenset(mapping[u] for u in ns) for v, ns in self._adj.items()}
        g._edges = None
        return g, mapping

    def degree_histogram(self, t: int | None = None) -> tuple[int, ...]:
        """``(n_t, n_{t-1}, ..., n_1)``; degree-0 vertices are not counted."""
        if t is None:
            t = self.max_degree
        counts = [0] * (t + 1)
        for ns in self._adj.values():
            d = len(ns)
            if d > t:
                raise ParameterError(f"histogram length {t} below a degree {d}")
            counts[d] += 1
        return tuple(reversed(counts[1:]))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(tuple(self.edges())) ^ hash(tuple(self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


# -- colourings ---------------------------------------------------------------


class EdgeColouring:
    """Partial or total assignment of colours ``1..palette`` to edges.

    Keys are canonical edge keys; lookups accept either orientation.
    """

    __slots__ = ("_colours", "palette")

    def __init__(self, colours: Mapping[tuple[int, int], int] | Iterable, palette: int):
        if palette < 0:
            raise ParameterError(f"palette size must be non-negative, got {palette}")
        items = colours.items() if isinstance(colours, Mapping) else colours
        store: dict[Edge, int] = {}
        for (u, v), c in items:
            c = int(c)
            if not 1 <= c <= palette:
                raise ParameterError(f"colour {c} on edge {u}-{v} outside 1..{palette}")
            store[edge_key(u, v)] = c
        self._colours = dict(sorted(store.items()))
        self.palette = palette

    def __getitem__(self, edge: tuple[int, int]) -> int:
        return self._colours[edge_key(*edge)]

    def get(self, u: int, v: int, default=None):
        return self._colours.get(edge_key(u, v), default)

    def __contains__(self, edge) -> bool:
        return edge_key(*edge) in self._colours

    def __len__(self) -> int:
        return len(self._colours)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._colours)

    def items(self):
        return self._colours.items()

    def as_dict(self) -> dict[Edge, int]:
        return dict(self._colours)

    def missing_edges(self, g: Graph) -> list[Edge]:
        return [e for e in g.edges() if e not in self._colours]

    def is_total(self, g: Graph) -> bool:
        return not self.missing_edges(g)

    def updated(self, updates: Mapping[tuple[int, int], int]) -> EdgeColouring:
        merged = dict(self._colours)
        for (u, v), c in updates.items():
            merged[edge_key(u, v)] = c
        return EdgeColouring(merged, self.palette)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, EdgeColouring)
            and self.palette == other.palette
            and self._colours == other._colours
        )

    def __repr__(self) -> str:
        return f"EdgeColouring({len(self._colours)} edges, palette={self.palette})"


def weighted_degree(g: Graph, c: EdgeColouring | Mapping, v: int) -> int:
    """Sum of the colours on the edges incident with ``v``."""
    total = 0
    for u in g.neighbours(v):
        e = edge_key(u, v)
        col = c.get(u, v) if isinstance(c, EdgeColouring) else c.get(e)
        if col is None:
            raise PartialColouringError(e)
        total += col
    return total


def _require_total(g: Graph, c: EdgeColouring) -> None:
    missing = c.missing_edges(g)
    if missing:
        raise PartialColouringError(missing[0])


def is_proper(g: Graph, c: EdgeColouring) -> tuple[bool, tuple[Edge, Edge] | None]:
    """Return ``(True, None)`` or ``(False, (e, f))`` for one offending pair."""
    _require_total(g, c)
    for v in g.vertices():
        seen: dict[int, Edge] = {}
        for u in sorted(g.neighbours(v)):
            e = edge_key(u, v)
            col = c[e]
            if col in seen:
                return False, (seen[col], e)
            seen[col] = e
    return True, None


def is_nsd(g: Graph, c: EdgeColouring) -> tuple[bool, list[Edge]]:
    """Check that adjacent vertices have distinct weighted degrees.

    Returns the verdict and every conflicting edge. Raises
    :class:`ImproperColouringError` if ``c`` is not proper.
    """
    ok, pair = is_proper(g, c)
    if not ok:
        raise ImproperColouringError(pair)
    sums = {v: weighted_degree(g, c, v) for v in g.vertices()}
    conflicts = [(u, v) for u, v in g.edges() if sums[u] == sums[v]]
    return not conflicts, conflicts


# -- the "smaller" order --------------------------------------------------------


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class GraphOrderKey:
    edge_count: int
    degree_histogram: tuple[int, ...]  # (n_t, ..., n_1) for t = max degree

    @classmethod
    def of(cls, g: Graph) -> GraphOrderKey:
        return cls(g.edge_count, g.degree_histogram())

    def padded(self, t: int) -> tuple[int, ...]:
        return (0,) * (t - len(self.degree_histogram)) + self.degree_histogram

    def compare(self, other: GraphOrderKey) -> Ordering:
        if self.edge_count != other.edge_count:
            return Ordering.LESS if self.edge_count < other.edge_count else Ordering.GREATER
        t = max(len(self.degree_histogram), len(other.degree_histogram))
        a, b = self.padded(t), other.padded(t)
        if a == b:
            return Ordering.EQUAL
        return Ordering.LESS if a < b else Ordering.GREATER

    def __str__(self) -> str:
        return f"m={self.edge_count} h={','.join(map(str, self.degree_histogram))}"


def smaller_than(h: Graph, h2: Graph) -> Ordering:
    """Compare by edge count, then lexicographically on ``(n_t, ..., n_1)``."""
    return GraphOrderKey.of(h).compare(GraphOrderKey.of(h2))


# -- surgery -----------------------------------------------------------------------


def _mutable_adj(g: Graph) -> dict[int, set[int]]:
    return {v: set(g.neighbours(v)) for v in g.vertices()}


def _freeze(adj: dict[int, set[int]]) -> Graph:
    g = Graph.__new__(Graph)
    g._adj = {v: frozenset(ns) for v, ns in sorted(adj.items())}
    g._edges = None
    return g


def vertex_split_map(g: Graph, v: int) -> tuple[Graph, dict[int, int]]:
    """Split ``v`` into pendants; also return ``former neighbour -> pendant id``.

    Pendants receive ids ``g.next_id(), g.next_id()+1, ...`` in increasing
    order of the neighbour they attach to.
    """
    if not g.has_vertex(v):
        raise GraphError(f"unknown vertex {v}")
    adj = _mutable_adj(g)
    nxt = g.next_id()
    mapping = {}
    for i, u in enumerate(sorted(adj.pop(v))):
        adj[u].discard(v)
        p = nxt + i
        adj[u].add(p)
        adj[p] = {u}
        mapping[u] = p
    return _freeze(adj), mapping


def vertex_split(g: Graph, v: int) -> Graph:
    """Replace ``v`` by ``d(v)`` pendant vertices, one per former neighbour."""
    if g.degree(v) < 1:
        raise ParameterError(f"vertex {v} has degree 0 and cannot be split")
    return vertex_split_map(g, v)[0]


def contract_edge(g: Graph, edge: tuple[int, int]) -> Graph:
    """Merge the second endpoint of ``edge`` into the first.

    Loops are dropped and parallel edges collapse, so the result is simple.
    """
    keep, drop = edge
    if not g.has_edge(keep, drop):
        raise GraphError(f"no edge {keep}-{drop}")
    adj = _mutable_adj(g)
    for x in adj.pop(drop):
        adj[x].discard(drop)
        if x != keep:
            adj[x].add(keep)
            adj[keep].add(x)
    return _freeze(adj)


def remove_edges(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    adj = _mutable_adj(g)
    for u, v in edges:
        if v not in adj.get(u, ()):
            raise GraphError(f"no edge {u}-{v}")
        adj[u].discard(v)
        adj[v].discard(u)
    return _freeze(adj)


def disjoin_edge(g: Graph, edge: tuple[int, int]) -> Graph:
    """Detach ``uv`` from ``v``: drop it and hang a fresh pendant on ``u``.

    The fresh vertex gets id ``g.next_id()``.
    """
    u, v = edge
    if not g.has_edge(u, v):
        raise GraphError(f"no edge {u}-{v}")
    adj = _mutable_adj(g)
    fresh = g.next_id()
    adj[u].discard(v)
    adj[v].discard(u)
    adj[u].add(fresh)
    adj[fresh] = {u}
    return _freeze(adj)


def add_edges(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    adj = _mutable_adj(g)
    for u, v in edges:
        if u == v or v in adj.get(u, ()):
            raise GraphError(f"cannot add edge {u}-{v}")
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return _freeze(adj)
