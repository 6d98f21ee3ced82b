"""Combinatorial embeddings (rotation systems) and their faces.

Face tracing convention: the dart after ``(u, v)`` is ``(v, w)`` where ``w``
follows ``u`` in the rotation of ``v``.  Each dart lies on exactly one face,
so an edge seen from both sides of the same region is counted twice and a
vertex met twice on one walk yields two incidences.

Two face notions are provided.  :func:`faces` returns one face per dart cycle.
:func:`plane_faces` returns the regions of a drawing: a region may be bounded
by several walks when the graph is disconnected, and it is computed relative
to the embedding the graph was cut out of (``keep``), which is how the
embedding of an induced subgraph inherits its face structure.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Literal

import networkx as nx

from .errors import EmbeddingError, ParameterError
from .graph import Graph

Dart = tuple[int, int]


class RotationSystem:
    """Cyclic order of neighbours around every vertex.

    Each rotation is stored starting from its least neighbour, so two
    rotation systems describing the same embedding compare equal.
    """

    __slots__ = ("_rot", "_pos")

    def __init__(self, rotations: Mapping[int, Sequence[int]]):
        rot: dict[int, tuple[int, ...]] = {}
        for v, ns in rotations.items():
            ns = tuple(int(u) for u in ns)
            if len(set(ns)) != len(ns):
                raise EmbeddingError(f"duplicated dart in rotation of {v}")
            if v in ns:
                raise EmbeddingError(f"self-loop in rotation of {v}")
            if ns:
                i = ns.index(min(ns))
                ns = ns[i:] + ns[:i]
            rot[int(v)] = ns
        for v, ns in rot.items():
            for u in ns:
                if u not in rot or v not in rot[u]:
                    raise EmbeddingError(f"dart ({u}, {v}) missing for dart ({v}, {u})")
        self._rot = dict(sorted(rot.items()))
        self._pos = {v: {u: i for i, u in enumerate(ns)} for v, ns in self._rot.items()}

    @classmethod
    def from_graph(cls, g: Graph, rotations: Mapping[int, Sequence[int]]) -> RotationSystem:
        """Build and check that the rotations describe exactly ``g``."""
        rs = cls({v: rotations.get(v, ()) for v in g.vertices()} | dict(rotations))
        if rs.graph() != g:
            raise EmbeddingError("rotation system is inconsistent with the graph")
        return rs

    def vertices(self) -> list[int]:
        return list(self._rot)

    def rotation(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    def succ(self, v: int, u: int) -> int:
        """Neighbour following ``u`` in the rotation of ``v``."""
        ns = self._rot[v]
        return ns[(self._pos[v][u] + 1) % len(ns)]

    def darts(self) -> list[Dart]:
        return [(v, u) for v, ns in self._rot.items() for u in ns]

    def graph(self) -> Graph:
        return Graph(self._rot, [(v, u) for v, u in self.darts() if v < u])

    def restrict(self, keep: Iterable[int]) -> RotationSystem:
        keep = set(keep)
        return RotationSystem(
            {v: [u for u in ns if u in keep] for v, ns in self._rot.items() if v in keep}
        )

    def items(self):
        return self._rot.items()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RotationSystem) and self._rot == other._rot

    def __hash__(self) -> int:
        return hash(tuple(self._rot.items()))

    def __repr__(self) -> str:
        return f"RotationSystem({len(self._rot)} vertices, {len(self.darts()) // 2} edges)"


@dataclass(frozen=True)
class Face:
    """A face given by its boundary walk(s); each walk is a cyclic dart list."""

    walks: tuple[tuple[Dart, ...], ...]

    @property
    def degree(self) -> int:
        return sum(len(w) for w in self.walks)

    @property
    def walk(self) -> tuple[Dart, ...]:
        if len(self.walks) != 1:
            raise ValueError("face has no single boundary walk")
        return self.walks[0]

    def vertex_cycle(self) -> tuple[int, ...] | None:
        """Vertices in walk order when the face has one walk, else ``None``."""
        if len(self.walks) != 1:
            return None
        return tuple(d[0] for d in self.walks[0])

    def incidences(self):
        """Yield ``(previous, vertex, next)`` for every corner of every walk."""
        for w in self.walks:
            for i, (v, nxt) in enumerate(w):
                yield w[i - 1][0], v, nxt

    def vertices(self) -> set[int]:
        return {d[0] for w in self.walks for d in w}

    def darts(self) -> set[Dart]:
        return {d for w in self.walks for d in w}


def _normalise_walk(walk: list[Dart]) -> tuple[Dart, ...]:
    i = walk.index(min(walk))
    return tuple(walk[i:] + walk[:i])


def _dart_cycles(rs: RotationSystem) -> list[tuple[Dart, ...]]:
    seen: set[Dart] = set()
    cycles = []
    for start in rs.darts():
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            u, v = d
            d = (v, rs.succ(v, u))
        if d != start:
            raise EmbeddingError("face tracing did not close; rotation system is malformed")
        cycles.append(_normalise_walk(walk))
    return sorted(cycles)


def faces(rs: RotationSystem) -> list[Face]:
    """One face per dart cycle, ordered by least dart."""
    return [Face((c,)) for c in _dart_cycles(rs)]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def plane_faces(rs: RotationSystem, keep: Iterable[int] | None = None) -> list[Face]:
    """Faces of the drawing described by ``rs``, optionally after deleting vertices.

    Components are drawn side by side: for each component the face through
    its least dart is taken as its outer face and all outer faces are one
    region.  With ``keep`` given, the regions of the induced sub-drawing are
    unions of regions of ``rs`` glued across every deleted edge.
    """
    base = _dart_cycles(rs)
    face_of: dict[Dart, int] = {d: i for i, c in enumerate(base) for d in c}
    uf = _UnionFind(len(base))

    g = rs.graph()
    outer = []
    for comp in g.components():
        m = comp[0]
        if rs.rotation(m):
            outer.append(face_of[(m, rs.rotation(m)[0])])
    for f in outer[1:]:
        uf.union(outer[0], f)

    keep_set = set(rs.vertices()) if keep is None else set(keep)
    if keep is not None:
        for u, v in rs.darts():
            if u not in keep_set or v not in keep_set:
                uf.union(face_of[(u, v)], face_of[(v, u)])

    sub = rs if keep is None else rs.restrict(keep_set)
    groups: dict[int, list[tuple[Dart, ...]]] = {}
    for cyc in _dart_cycles(sub):
        groups.setdefault(uf.find(face_of[cyc[0]]), []).append(cyc)
    out = [Face(tuple(sorted(ws))) for ws in groups.values()]
    if not out:
        # no edge survives: the whole plane is a single face without boundary
        out = [Face(())]
    return sorted(out, key=lambda f: (not f.walks, min(f.darts()) if f.walks else (0, 0)))


def induced_embedding(rs: RotationSystem, keep: Iterable[int]) -> RotationSystem:
    """Rotation system of the induced subgraph on ``keep``."""
    return rs.restrict(keep)


def is_planar_embedding(rs: RotationSystem) -> bool:
    """Euler check of every component: ``V - E + F = 2``.

    Summed with all outer faces identified this is ``|V| - |E| + |F| = 1 + c``.
    """
    g = rs.graph()
    cycles = _dart_cycles(rs)
    comp_of = {}
    comps = g.components()
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    face_count = [0] * len(comps)
    for c in cycles:
        face_count[comp_of[c[0][0]]] += 1
    for i, comp in enumerate(comps):
        if len(comp) == 1:
            continue
        edges = sum(g.degree(v) for v in comp) // 2
        if len(comp) - edges + face_count[i] != 2:
            return False
    return True


def embed(g: Graph) -> RotationSystem | None:
    """A planar rotation system for ``g``, or ``None`` if ``g`` is not planar."""
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices())
    nxg.add_edges_from(g.edges())
    planar, emb = nx.check_planarity(nxg)
    if not planar:
        return None
    return RotationSystem({v: list(emb.neighbors_cw_order(v)) for v in g.vertices()})


def kuratowski_witness(g: Graph) -> Graph | None:
    """A K5 or K3,3 subdivision inside ``g``, or ``None`` when ``g`` is planar."""
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices())
    nxg.add_edges_from(g.edges())
    planar, cert = nx.check_planarity(nxg, counterexample=True)
    if planar:
        return None
    return Graph(cert.nodes, cert.edges)


Density = Literal["sparse", "triangulation-minus"]

_DELETE_PROB = {"sparse": 0.6, "triangulation-minus": 0.15}


def random_planar(
    n: int, density: Density = "sparse", seed: int = 0, *, hub_bias: float = 0.0
) -> tuple[Graph, RotationSystem]:
    """Seeded connected planar graph with an embedding.

    A maximal planar graph is grown by inserting each new vertex into a
    random triangular face; with probability ``hub_bias`` the face is drawn
    among those containing vertex 0, which produces a high-degree hub. Then
    edges outside a random spanning tree are deleted independently with a
    density-dependent probability.
    """
    if n < 3:
        raise ParameterError(f"random_planar needs n >= 3, got {n}")
    if density not in _DELETE_PROB:
        raise ParameterError(f"unknown density {density!r}")
    rng = random.Random(seed)
    rot: dict[int, list[int]] = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    tri: list[tuple[int, int, int]] = [(0, 1, 2), (0, 2, 1)]
    for x in range(3, n):
        if hub_bias > 0 and rng.random() < hub_bias:
            pool = [i for i, f in enumerate(tri) if 0 in f]
            i = rng.choice(pool)
        else:
            i = rng.randrange(len(tri))
        a, b, c = tri[i]
        # walk a->b->c: x goes after a at b, after b at c, after c at a
        for at, after in ((b, a), (c, b), (a, c)):
            r = rot[at]
            r.insert(r.index(after) + 1, x)
        rot[x] = [b, a, c]
        tri[i] = (a, b, x)
        tri.append((b, c, x))
        tri.append((c, a, x))

    edges = sorted({(min(u, v), max(u, v)) for u, ns in rot.items() for v in ns})
    order = edges[:]
    rng.shuffle(order)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = set()
    for u, v in order:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.add((u, v))
    p = _DELETE_PROB[density]
    dropped = {e for e in edges if e not in tree and rng.random() < p}
    final = {
        v: [u for u in ns if (min(u, v), max(u, v)) not in dropped] for v, ns in rot.items()
    }
    rs = RotationSystem(final)
    return rs.graph(), rs
