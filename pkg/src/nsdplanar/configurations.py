"""Detection of the nine reducible configurations C1..C9.

Each detector returns witnesses whose roles name the vertices the matching
reducer works on; :func:`verify_witness` replays the predicate so any
witness can be audited against a graph.  Detection is purely combinatorial:
triangles are graph triangles, not faces.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from itertools import combinations

from .bounds import SqrtBound, low_degree_threshold
from .errors import FormatError, ParameterError
from .graph import Graph

KINDS = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9")
DEFAULT_LIMIT = 32
MIN_K = 28


@dataclass(frozen=True)
class ConfigurationWitness:
    """One occurrence of a configuration.

    ``roles`` maps role names to vertex tuples (single vertices are 1-tuples),
    kept in a fixed order for stable serialisation.
    """

    kind: str
    roles: tuple[tuple[str, tuple[int, ...]], ...]
    r: int | None = None
    j: int | None = None
    p: int | None = None
    bound: str | None = field(default=None, compare=False)

    def role(self, name: str) -> tuple[int, ...]:
        for key, val in self.roles:
            if key == name:
                return val
        raise KeyError(name)

    def vertex(self, name: str) -> int:
        (v,) = self.role(name)
        return v

    def has_role(self, name: str) -> bool:
        return any(key == name for key, _ in self.roles)

    @property
    def u(self) -> int:
        return self.vertex("u")

    def __str__(self) -> str:
        parts = [self.kind, f"u={self.u}"]
        roles = [
            f"{key}:{','.join(map(str, val)) if val else '-'}"
            for key, val in self.roles
            if key != "u"
        ]
        parts.append("roles=" + (";".join(roles) if roles else "-"))
        for name in ("r", "j", "p"):
            val = getattr(self, name)
            if val is not None:
                parts.append(f"{name}={val}")
        return " ".join(parts)


def _w(kind: str, roles: dict[str, object], **params) -> ConfigurationWitness:
    packed = tuple(
        (key, tuple(val) if isinstance(val, (tuple, list)) else (() if val is None else (val,)))
        for key, val in roles.items()
    )
    return ConfigurationWitness(kind, packed, **params)


_WITNESS_RE = re.compile(r"^(C[1-9]) u=(\d+) roles=(\S+)((?: [rjp]=\d+)*)$")


def parse_witness(line: str) -> ConfigurationWitness:
    """Inverse of ``str(witness)`` (the ``bound`` annotation is not stored)."""
    m = _WITNESS_RE.match(line.strip())
    if not m:
        raise FormatError(f"malformed witness line: {line.strip()!r}")
    kind, u, roles_txt, params_txt = m.groups()
    roles: list[tuple[str, tuple[int, ...]]] = [("u", (int(u),))]
    if roles_txt != "-":
        for item in roles_txt.split(";"):
            key, _, vals = item.partition(":")
            roles.append((key, () if vals == "-" else tuple(int(x) for x in vals.split(","))))
    params = {}
    for item in params_txt.split():
        key, _, val = item.partition("=")
        params[key] = int(val)
    order = _ROLE_ORDER[kind]
    roles.sort(key=lambda kv: order.index(kv[0]) if kv[0] in order else len(order))
    return ConfigurationWitness(kind, tuple(roles), **params)


_ROLE_ORDER = {
    "C1": ("u", "w", "x"),
    "C2": ("u", "v", "w", "x"),
    "C3": ("u", "v", "w", "x"),
    "C4": ("u", "v", "w", "x"),
    "C5": ("u", "v", "w"),
    "C6": ("u", "v", "w", "x", "y"),
    "C7": ("u", "v1", "w1", "v2", "w2"),
    "C8": ("u", "v", "pendants"),
    "C9": ("u", "vs"),
}


def _check_k(k: int) -> None:
    if k < MIN_K:
        raise ParameterError(f"k must be at least {MIN_K}, got {k}")


def _capped(gen: Iterator[ConfigurationWitness], limit: int | None) -> list[ConfigurationWitness]:
    out = []
    for w in gen:
        out.append(w)
        if limit is not None and len(out) >= limit:
            break
    return out


# -- C1 ----------------------------------------------------------------------


def _c1_r(g: Graph, k: int, u: int, w: int, x: int) -> int | None:
    """Least ``r`` making ``(u, w, x)`` a C1 occurrence, if any."""
    r0 = max(g.degree(w), g.degree(x), 1)
    for r in range(r0, 7):
        t = low_degree_threshold(k, r)
        if t > 12 and g.degree(u) <= t:
            return r
    return None


def _iter_c1(g: Graph, k: int):
    for u in g.vertices():
        low = sorted(v for v in g.neighbours(u) if g.degree(v) <= 6)
        for w, x in combinations(low, 2):
            r = _c1_r(g, k, u, w, x)
            if r is not None:
                yield _w("C1", {"u": u, "w": w, "x": x}, r=r,
                         bound=str(low_degree_threshold(k, r)))


def detect_C1(g: Graph, k: int, limit: int | None = DEFAULT_LIMIT) -> list[ConfigurationWitness]:
    """Vertex of degree <= (2k+6-4r)/3 with two neighbours of degree <= r <= 6."""
    _check_k(k)
    return _capped(_iter_c1(g, k), limit)


# -- C2..C7: degree-only patterns ---------------------------------------------


def _other(g: Graph, v: int, not_this: int) -> int | None:
    rest = [y for y in g.neighbours(v) if y != not_this]
    return rest[0] if rest else None


def _iter_c2(g: Graph, k: int):
    for u in g.vertices():
        ns = sorted(g.neighbours(u))
        ones = [v for v in ns if g.degree(v) == 1]
        twos = [w for w in ns if g.degree(w) == 2]
        for v in ones:
            for w in twos:
                yield _w("C2", {"u": u, "v": v, "w": w, "x": _other(g, w, u)})


def detect_C2(g: Graph, k: int = MIN_K, limit: int | None = DEFAULT_LIMIT):
    """Vertex adjacent to a degree-2 vertex ``w`` and a pendant ``v``."""
    return _capped(_iter_c2(g, k), limit)


def _iter_c3(g: Graph, k: int):
    for v, w in g.edges():
        if g.degree(v) == 2 and g.degree(w) == 2:
            yield _w("C3", {"u": _other(g, v, w), "v": v, "w": w, "x": _other(g, w, v)})


def detect_C3(g: Graph, k: int = MIN_K, limit: int | None = DEFAULT_LIMIT):
    """Two adjacent degree-2 vertices ``v, w``; ``u`` and ``x`` are their other neighbours."""
    return _capped(_iter_c3(g, k), limit)


def _iter_c4(g: Graph, k: int):
    by_pair: dict[tuple[int, int], list[int]] = {}
    for v in g.vertices():
        if g.degree(v) == 2:
            a, b = sorted(g.neighbours(v))
            by_pair.setdefault((a, b), []).append(v)
    for (u, w), vs in sorted(by_pair.items()):
        for v, x in combinations(vs, 2):
            yield _w("C4", {"u": u, "v": v, "w": w, "x": x})


def detect_C4(g: Graph, k: int = MIN_K, limit: int | None = DEFAULT_LIMIT):
    """Two degree-2 vertices ``v, x`` with the same neighbours ``u, w``."""
    return _capped(_iter_c4(g, k), limit)


def _iter_c5(g: Graph, k: int):
    for v in g.vertices():
        if g.degree(v) != 2:
            continue
        a, b = sorted(g.neighbours(v))
        if not g.has_edge(a, b):
            continue
        for w, u in ((a, b), (b, a)):
            if g.degree(w) <= 6:
                yield _w("C5", {"u": u, "v": v, "w": w})


def detect_C5(g: Graph, k: int = MIN_K, limit: int | None = DEFAULT_LIMIT):
    """Triangle ``u v w`` with ``d(v) = 2`` and ``d(w) <= 6``."""
    return _capped(_iter_c5(g, k), limit)


def _deg3_pairs(g: Graph, u: int) -> list[tuple[int, int]]:
    threes = sorted(v for v in g.neighbours(u) if g.degree(v) == 3)
    return [(v, w) for v, w in combinations(threes, 2) if g.has_edge(v, w)]


def _iter_c6(g: Graph, k: int):
    for u in g.vertices():
        pairs = _deg3_pairs(g, u)
        if not pairs:
            continue
        lows = sorted(x for x in g.neighbours(u) if g.degree(x) <= 2)
        for v, w in pairs:
            for x in lows:
                yield _w("C6", {"u": u, "v": v, "w": w, "x": x, "y": _other(g, x, u)})


def detect_C6(g: Graph, k: int = MIN_K, limit: int | None = DEFAULT_LIMIT):
    """Vertex adjacent to adjacent degree-3 vertices ``v, w`` and to ``x`` with ``d(x) <= 2``."""
    return _capped(_iter_c6(g, k), limit)


def _iter_c7(g: Graph, k: int):
    for u in g.vertices():
        pairs = _deg3_pairs(g, u)
        for (v1, w1), (v2, w2) in combinations(pairs, 2):
            if {v1, w1}.isdisjoint({v2, w2}):
                yield _w("C7", {"u": u, "v1": v1, "w1": w1, "v2": v2, "w2": w2})


def detect_C7(g: Graph, k: int = MIN_K, limit: int | None = DEFAULT_LIMIT):
    """Vertex adjacent to two vertex-disjoint adjacent pairs of degree-3 vertices."""
    return _capped(_iter_c7(g, k), limit)


# -- C8, C9 ------------------------------------------------------------------


def _iter_c8(g: Graph, k: int):
    for u in g.vertices():
        du = g.degree(u)
        ns = sorted(g.neighbours(u))
        pendants = [y for y in ns if g.degree(y) == 1]
        for r in range(2, 7):
            if len(pendants) < 2 * r - 2:
                continue
            bound = SqrtBound(k, r)
            if not bound.exceeded_by(du):
                continue
            for v in ns:
                if g.degree(v) == r:
                    yield _w("C8", {"u": u, "v": v, "pendants": pendants[: 2 * r - 2]},
                             r=r, bound=str(bound))


def detect_C8(g: Graph, k: int, limit: int | None = DEFAULT_LIMIT):
    """``u`` above the conflict bound with ``2r-2`` pendants and a degree-``r`` neighbour."""
    _check_k(k)
    return _capped(_iter_c8(g, k), limit)


def c9_parameters(g: Graph, k: int, u: int) -> tuple[int, int, list[int]] | None:
    """First ``(r, j)`` (r outer, j inner) for which ``u`` is a C9 centre."""
    d = g.degree(u)
    for r in range(1, 7):
        if not SqrtBound(k, r).exceeded_by(d):
            continue
        low = sorted(y for y in g.neighbours(u) if g.degree(y) <= r)
        top = k - 2 * r + 4
        for j in range(1, top - d + 1):
            # d <= top - j holds for j in this range
            if len(low) >= _ceil_div(top - j, j):
                return r, j, low
    return None


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _iter_c9(g: Graph, k: int):
    for u in g.vertices():
        found = c9_parameters(g, k, u)
        if found is not None:
            r, j, low = found
            yield _w("C9", {"u": u, "vs": low}, r=r, j=j, p=len(low),
                     bound=str(SqrtBound(k, r)))


def detect_C9(g: Graph, k: int, limit: int | None = DEFAULT_LIMIT):
    """``u`` with bound(r) < d(u) <= k-2r+4-j and >= ceil((k-2r+4-j)/j) neighbours of degree <= r."""
    _check_k(k)
    return _capped(_iter_c9(g, k), limit)


_ITERS: dict[str, Callable] = {
    "C1": _iter_c1, "C2": _iter_c2, "C3": _iter_c3, "C4": _iter_c4, "C5": _iter_c5,
    "C6": _iter_c6, "C7": _iter_c7, "C8": _iter_c8, "C9": _iter_c9,
}


def iter_witnesses(g: Graph, k: int, kind: str) -> Iterator[ConfigurationWitness]:
    _check_k(k)
    return _ITERS[kind](g, k)


def detect_all(
    g: Graph, k: int, *, exhaustive: bool = False, limit: int = DEFAULT_LIMIT,
    kinds: tuple[str, ...] = KINDS,
) -> list[ConfigurationWitness]:
    """Witnesses of every kind: the first per kind, or up to ``limit`` per kind."""
    _check_k(k)
    if k < g.max_degree:
        raise ParameterError(f"k = {k} is below the maximum degree {g.max_degree}")
    out = []
    for kind in kinds:
        out += _capped(_ITERS[kind](g, k), limit if exhaustive else 1)
    return out


def verify_witness(g: Graph, k: int, w: ConfigurationWitness) -> bool:
    """Re-check a witness against its defining predicate."""
    try:
        return _VERIFY[w.kind](g, k, w)
    except (KeyError, ValueError):
        return False


def _verify_c1(g, k, w):
    u, a, b = w.u, w.vertex("w"), w.vertex("x")
    r = w.r
    if a == b or not (g.has_edge(u, a) and g.has_edge(u, b)) or r is None or not 1 <= r <= 6:
        return False
    t = low_degree_threshold(k, r)
    return g.degree(a) <= r and g.degree(b) <= r and t > 12 and g.degree(u) <= t


def _verify_c2(g, k, w):
    u, v, x2 = w.u, w.vertex("v"), w.vertex("w")
    return (g.has_edge(u, v) and g.has_edge(u, x2) and g.degree(v) == 1
            and g.degree(x2) == 2 and w.vertex("x") == _other(g, x2, u))


def _verify_c3(g, k, w):
    v, x2 = w.vertex("v"), w.vertex("w")
    return (g.has_edge(v, x2) and g.degree(v) == 2 and g.degree(x2) == 2
            and w.u == _other(g, v, x2) and w.vertex("x") == _other(g, x2, v))


def _verify_c4(g, k, w):
    u, v, x2, x = w.u, w.vertex("v"), w.vertex("w"), w.vertex("x")
    return (v != x and u != x2 and g.degree(v) == 2 and g.degree(x) == 2
            and g.neighbours(v) == g.neighbours(x) == frozenset({u, x2}))


def _verify_c5(g, k, w):
    u, v, x2 = w.u, w.vertex("v"), w.vertex("w")
    return (len({u, v, x2}) == 3 and g.has_edge(u, v) and g.has_edge(v, x2) and g.has_edge(u, x2)
            and g.degree(v) == 2 and g.degree(x2) <= 6)


def _verify_c6(g, k, w):
    u, v, x2, x = w.u, w.vertex("v"), w.vertex("w"), w.vertex("x")
    ys = w.role("y")
    y = ys[0] if ys else None
    return (all(g.has_edge(u, t) for t in (v, x2, x)) and g.has_edge(v, x2)
            and g.degree(v) == 3 and g.degree(x2) == 3 and g.degree(x) <= 2
            and y == _other(g, x, u))


def _verify_c7(g, k, w):
    u = w.u
    vs = [w.vertex(n) for n in ("v1", "w1", "v2", "w2")]
    return (len(set(vs)) == 4 and all(g.has_edge(u, t) and g.degree(t) == 3 for t in vs)
            and g.has_edge(vs[0], vs[1]) and g.has_edge(vs[2], vs[3]))


def _verify_c8(g, k, w):
    u, v, r = w.u, w.vertex("v"), w.r
    pend = w.role("pendants")
    if r is None or not 2 <= r <= 6:
        return False
    return (g.has_edge(u, v) and g.degree(v) == r and len(set(pend)) == 2 * r - 2
            and all(g.has_edge(u, y) and g.degree(y) == 1 for y in pend)
            and SqrtBound(k, r).exceeded_by(g.degree(u)))


def _verify_c9(g, k, w):
    u, r, j = w.u, w.r, w.j
    vs = w.role("vs")
    if r is None or j is None or not 1 <= r <= 6 or j < 1:
        return False
    top = k - 2 * r + 4 - j
    d = g.degree(u)
    return (SqrtBound(k, r).exceeded_by(d) and d <= top
            and len(set(vs)) >= _ceil_div(top, j)
            and all(g.has_edge(u, y) and g.degree(y) <= r for y in vs))


_VERIFY = {
    "C1": _verify_c1, "C2": _verify_c2, "C3": _verify_c3, "C4": _verify_c4, "C5": _verify_c5,
    "C6": _verify_c6, "C7": _verify_c7, "C8": _verify_c8, "C9": _verify_c9,
}
