"""Reducers: colour a smaller graph, then extend or repair onto the original.

Each ``reduce_Ci`` performs one surgery, asks ``recurse`` for an nsd
``(k+1)``-colouring of the smaller graph (isolated edges may carry any
colour), and then applies the extension argument for that configuration.
The result is always validated; anything short of a proper nsd colouring
raises :class:`ExtensionFailed`.

Where the argument only asserts that enough colours remain, the choice is
made by scanning the palette; where it says "switch if necessary", all
switches are tried in a fixed order.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from itertools import permutations

from .configurations import ConfigurationWitness
from .errors import ExtensionFailed, InvariantBreach, ParameterError
from .graph import (
    Edge,
    EdgeColouring,
    Graph,
    contract_edge,
    disjoin_edge,
    edge_key,
    is_nsd,
    is_proper,
    remove_edges,
    vertex_split_map,
)
from .lemma import lemma1_extensions

Provider = Callable[[Graph, str], EdgeColouring]


# -- helpers -----------------------------------------------------------------


class _Work:
    """Mutable colouring of ``g`` with cheap local checks."""

    def __init__(self, g: Graph, colours: dict[Edge, int], K: int):
        self.g = g
        self.c = dict(colours)
        self.K = K

    def get(self, u: int, v: int) -> int | None:
        return self.c.get(edge_key(u, v))

    def set(self, u: int, v: int, colour: int | None) -> None:
        if colour is None:
            self.c.pop(edge_key(u, v), None)
        else:
            self.c[edge_key(u, v)] = colour

    def colours_at(self, v: int, skip: int | None = None) -> set[int]:
        out = set()
        for y in self.g.neighbours(v):
            if y != skip:
                col = self.c.get(edge_key(v, y))
                if col is not None:
                    out.add(col)
        return out

    def sum_at(self, v: int, skip: int | None = None) -> int:
        return sum(
            self.c.get(edge_key(v, y), 0) for y in self.g.neighbours(v) if y != skip
        )

    def proper_at(self, v: int) -> bool:
        cols = [self.c.get(edge_key(v, y)) for y in self.g.neighbours(v)]
        cols = [c for c in cols if c is not None]
        return len(cols) == len(set(cols))

    def ok_around(self, vertices: Iterable[int]) -> bool:
        """Properness at, and no conflict on any edge touching, the given vertices."""
        for v in vertices:
            if not self.proper_at(v):
                return False
            s = self.sum_at(v)
            for y in self.g.neighbours(v):
                if self.sum_at(y) == s:
                    return False
        return True

    def swap(self, e: Edge, f: Edge) -> None:
        a, b = self.c[edge_key(*e)], self.c[edge_key(*f)]
        self.c[edge_key(*e)], self.c[edge_key(*f)] = b, a

    def result(self) -> EdgeColouring:
        col = EdgeColouring(self.c, self.K)
        if not col.is_total(self.g):
            raise ExtensionFailed(f"edges left uncoloured: {col.missing_edges(self.g)[:3]}")
        ok, pair = is_proper(self.g, col)
        if not ok:
            raise ExtensionFailed(f"improper result at {pair}")
        ok, conflicts = is_nsd(self.g, col)
        if not ok:
            raise ExtensionFailed(f"conflicts remain: {conflicts[:3]}")
        return col


def _inherit(g: Graph, h_colouring: EdgeColouring, K: int) -> dict[Edge, int]:
    """Colours of the edges ``g`` shares with the smaller graph."""
    return {e: c for e, c in h_colouring.items() if g.has_edge(*e)}


def _scan_edge(work: _Work, a: int, b: int, also_check: Iterable[int] = ()) -> bool:
    """Give ``ab`` the least colour keeping ``a``, ``b`` and ``also_check`` clean."""
    banned = work.colours_at(a, skip=b) | work.colours_at(b, skip=a)
    for col in range(1, work.K + 1):
        if col in banned:
            continue
        work.set(a, b, col)
        if work.ok_around([a, b, *also_check]):
            return True
    work.set(a, b, None)
    return False


def _lemma_route(
    g: Graph, alpha: EdgeColouring, u: int, vs: list[int], k: int, avoid: bool
) -> EdgeColouring:
    try:
        exts = lemma1_extensions(g, alpha, u, vs, k, avoid_u_conflicts=avoid)
    except ParameterError as exc:
        raise ExtensionFailed(f"extension lemma not applicable: {exc}") from None
    base = _inherit(g, alpha, k + 1)
    for ext in exts:
        work = _Work(g, {**base, **ext.colours}, k + 1)
        if work.ok_around([u, *vs]):
            return work.result()
    raise ExtensionFailed(f"all {len(exts)} extensions conflict at {u}")


# -- C1 ----------------------------------------------------------------------


def reduce_C1(g: Graph, w: ConfigurationWitness, k: int, recurse: Provider) -> EdgeColouring:
    u, a, b = w.u, w.vertex("w"), w.vertex("x")
    if g.has_edge(a, b):
        h = remove_edges(g, [(u, a), (u, b), (a, b)])
        alpha = recurse(h, f"remove {u}-{a},{u}-{b},{a}-{b}")
        return _lemma_route(g, alpha, u, [a, b], k, avoid=False)
    h = remove_edges(g, [(u, a), (u, b)])
    alpha = recurse(h, f"remove {u}-{a},{u}-{b}")
    return _lemma_route(g, alpha, u, [a, b], k, avoid=True)


# -- C2 ----------------------------------------------------------------------


def reduce_C2(g: Graph, w: ConfigurationWitness, k: int, recurse: Provider) -> EdgeColouring:
    u, v, mid, x = w.u, w.vertex("v"), w.vertex("w"), w.vertex("x")
    K = k + 1
    h, pend = vertex_split_map(g, mid)
    alpha = recurse(h, f"split {mid}")
    work = _Work(g, _inherit(g, alpha, K), K)
    work.set(u, mid, alpha[(u, pend[u])])
    work.set(mid, x, alpha[(x, pend[x])])

    if 2 * g.degree(x) <= k:
        x_rest = work.sum_at(x, skip=mid)
        if work.get(u, mid) == x_rest:
            work.swap((u, v), (u, mid))
        work.set(mid, x, None)
        banned = work.colours_at(mid) | work.colours_at(x)
        x_nbr_sums = {work.sum_at(y) for y in g.neighbours(x) if y != mid}
        cands = [c for c in range(1, K + 1) if c not in banned and x_rest + c not in x_nbr_sums]
        if len(cands) < 2:
            raise InvariantBreach(f"only {len(cands)} colours left for {mid}-{x}")
        for c in cands:
            work.set(mid, x, c)
            if work.ok_around([mid, x, u, v]):
                return work.result()
        raise ExtensionFailed(f"no colour for {mid}-{x} avoids a conflict at {mid}")

    for swap in (False, True):
        if swap:
            work.swap((u, v), (u, mid))
        if work.get(u, mid) != work.get(mid, x) and work.ok_around([u, v, mid, x]):
            return work.result()
    raise ExtensionFailed("no switch of uv, uw gives a valid colouring")


# -- C3 ----------------------------------------------------------------------


def reduce_C3(g: Graph, w: ConfigurationWitness, k: int, recurse: Provider) -> EdgeColouring:
    u, v, mid, x = w.u, w.vertex("v"), w.vertex("w"), w.vertex("x")
    K = k + 1
    if u == x:
        h = remove_edges(g, [(v, mid)])
        alpha = recurse(h, f"remove {v}-{mid}")
        work = _Work(g, _inherit(g, alpha, K), K)
    else:
        h = contract_edge(g, (v, mid))
        alpha = recurse(h, f"contract {v}-{mid}")
        work = _Work(g, {e: c for e, c in alpha.items() if g.has_edge(*e)}, K)
        work.set(mid, x, alpha[(v, x)])
    if not _scan_edge(work, v, mid, also_check=[u, x]):
        raise ExtensionFailed(f"no colour for {v}-{mid}")
    return work.result()


# -- C4 ----------------------------------------------------------------------


def reduce_C4(g: Graph, w: ConfigurationWitness, k: int, recurse: Provider) -> EdgeColouring:
    u, v, far, x = w.u, w.vertex("v"), w.vertex("w"), w.vertex("x")
    K = k + 1
    h1, pv = vertex_split_map(g, v)
    h, px = vertex_split_map(h1, x)
    alpha = recurse(h, f"split {v},{x}")
    work = _Work(g, _inherit(g, alpha, K), K)
    work.set(u, v, alpha[(u, pv[u])])
    work.set(v, far, alpha[(far, pv[far])])
    work.set(u, x, alpha[(u, px[u])])
    work.set(x, far, alpha[(far, px[far])])
    for at_u in (False, True):
        for at_w in (False, True):
            trial = _Work(g, work.c, K)
            if at_u:
                trial.swap((u, v), (u, x))
            if at_w:
                trial.swap((far, v), (far, x))
            if trial.ok_around([u, v, far, x]):
                return trial.result()
    raise ExtensionFailed("no switch at u or w repairs the 4-cycle")


# -- C5 ----------------------------------------------------------------------


def reduce_C5(g: Graph, w: ConfigurationWitness, k: int, recurse: Provider) -> EdgeColouring:
    u, v, t = w.u, w.vertex("v"), w.vertex("w")
    K = k + 1
    h = remove_edges(g, [(v, t)])
    alpha = recurse(h, f"remove {v}-{t}")
    work = _Work(g, _inherit(g, alpha, K), K)
    if work.get(u, v) == work.sum_at(t, skip=v):
        work.swap((u, v), (u, t))
    if not _scan_edge(work, v, t, also_check=[u]):
        raise ExtensionFailed(f"no colour for {v}-{t}")
    return work.result()


# -- C6 ----------------------------------------------------------------------


def reduce_C6(g: Graph, w: ConfigurationWitness, k: int, recurse: Provider) -> EdgeColouring:
    u, v, t, x = w.u, w.vertex("v"), w.vertex("w"), w.vertex("x")
    ys = w.role("y")
    y = ys[0] if ys else None
    K = k + 1
    h = remove_edges(g, [(v, t)])
    alpha = recurse(h, f"remove {v}-{t}")
    base = _Work(g, _inherit(g, alpha, K), K)
    star = [(u, v), (u, t), (u, x)]
    cols = [base.get(*e) for e in star]
    xy_options: list[int | None] = [None]
    if y is not None:
        cur = base.get(x, y)
        xy_options = [cur] + [c for c in range(1, K + 1) if c != cur]
    for perm in permutations(cols):
        work = _Work(g, base.c, K)
        for e, c in zip(star, perm):
            work.set(*e, c)
        for xy in xy_options:
            if y is not None:
                work.set(x, y, xy)
                if not (work.proper_at(x) and work.proper_at(y)):
                    continue
            if work.sum_at(v, skip=t) == work.sum_at(t, skip=v):
                continue
            if _scan_edge(work, v, t, also_check=[u, x] + ([y] if y is not None else [])):
                return work.result()
    raise ExtensionFailed("no switch at u completes the pair edge")


# -- C7 ----------------------------------------------------------------------


def reduce_C7(g: Graph, w: ConfigurationWitness, k: int, recurse: Provider) -> EdgeColouring:
    u = w.u
    v1, w1, v2, w2 = (w.vertex(n) for n in ("v1", "w1", "v2", "w2"))
    K = k + 1
    h = remove_edges(g, [(v1, w1), (v2, w2)])
    alpha = recurse(h, f"remove {v1}-{w1},{v2}-{w2}")
    base = _Work(g, _inherit(g, alpha, K), K)
    star = [(u, v1), (u, w1), (u, v2), (u, w2)]
    cols = [base.get(*e) for e in star]
    for perm in permutations(cols):
        work = _Work(g, base.c, K)
        for e, c in zip(star, perm):
            work.set(*e, c)
        if not work.proper_at(v1) or not work.proper_at(w1):
            continue
        if not work.proper_at(v2) or not work.proper_at(w2):
            continue
        if work.sum_at(v1, skip=w1) == work.sum_at(w1, skip=v1):
            continue
        if work.sum_at(v2, skip=w2) == work.sum_at(w2, skip=v2):
            continue
        for c1 in range(1, K + 1):
            if c1 in work.colours_at(v1) | work.colours_at(w1):
                continue
            work.set(v1, w1, c1)
            if _scan_edge(work, v2, w2, also_check=[u, v1, w1]):
                return work.result()
            work.set(v1, w1, None)
    raise ExtensionFailed("no permutation at u completes both pair edges")


# -- C8 ----------------------------------------------------------------------


def reduce_C8(g: Graph, w: ConfigurationWitness, k: int, recurse: Provider) -> EdgeColouring:
    u, v = w.u, w.vertex("v")
    K = k + 1
    h = disjoin_edge(g, (u, v))
    fresh = h.next_id() - 1
    alpha = recurse(h, f"disjoin {u}-{v}")
    base = {e: c for e, c in alpha.items() if g.has_edge(*e)}
    pendants = sorted(z for z in h.neighbours(u) if h.degree(z) == 1)
    for z in pendants:
        work = _Work(g, base, K)
        work.set(u, v, alpha[(u, z)])
        if z != fresh:
            work.set(u, z, alpha[(u, fresh)])
        if work.ok_around([v, u] + ([z] if z != fresh else [])):
            return work.result()
    raise ExtensionFailed(f"no pendant colour of {u} fits at {v}")


# -- C9 ----------------------------------------------------------------------


def matching_subset(g: Graph, vs: Iterable[int]) -> list[int]:
    """Greedy subset of ``vs`` inducing a graph of maximum degree at most 1."""
    chosen: list[int] = []
    deg: dict[int, int] = {}
    for v in vs:
        mates = [y for y in chosen if g.has_edge(v, y)]
        if len(mates) > 1 or any(deg[y] >= 1 for y in mates):
            continue
        chosen.append(v)
        deg[v] = len(mates)
        for y in mates:
            deg[y] += 1
    return chosen


def reduce_C9(g: Graph, w: ConfigurationWitness, k: int, recurse: Provider) -> EdgeColouring:
    u = w.u
    vs = matching_subset(g, w.role("vs"))
    inside = set(vs) | {u}
    star_edges = [e for e in g.edges() if e[0] in inside and e[1] in inside]
    h = remove_edges(g, star_edges)
    alpha = recurse(h, f"remove star at {u} ({len(vs)} leaves)")
    return _lemma_route(g, alpha, u, vs, k, avoid=False)


REDUCERS: dict[str, Callable[..., EdgeColouring]] = {
    "C1": reduce_C1, "C2": reduce_C2, "C3": reduce_C3, "C4": reduce_C4, "C5": reduce_C5,
    "C6": reduce_C6, "C7": reduce_C7, "C8": reduce_C8, "C9": reduce_C9,
}


def reduce(g: Graph, w: ConfigurationWitness, k: int, recurse: Provider) -> EdgeColouring:
    return REDUCERS[w.kind](g, w, k, recurse)


__all__ = ["REDUCERS", "Provider", "matching_subset", "reduce"] + [
    f"reduce_C{i}" for i in range(1, 10)
]
