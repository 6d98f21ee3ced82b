"""Enumerating extensions of a colouring onto a star with distinct centre sums.

Setting: ``u`` has neighbours ``v_1..v_p`` inducing a matching, and every edge
of the graph except those inside ``{u, v_1..v_p}`` is coloured.  Each edge
``uv_j`` gets a candidate list; the lists are trimmed forwards by minima and
backwards by maxima so that a staircase of assignments (all minima, then
raising one position at a time to its maximum, last position first) uses
distinct colours and produces strictly increasing sums at ``u``.
Matched pairs ``v_{2t-1} v_{2t}`` come first; their joining edge is coloured
last by scanning the palette.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .errors import InvariantBreach, ParameterError, PartialColouringError
from .graph import Edge, EdgeColouring, Graph, edge_key


@dataclass
class ColourListFamily:
    """Candidate colours for the edges ``u v_j`` in lemma order."""

    u: int
    order: list[int]
    pairs: int
    initial: list[list[int]]
    lists: list[list[int]]
    floors: list[int]
    removed: list[list[tuple[int, str]]] = field(default_factory=list)

    @property
    def counts(self) -> list[int]:
        return [len(lst) for lst in self.lists]


@dataclass
class Extension:
    """One way of colouring the star: colours on every new edge and the sum at ``u``."""

    colours: dict[Edge, int]
    added: int
    u_sum: int


def _colour_of(g: Graph, alpha, e: Edge) -> int:
    c = alpha.get(*e) if isinstance(alpha, EdgeColouring) else alpha.get(e)
    if c is None:
        raise PartialColouringError(e)
    return c


def _matching_order(g: Graph, vs: Sequence[int]) -> tuple[list[int], int]:
    inside = set(vs)
    pairs, seen = [], set()
    for v in vs:
        if v in seen:
            continue
        mates = [y for y in g.neighbours(v) if y in inside]
        if len(mates) > 1:
            raise ParameterError(f"vertex {v} has {len(mates)} neighbours among the v_i (needs <= 1)")
        if mates:
            pairs += [v, mates[0]]
            seen |= {v, mates[0]}
    rest = [v for v in vs if v not in seen]
    return pairs + rest, len(pairs) // 2


def check_preconditions(g: Graph, u: int, vs: Sequence[int], k: int) -> None:
    """Raise :class:`ParameterError` naming the first violated hypothesis."""
    if k < 20:
        raise ParameterError(f"k >= 20 required, got {k}")
    if not vs:
        raise ParameterError("at least one v_i required")
    if len(set(vs)) != len(vs) or u in vs:
        raise ParameterError("v_i must be distinct and different from u")
    du = g.degree(u)
    for v in vs:
        if not g.has_edge(u, v):
            raise ParameterError(f"{v} is not a neighbour of {u}")
        dv = g.degree(v)
        if dv > 6:
            raise ParameterError(f"d({v}) = {dv} > 6")
        if du > k - 2 * dv + 3:
            raise ParameterError(f"d(u) = {du} > k - 2 d({v}) + 3 = {k - 2 * dv + 3}")
    _matching_order(g, vs)


def count_bound(g: Graph, u: int, vs: Sequence[int], k: int) -> int:
    """``1 + p (k - d(u) + 3) - 2 sum d(v_i)``."""
    p = len(vs)
    return 1 + p * (k - g.degree(u) + 3) - 2 * sum(g.degree(v) for v in vs)


def lemma1_lists(
    g: Graph, alpha, u: int, vs: Sequence[int], k: int, *, avoid_u_conflicts: bool = False
) -> ColourListFamily:
    """Build and trim the candidate lists.

    ``avoid_u_conflicts`` (only for two non-adjacent ``v_i``) additionally
    removes, before trimming, the colour on ``u v_2`` that would make ``u``
    and ``v_1`` equal whatever ``u v_1`` gets, and symmetrically.
    """
    check_preconditions(g, u, vs, k)
    order, pairs = _matching_order(g, vs)
    p = len(order)
    K = k + 1
    star = set(order) | {u}

    def outside_edges(x):
        return [edge_key(x, y) for y in g.neighbours(x) if not (x in star and y in star)]

    def outside_sum(x):
        return sum(_colour_of(g, alpha, e) for e in outside_edges(x))

    u_cols = {_colour_of(g, alpha, e) for e in outside_edges(u)}
    A = outside_sum(u)
    S = [outside_sum(v) for v in order]
    removed: list[list[tuple[int, str]]] = [[] for _ in range(p)]
    lists = []
    for j, v in enumerate(order):
        banned = u_cols | {_colour_of(g, alpha, e) for e in outside_edges(v)}
        if j >= 2 * pairs:
            for y in g.neighbours(v):
                if y != u:
                    banned.add(outside_sum(y) - S[j])
        lists.append([c for c in range(1, K + 1) if c not in banned])
    initial = [lst[:] for lst in lists]

    def drop(j, c, why):
        if c in lists[j]:
            lists[j].remove(c)
            removed[j].append((c, why))

    floors = [k - g.degree(u) - 2 * g.degree(v) + 4 for v in order]
    if avoid_u_conflicts:
        if p != 2 or pairs:
            raise ParameterError("avoid_u_conflicts needs exactly two non-adjacent v_i")
        drop(1, S[0] - A, "u-v1")
        drop(0, S[1] - A, "u-v2")
        floors = [f - 1 for f in floors]

    for i in range(p - 1):
        if not lists[i]:
            break
        m = lists[i][0]
        for j in range(i + 1, p):
            drop(j, m, f"min{i + 1}")
        if i % 2 == 0 and i < 2 * pairs:
            drop(i + 1, S[i] + m - S[i + 1], "c*")
    for i in range(p - 1, 0, -1):
        if not lists[i]:
            break
        m = lists[i][-1]
        for j in range(i):
            drop(j, m, f"max{i + 1}")
        if i % 2 == 1 and i < 2 * pairs:
            drop(i - 1, S[i] + m - S[i - 1], "c**")

    fam = ColourListFamily(u, order, pairs, initial, lists, floors, removed)
    for j, lst in enumerate(lists):
        if len(lst) < max(floors[j], 1):
            raise InvariantBreach(
                f"list for u-{order[j]} has {len(lst)} colours, below the floor {floors[j]}"
            )
    return fam


def staircase(fam: ColourListFamily) -> list[list[int]]:
    """Assignments in strictly increasing order of their sum."""
    p = len(fam.lists)
    mins = [lst[0] for lst in fam.lists]
    maxs = [lst[-1] for lst in fam.lists]
    out = [mins[:]]
    for s in range(p - 1, -1, -1):
        for c in fam.lists[s][1:]:
            out.append(mins[:s] + [c] + maxs[s + 1:])
    return out


def lemma1_extensions(
    g: Graph,
    alpha: EdgeColouring | Mapping[Edge, int],
    u: int,
    vs: Sequence[int],
    k: int,
    *,
    avoid_u_conflicts: bool = False,
) -> list[Extension]:
    """Extensions of ``alpha`` onto ``E(G[{u} + vs])`` with pairwise distinct sums at ``u``.

    Within every extension the colouring is proper, no ``v_i`` conflicts
    with a neighbour other than ``u``, matched ``v_i`` do not conflict with
    ``u`` either, and (with ``avoid_u_conflicts``) neither do the two
    unmatched ones.
    """
    fam = lemma1_lists(g, alpha, u, vs, k, avoid_u_conflicts=avoid_u_conflicts)
    order, pairs = fam.order, fam.pairs
    K = k + 1
    star = set(order) | {u}

    def outside(x):
        return [edge_key(x, y) for y in g.neighbours(x) if not (x in star and y in star)]

    base_sum = {x: sum(_colour_of(g, alpha, e) for e in outside(x)) for x in star}
    base_cols = {x: {_colour_of(g, alpha, e) for e in outside(x)} for x in star}
    fixed_sum = {}
    for x in order:
        for y in g.neighbours(x):
            if y not in star:
                fixed_sum[y] = sum(_colour_of(g, alpha, edge_key(y, z)) for z in g.neighbours(y))

    out = []
    for assignment in staircase(fam):
        added = sum(assignment)
        u_sum = base_sum[u] + added
        colours = {edge_key(u, v): c for v, c in zip(order, assignment)}
        for t in range(pairs):
            a, b = order[2 * t], order[2 * t + 1]
            ca, cb = assignment[2 * t], assignment[2 * t + 1]
            used = base_cols[a] | base_cols[b] | {ca, cb}
            pick = None
            for e in range(1, K + 1):
                if e in used:
                    continue
                sa = base_sum[a] + ca + e
                sb = base_sum[b] + cb + e
                if any(
                    sa == (u_sum if y == u else fixed_sum[y])
                    for y in g.neighbours(a) if y != b
                ):
                    continue
                if any(
                    sb == (u_sum if y == u else fixed_sum[y])
                    for y in g.neighbours(b) if y != a
                ):
                    continue
                pick = e
                break
            if pick is None:
                raise InvariantBreach(f"no colour for pair edge {a}-{b}")
            colours[edge_key(a, b)] = pick
        out.append(Extension(colours, added, u_sum))
    return out
