"""Exact backtracking search for nsd edge colourings.

The search colours edges in a fixed order (descending ``deg(u) + deg(v)``,
ties by edge key) and tries colours in increasing order, so results are
deterministic.  Partial sums are kept per vertex and a conflict is only
declared once both endpoints of an edge have all their edges coloured, which
keeps "none" verdicts exhaustive.  A vertex with a single uncoloured edge
left is checked ahead: if no colour for that edge can avoid a clash, the
branch is cut.  Without this a pair of vertices sharing their last edge and
already carrying equal sums is only noticed at the bottom of a deep subtree.

No colour-symmetry breaking is done: permuting colours does not preserve
vertex sums, so fixing the first edge to colour 1 would lose solutions.
"""

from __future__ import annotations

import time
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .errors import BudgetExhausted, ExtensionFailed, IsolatedEdgeError, ParameterError
from .graph import Edge, EdgeColouring, Graph, edge_key


@dataclass(frozen=True)
class SolveBudget:
    """Limits for one solver call (shared across palette sizes in ``chi_sum_exact``)."""

    max_palette: int = 64
    node_limit: int = 20_000_000
    time_limit: float = 120.0

    def __post_init__(self):
        if self.max_palette < 1 or self.node_limit < 1 or self.time_limit <= 0:
            raise ParameterError("budget fields must be positive")


class _Clock:
    def __init__(self, budget: SolveBudget):
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.time_limit

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            raise BudgetExhausted(f"node limit {self.budget.node_limit} reached")
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted(f"time limit {self.budget.time_limit}s reached")


def _search(
    g: Graph, K: int, fixed: Mapping[Edge, int], free: list[Edge], clock: _Clock
) -> dict[Edge, int] | None:
    sums = {v: 0 for v in g.vertices()}
    used = {v: 0 for v in g.vertices()}
    left = {v: 0 for v in g.vertices()}
    for (u, v), c in fixed.items():
        bit = 1 << c
        if used[u] & bit or used[v] & bit:
            return None
        used[u] |= bit
        used[v] |= bit
        sums[u] += c
        sums[v] += c
    for u, v in free:
        left[u] += 1
        left[v] += 1
    # conflicts among vertices that are already complete
    for u, v in g.edges():
        if left[u] == 0 and left[v] == 0 and sums[u] == sums[v]:
            return None

    nbrs = {v: tuple(g.neighbours(v)) for v in g.vertices()}
    open_nbrs: dict[int, set[int]] = {v: set() for v in g.vertices()}
    for u, v in free:
        open_nbrs[u].add(v)
        open_nbrs[v].add(u)
    assign: dict[Edge, int] = {}

    def closed_ok(x: int) -> bool:
        s = sums[x]
        for y in nbrs[x]:
            if left[y] == 0 and sums[y] == s:
                return False
        return True

    def last_edge_ok(x: int) -> bool:
        """If ``x`` has one uncoloured edge left, some colour must still fit it."""
        if left[x] != 1:
            return True
        (z,) = open_nbrs[x]
        blocked = used[x] | used[z]
        bad = {sums[y] - sums[x] for y in nbrs[x] if left[y] == 0}
        if left[z] == 1:
            if sums[z] == sums[x]:
                return False
            bad |= {sums[y] - sums[z] for y in nbrs[z] if left[y] == 0}
        for c in range(1, K + 1):
            if not blocked >> c & 1 and c not in bad:
                return True
        return False

    def lookahead_ok(u: int, v: int) -> bool:
        for x in (u, v):
            if left[x] == 0:
                if not closed_ok(x):
                    return False
                for y in nbrs[x]:
                    if left[y] == 1 and not last_edge_ok(y):
                        return False
            elif not last_edge_ok(x):
                return False
        return True

    def rec(i: int) -> bool:
        if i == len(free):
            return True
        u, v = free[i]
        blocked = used[u] | used[v]
        open_nbrs[u].discard(v)
        open_nbrs[v].discard(u)
        for c in range(1, K + 1):
            bit = 1 << c
            if blocked & bit:
                continue
            clock.tick()
            used[u] |= bit
            used[v] |= bit
            sums[u] += c
            sums[v] += c
            left[u] -= 1
            left[v] -= 1
            if lookahead_ok(u, v):
                assign[(u, v)] = c
                if rec(i + 1):
                    return True
            used[u] &= ~bit
            used[v] &= ~bit
            sums[u] -= c
            sums[v] -= c
            left[u] += 1
            left[v] += 1
        open_nbrs[u].add(v)
        open_nbrs[v].add(u)
        return False

    if rec(0):
        return assign
    return None


def _order(g: Graph, edges: Iterable[Edge]) -> list[Edge]:
    return sorted(edges, key=lambda e: (-(g.degree(e[0]) + g.degree(e[1])), e))


def extend_colouring(
    g: Graph,
    K: int,
    fixed: Mapping[tuple[int, int], int] | EdgeColouring = (),
    budget: SolveBudget | None = None,
    *,
    _clock: _Clock | None = None,
) -> EdgeColouring | None:
    """Complete ``fixed`` to a proper nsd ``K``-colouring of ``g``, or ``None``.

    Edges already coloured keep their colours; only the others are searched.
    Every edge of ``g`` must end up coloured and every edge of ``g`` must be
    conflict-free, including isolated edges (which therefore never succeed).
    """
    if K < 1:
        raise ParameterError(f"palette size must be >= 1, got {K}")
    clock = _clock or _Clock(budget or SolveBudget())
    items = fixed.items() if hasattr(fixed, "items") else fixed
    pre = {edge_key(*e): c for e, c in items}
    for e, c in pre.items():
        if not g.has_edge(*e):
            raise ParameterError(f"fixed colour on non-edge {e}")
        if not 1 <= c <= K:
            raise ParameterError(f"fixed colour {c} outside 1..{K}")
    free = _order(g, [e for e in g.edges() if e not in pre])
    sol = _search(g, K, pre, free, clock)
    if sol is None:
        return None
    return EdgeColouring({**pre, **sol}, K)


def _reject_isolated_edges(g: Graph) -> None:
    iso = g.isolated_edges()
    if iso:
        raise IsolatedEdgeError(iso[0])


def find_nsd_colouring(
    g: Graph, K: int, budget: SolveBudget | None = None, *, _clock: _Clock | None = None
) -> EdgeColouring | None:
    """An nsd colouring with colours ``1..K``, or ``None`` if none exists.

    Components are solved independently.  Raises :class:`BudgetExhausted`
    if the budget runs out before a verdict.
    """
    _reject_isolated_edges(g)
    if K < 1:
        raise ParameterError(f"palette size must be >= 1, got {K}")
    clock = _clock or _Clock(budget or SolveBudget())
    colours: dict[Edge, int] = {}
    for comp in g.components():
        if len(comp) < 2:
            continue
        part = extend_colouring(g.subgraph(comp), K, _clock=clock)
        if part is None:
            return None
        colours.update(part.as_dict())
    return EdgeColouring(colours, K)


def chi_sum_exact(g: Graph, budget: SolveBudget | None = None) -> int:
    """Least ``K`` admitting an nsd ``K``-colouring (0 for an edgeless graph)."""
    _reject_isolated_edges(g)
    if g.edge_count == 0:
        return 0
    budget = budget or SolveBudget()
    clock = _Clock(budget)
    K = g.max_degree
    while K <= budget.max_palette:
        try:
            found = find_nsd_colouring(g, K, _clock=clock)
        except BudgetExhausted as exc:
            raise BudgetExhausted(
                f"{exc}; no nsd {K}-colouring found yet", lower_bound=K
            ) from None
        if found is not None:
            return K
        K += 1
    raise BudgetExhausted(
        f"no nsd colouring with at most {budget.max_palette} colours", lower_bound=K
    )


def colour_by_minimality(g: Graph, K: int, budget: SolveBudget | None = None) -> EdgeColouring:
    """nsd colouring of every component of order >= 3; isolated edges get colour 1."""
    if K < g.max_degree + 1:
        raise ParameterError(f"palette {K} below max degree + 1 = {g.max_degree + 1}")
    clock = _Clock(budget or SolveBudget())
    colours: dict[Edge, int] = {}
    for comp in g.components():
        if len(comp) == 2:
            colours[(comp[0], comp[1])] = 1
        elif len(comp) > 2:
            part = extend_colouring(g.subgraph(comp), K, _clock=clock)
            if part is None:
                raise ExtensionFailed(f"no nsd {K}-colouring of component at {comp[0]}")
            colours.update(part.as_dict())
    return EdgeColouring(colours, K)
