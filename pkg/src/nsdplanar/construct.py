"""Recursive construction of nsd ``(k+1)``-colourings by configuration reduction.

Every component is either small enough for the exact search, or contains a
configuration whose reducer hands a strictly smaller graph back to this
driver.  The trace records each step with the graph keys on both sides,
which certifies termination: keys strictly decrease along every chain.
"""

from __future__ import annotations

import sys
import threading
from collections.abc import Sequence
from dataclasses import dataclass, field

from .configurations import KINDS, MIN_K, iter_witnesses
from .errors import (
    BudgetExhausted,
    ExtensionFailed,
    InvariantBreach,
    IsolatedEdgeError,
    ParameterError,
)
from .graph import EdgeColouring, Graph, GraphOrderKey, Ordering, is_nsd, is_proper
from .reducers import REDUCERS
from .solver import SolveBudget, _Clock, extend_colouring

# Cheapest surgeries first.  NATURAL_ORDER is the order in which each
# extension argument may assume the earlier configurations absent.
DEFAULT_ORDER: tuple[str, ...] = ("C3", "C4", "C5", "C2", "C1", "C6", "C7", "C8", "C9")
NATURAL_ORDER: tuple[str, ...] = KINDS


@dataclass
class ReductionStep:
    depth: int
    kind: str
    surgery: str
    parent_key: GraphOrderKey
    child_key: GraphOrderKey | None
    outcome: str = "pending"
    witness: str | None = None

    def line(self) -> str:
        child = "-" if self.child_key is None else str(self.child_key)
        wit = f" [{self.witness}]" if self.witness else ""
        return (
            f"{self.depth} {self.kind}{wit} {self.surgery} :: {self.parent_key} -> {child}"
            f" :: {self.outcome}"
        )


@dataclass
class ReductionTrace:
    steps: list[ReductionStep] = field(default_factory=list)

    def keys_decrease(self) -> bool:
        """Every surgery step produced a strictly smaller graph."""
        return all(
            s.child_key is None or s.child_key.compare(s.parent_key) is Ordering.LESS
            for s in self.steps
        )

    def reductions(self) -> list[ReductionStep]:
        return [s for s in self.steps if s.kind.startswith("C")]

    def lines(self) -> list[str]:
        return [s.line() for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class ConstructOptions:
    order: tuple[str, ...] = DEFAULT_ORDER
    cutoff_edges: int = 12
    cutoff_degree: int = 5
    max_attempts: int = 3


class _Driver:
    def __init__(self, k: int, budget: SolveBudget, opts: ConstructOptions):
        self.k = k
        self.K = k + 1
        self.opts = opts
        self.clock = _Clock(budget)
        self.trace = ReductionTrace()

    def solve(self, h: Graph, depth: int) -> EdgeColouring:
        """Colour by minimality: nsd on big components, colour 1 on isolated edges."""
        colours = {}
        comps = h.components()
        for comp in comps:
            if len(comp) == 1:
                continue
            if len(comp) == 2:
                colours[(comp[0], comp[1])] = 1
                continue
            part = h if len(comps) == 1 else h.subgraph(comp)
            colours.update(self.solve_component(part, depth).as_dict())
        return EdgeColouring(colours, self.K)

    def _search(self, g: Graph, depth: int, kind: str, why: str) -> EdgeColouring:
        step = ReductionStep(depth, kind, why, GraphOrderKey.of(g), None)
        self.trace.steps.append(step)
        col = extend_colouring(g, self.K, _clock=self.clock)
        if col is None:
            step.outcome = "none"
            raise ExtensionFailed(f"no nsd {self.K}-colouring exists for a component")
        step.outcome = "solved"
        return col

    def solve_component(self, g: Graph, depth: int) -> EdgeColouring:
        self.clock.tick()
        if g.edge_count <= self.opts.cutoff_edges or g.max_degree <= self.opts.cutoff_degree:
            return self._search(g, depth, "search", "small graph")
        parent = GraphOrderKey.of(g)
        attempts = 0
        for kind in self.opts.order:
            for wit in iter_witnesses(g, self.k, kind):
                if attempts >= self.opts.max_attempts:
                    break
                attempts += 1
                step = ReductionStep(depth, kind, "", parent, None, witness=str(wit))
                self.trace.steps.append(step)

                def provider(h: Graph, surgery: str, step=step) -> EdgeColouring:
                    step.surgery = surgery
                    step.child_key = GraphOrderKey.of(h)
                    if step.child_key.compare(parent) is not Ordering.LESS:
                        raise InvariantBreach(
                            f"{step.kind} surgery did not shrink the graph: "
                            f"{step.child_key} vs {parent}"
                        )
                    return self.solve(h, depth + 1)

                try:
                    col = REDUCERS[kind](g, wit, self.k, provider)
                except ExtensionFailed as exc:
                    step.outcome = f"failed: {exc}"
                    continue
                step.outcome = "extended"
                return col
            if attempts >= self.opts.max_attempts:
                break
        reason = "no configuration" if attempts == 0 else "reducers failed"
        return self._search(g, depth, "fallback", reason)


def _run_with_big_stack(fn):
    """Run ``fn`` in a thread with a large stack; deep recursion needs it."""
    result: dict = {}

    def target():
        try:
            result["value"] = fn()
        except BaseException as exc:  # re-raised in the caller's thread
            result["error"] = exc

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, 100_000))
    threading.stack_size(512 * 1024 * 1024)
    try:
        t = threading.Thread(target=target)
        t.start()
        t.join()
    finally:
        threading.stack_size(old_size)
        sys.setrecursionlimit(old_limit)
    if "error" in result:
        raise result["error"]
    return result["value"]


def construct_nsd(
    g: Graph,
    k: int | None = None,
    budget: SolveBudget | None = None,
    *,
    order: Sequence[str] | None = None,
    options: ConstructOptions | None = None,
) -> tuple[EdgeColouring, ReductionTrace]:
    """An nsd ``(k+1)``-colouring of ``g`` and the trace of how it was built.

    ``k`` defaults to ``max(28, max degree)``.  Raises
    :class:`BudgetExhausted` (carrying the partial trace) if the budget runs out.
    """
    iso = g.isolated_edges()
    if iso:
        raise IsolatedEdgeError(iso[0])
    if k is None:
        k = max(MIN_K, g.max_degree)
    if k < MIN_K or k < g.max_degree:
        raise ParameterError(f"k must be >= max(28, max degree) = {max(MIN_K, g.max_degree)}")
    opts = options or ConstructOptions()
    if order is not None:
        opts = ConstructOptions(tuple(order), opts.cutoff_edges, opts.cutoff_degree,
                                opts.max_attempts)
    driver = _Driver(k, budget or SolveBudget(), opts)
    try:
        col = _run_with_big_stack(lambda: driver.solve(g, 0))
    except BudgetExhausted as exc:
        raise BudgetExhausted(str(exc), trace=driver.trace) from None
    ok, pair = is_proper(g, col)
    if not ok:
        raise InvariantBreach(f"constructed colouring is improper at {pair}")
    ok, conflicts = is_nsd(g, col)
    if not ok:
        raise InvariantBreach(f"constructed colouring has conflicts {conflicts[:3]}")
    return col, driver.trace


def minimality_provider(k: int, budget: SolveBudget | None = None):
    """A reducer callback that colours the smaller graph by exact search.

    Useful for driving a single reducer directly, without the recursion.
    """
    from .solver import colour_by_minimality

    def provider(h: Graph, surgery: str) -> EdgeColouring:
        return colour_by_minimality(h, k + 1, budget)

    return provider
