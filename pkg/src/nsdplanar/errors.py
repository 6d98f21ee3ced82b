"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class NsdError(Exception):
    """Base class for all errors raised by :mod:`nsdplanar`."""


class GraphError(NsdError, ValueError):
    """Structural problem: self-loop, parallel edge, unknown vertex or edge."""


class ParameterError(NsdError, ValueError):
    """A numeric parameter (palette size, ``k``, ``r``...) is out of range."""


class PartialColouringError(NsdError):
    """An operation needed a colour on an edge that has none."""

    def __init__(self, edge, message: str | None = None):
        self.edge = edge
        super().__init__(message or f"partial-colouring: edge {edge[0]}-{edge[1]} is uncoloured")


class ImproperColouringError(NsdError):
    """Two incident edges share a colour."""

    def __init__(self, pair, message: str | None = None):
        self.pair = pair
        e, f = pair
        super().__init__(message or f"improper colouring: edges {e} and {f} share a colour")


class IsolatedEdgeError(NsdError):
    """The graph has a component consisting of a single edge."""

    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"isolated edge {edge[0]}-{edge[1]}: the nsd index is undefined")


class BudgetExhausted(NsdError):
    """A search ran out of nodes or time before reaching a verdict.

    ``lower_bound`` is the least palette size not yet refuted (when known) and
    ``trace`` the partial reduction trace (when the search was constructive).
    """

    def __init__(self, message: str, lower_bound: int | None = None, trace=None):
        self.lower_bound = lower_bound
        self.trace = trace
        super().__init__(message)


class ExtensionFailed(NsdError):
    """A reducer could not extend the colouring of the smaller graph."""


class EmbeddingError(NsdError, ValueError):
    """A rotation system is malformed or inconsistent with its graph."""


class InvariantBreach(NsdError, AssertionError):
    """An internal invariant that should hold unconditionally was violated."""


class FormatError(NsdError, ValueError):
    """A text file could not be parsed."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
